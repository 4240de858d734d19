#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbd/solver.hpp"

namespace mbd {

struct LemmaOptions {
  SolveConfig solve;
  /// Node cap for strategy certificates (0 = unlimited).
  std::uint64_t certify_nodes = 100'000'000;
};

struct LemmaCheck {
  std::string item;
  std::string expected;
  std::string observed;
  bool pass = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::string note;
};

struct LemmaReport {
  std::string name;
  int lo = 0;
  int hi = 0;
  std::vector<LemmaCheck> checks;
  std::string note;
  bool pass() const;
};

/// Suites: rho, Y, Z, W, X (solve vs closed form), grid-sgame (S-game on the
/// 2 x n grid equals n), skip-futility (rho boards, plus skip-on vs skip-off
/// values on every gadget in range), p2p13-components (the four sub-strategy
/// bounds), p2p13 (composed certificate on the 2 x 13 grid), staller (Staller
/// strategies on rho and Z), X-lower (exact Staller play on X forces the
/// closed-form value). Gadget instances outside their domain are skipped.
/// Throws std::invalid_argument for an unknown suite.
LemmaReport verify_lemma(const std::string& name, int lo, int hi, const LemmaOptions& opt = {});

std::vector<std::string> lemma_suites();

}  // namespace mbd
