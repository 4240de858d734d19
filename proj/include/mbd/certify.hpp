#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mbd/strategy.hpp"

namespace mbd {

struct CertifyConfig {
  /// 0 = unlimited. Counts expanded opponent-to-move nodes, components included.
  std::uint64_t node_limit = 0;
  /// Dominator may skip (only relevant when certifying a Staller strategy).
  bool allow_skip = false;
  /// Staller may pass. Used for sub-games of a decomposed strategy, where a
  /// Staller move elsewhere lets Dominator move here unanswered.
  bool staller_may_pass = false;
  /// Certify decomposed strategies sub-game by sub-game and add the results.
  bool compose = false;
};

enum class Verdict { Certified, Refuted, Inconclusive };
std::string to_string(Verdict v);

struct ComponentResult {
  std::string name;
  GameValue worst;
  std::uint64_t nodes = 0;
};

/// One point where a decomposed strategy was certified by parts.
struct CaseAccount {
  /// Moves from the start position to the split point.
  std::vector<RecordedMove> line;
  int claims_before = 0;
  std::vector<ComponentResult> parts;
  /// claims_before plus the worst case of every part.
  GameValue total;
};

struct CertificateReport {
  std::string strategy;
  Player side = Player::Dominator;
  int budget = 0;
  Verdict verdict = Verdict::Inconclusive;
  /// Dominator strategy: most claims any Staller line forces (StallerWin if one
  /// beats it). Staller strategy: fewest claims any Dominator line needs
  /// (StallerWin if none wins). Only a partial bound when inconclusive.
  GameValue worst;
  /// A line attaining `worst` (up to the first split point in compose mode).
  GameRecord witness;
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  bool composed = false;
  std::vector<CaseAccount> accounting;
  std::string note;
};

/// Enumerates every opponent reply against `strategy` from `pos`. Dominator
/// strategies are certified when worst <= budget, Staller strategies when
/// worst >= budget (a Staller win counts).
CertificateReport certify_strategy(const Position& pos, const Strategy& strategy, int budget,
                                   const CertifyConfig& cfg = {});

}  // namespace mbd
