#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mbd/graph.hpp"
#include "mbd/solver.hpp"

namespace mbd {

struct BoundInput {
  std::string name;
  GameValue value;
  /// "exact-solve" or "proved-constant".
  std::string provenance;
};

struct BoundReport {
  std::string formula;
  /// "D" or "S".
  std::string game;
  std::vector<BoundInput> inputs;
  /// False when the bound's hypothesis fails; the bound is then only conditional.
  bool premise = true;
  /// Absent when the formula has no finite value (a Staller win among its inputs).
  std::optional<int> bound;
  std::optional<GameValue> exact;
  /// bound - exact claims, when both are known and exact is a Dominator win.
  std::optional<int> slack;
  std::string note;

  /// exact <= bound whenever both are known and the premise holds.
  bool consistent() const;
};

struct ProductOptions {
  SolveConfig solve;
  /// Exact values of the product are computed up to this many vertices.
  int exact_limit = 12;
};

/// Bounds for G□K2: {D-game, S-game}.
std::pair<BoundReport, BoundReport> thm3_bounds(const Graph& g, const ProductOptions& opt = {});

/// Bounds for G□H: {D-game, S-game}. The S-game bound uses γ'_MB in both
/// terms; the note carries the value with γ_MB(G) in the first term as well.
std::pair<BoundReport, BoundReport> thm4_bounds(const Graph& g, const Graph& h, const ProductOptions& opt = {});

/// D-game bound for P_m□P_n, 3 <= m <= n. P2□P_k terms use the proved values
/// (k - 2 and k) for k >= 13 and exact solves below; throws LimitError if such
/// a solve exceeds opt.solve.node_limit.
BoundReport corollary_bounds(int m, int n, const ProductOptions& opt = {});

struct ProductCase {
  std::string g;
  std::string h;
  /// Pairing bounds when h is P2, otherwise the general product bounds; D-game then S-game.
  std::pair<BoundReport, BoundReport> bounds;
};

/// Every unordered pair from {P2, P3, P4, C4, K3} whose product has at most
/// opt.exact_limit vertices.
std::vector<ProductCase> product_corpus_check(const ProductOptions& opt = {});

/// Writes formula,game,premise,bound,exact,slack rows.
void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace mbd
