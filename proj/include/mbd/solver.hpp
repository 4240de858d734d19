#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mbd/gadgets.hpp"
#include "mbd/position.hpp"
#include "mbd/value.hpp"

namespace mbd {

using Permutation = std::vector<int>;

enum class MoveOrdering { Natural, ThreatFirst };

struct SolveConfig {
  bool allow_skip = false;
  bool use_symmetry = false;
  /// Symmetry group generators. Empty with use_symmetry on: detected automatically.
  std::vector<Permutation> automorphisms;
  /// 0 = unlimited.
  std::uint64_t node_limit = 0;
  std::size_t memo_capacity = std::size_t{1} << 24;
  MoveOrdering move_ordering = MoveOrdering::Natural;
  int workers = 1;
  /// A proven upper bound on the value (e.g. from a certified pairing strategy).
  std::optional<int> upper_bound_seed;
};

enum class BoundDirection { Exact, Lower, Upper };

struct SolveReport {
  GameValue value;
  GameRecord principal_variation;
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  bool exhausted = false;
  /// Exact unless exhausted; then `value` is only a bound in this direction.
  BoundDirection bound = BoundDirection::Exact;
};

/// Symmetry group acting on vertex indices. The closure of the generators is
/// materialized; every element must be a graph automorphism fixing predom setwise.
class SymmetryGroup {
 public:
  SymmetryGroup() = default;
  /// Throws std::invalid_argument on a permutation that is not an admissible automorphism.
  SymmetryGroup(const Graph& g, VertexSet predom, const std::vector<Permutation>& generators);

  /// All automorphisms of `g` fixing `predom` setwise (backtracking; small graphs only).
  static SymmetryGroup detect(const Graph& g, VertexSet predom, std::size_t max_elements = 4096);

  std::size_t size() const { return perms_.size() + 1; }
  const std::vector<Permutation>& non_identity() const { return perms_; }
  static VertexSet apply(const Permutation& p, VertexSet s);

  /// Lexicographically least (dom, stall) image over the group.
  std::pair<VertexSet, VertexSet> canonical(VertexSet dom, VertexSet stall) const;

 private:
  std::vector<Permutation> perms_;
};

/// True if `p` is an automorphism of `g` mapping `predom` onto itself.
bool is_admissible_automorphism(const Graph& g, VertexSet predom, const Permutation& p);

/// Row swap and column reversal of a 2 x n grid, where they fix `predom`.
std::vector<Permutation> grid_symmetries(const Grid2& grid, VertexSet predom);

/// Canonical representative of `pos` under the group generated by `automorphisms`.
Position canonical_form(const Position& pos, const std::vector<Permutation>& automorphisms);

/// Exact minimax solver for one board (graph + predom) at a time. Keeps its
/// transposition table between calls on the same board.
class Solver {
 public:
  explicit Solver(SolveConfig cfg = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  SolveReport solve(const Position& pos);
  /// Exact value only (no principal variation). Throws LimitError when the node limit is hit.
  GameValue value(const Position& pos);
  /// Best move for the side to move (Dominator: lowest-index optimal claim,
  /// Staller: lowest-index optimal claim). Skip is returned only if strictly better.
  Move best_move(const Position& pos);

  const SolveConfig& config() const { return cfg_; }

 private:
  struct Impl;
  SolveConfig cfg_;
  std::unique_ptr<Impl> impl_;
  Impl& session(const Position& pos);
};

SolveReport solve(const Position& pos, const SolveConfig& cfg = {});
GameValue gamma_mb(const Graph& g, const SolveConfig& cfg = {});
GameValue gamma_mb_prime(const Graph& g, const SolveConfig& cfg = {});

/// Checks that Skip loses from every Dominator-to-move position the Dominator
/// would otherwise win, over all lines where Dominator plays anything and
/// Staller plays any value-optimal reply. Vacuously true if no such position exists.
bool verify_skip_futility(const GadgetSpec& spec, const SolveConfig& cfg = {});

/// Vertices that still need domination and whose free closed neighbourhoods
/// are pairwise disjoint (greedy). Each costs Dominator a separate claim.
int packing_lower_bound(const Graph& g, VertexSet dom, VertexSet stall, VertexSet predom);

}  // namespace mbd
