#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbd/gadgets.hpp"
#include "mbd/position.hpp"
#include "mbd/solver.hpp"

namespace mbd {

/// A strategy was asked to move in a position it does not cover.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A deterministic player. Instances carry play state (which proof case is
/// active and so on); `clone` forks that state for exhaustive enumeration.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  virtual Player side() const = 0;
  virtual std::unique_ptr<Strategy> clone() const = 0;

  /// Whether the strategy can start from `pos`.
  virtual bool accepts(const Position& pos) const;

  /// Called on each of this side's turns. `last` is the opponent's move since
  /// the previous call (a skip for a pass), or nullopt if nothing happened yet.
  /// Throws DomainError outside the strategy's domain.
  virtual Move choose(const Position& pos, std::optional<Move> last) = 0;

  /// Everything beyond the position that influences future choices.
  virtual std::string state_key() const { return {}; }

  struct Component;
  /// When the strategy plays independent sub-games, their current states.
  virtual std::optional<std::vector<Component>> decomposition(const Position&) const { return std::nullopt; }
};

/// One sub-game of a decomposed strategy, on its own board.
struct Strategy::Component {
  std::string name;
  /// Local position with Staller to move.
  Position position;
  std::shared_ptr<Strategy> strategy;
  /// Local vertex index -> vertex of the enclosing board.
  std::vector<int> to_global;
};

/// Dominator keeps one vertex of every set. A Staller claim in an unsatisfied
/// set is answered inside that set; otherwise Dominator claims the opening
/// vertex if still free, then the lowest free vertex of the first unsatisfied set.
struct Obligation {
  std::vector<VertexSet> sets;
  std::optional<int> opening;
};

/// Disjoint vertex pairs plus an optional first move.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
  std::optional<int> first_move;
};

std::unique_ptr<Strategy> obligation_strategy(std::string name, Obligation obligation);
/// Throws std::invalid_argument if the pairs overlap or fail to cover `board`
/// (claiming one vertex from every pair, plus the first move, must dominate it).
std::unique_ptr<Strategy> pairing_strategy(const Position& board, const Pairing& p, std::string name = "pairing");

/// Plays the lowest-index optimal move of the exact solver (no skips).
std::unique_ptr<Strategy> solver_strategy(std::string name, Player side, std::shared_ptr<Solver> solver = {});

/// A board inside a larger board: local graph and predom plus the index map.
struct SubBoard {
  std::string name;
  std::shared_ptr<const Graph> graph;
  VertexSet predom;
  std::vector<int> to_global;
  std::shared_ptr<Strategy> strategy;
};

/// Dominator strategy over disjoint sub-boards. Opening vertices are claimed
/// first; afterwards Dominator answers in the sub-board Staller just played on,
/// or moves in the first unfinished sub-board when that one is already won.
std::unique_ptr<Strategy> dispatch_strategy(std::string name, std::vector<SubBoard> parts,
                                            std::vector<int> openings = {});

/// Product strategy: one copy of G per vertex of H (G□H indexing). Dominator
/// opens in copy `first_copy` with `first`, every other copy runs `second`.
std::unique_ptr<Strategy> product_dispatch_strategy(const Graph& g, int copies, const Strategy& first,
                                                    const Strategy& second, int first_copy = 0);

/// Lemma strategies realizing the upper bounds on Rho, Z, W and X gadgets.
std::unique_ptr<Strategy> split_induction_strategy(GadgetKind kind, int m);

/// The scripted second-player strategy on W_4 (board indices of make_w_board(4)).
std::unique_ptr<Strategy> w4_strategy();

/// Dominator's opening strategy on the empty 2 x 13 grid (at most 11 claims).
std::unique_ptr<Strategy> sd_p2p13();
/// The 2 x 13 strategy on columns 1..13 plus column pairs beyond (n >= 13).
std::unique_ptr<Strategy> p2pn_strategy(int n);

enum class TrapKind { Triangle, Line };

struct Trap {
  TrapKind kind = TrapKind::Triangle;
  int column = 0;
  /// Row of the threatened vertex (0 = u, 1 = v).
  int row = 0;
  /// The only claim that saves Dominator.
  int reply = -1;
};

std::string to_string(TrapKind k);
/// Traps on a 2 x n grid position, ordered by column then row.
std::vector<Trap> detect_traps(const Position& pos, const Grid2& grid);
std::optional<Trap> detect_trap(const Position& pos, const Grid2& grid);

std::unique_ptr<Strategy> staller_rho_strategy(int m);
std::unique_ptr<Strategy> staller_z_strategy(int m);

/// Builds a sub-board on the vertices `vertices` of `g` (induced edges, labels
/// kept) running an obligation strategy; `sets` are given in indices of `g`.
SubBoard obligation_part(std::string name, const Graph& g, const std::vector<int>& vertices, VertexSet predom,
                         const std::vector<VertexSet>& sets);

/// Strategy names: pairing, split, w4, sd_p2p13, p2pn, staller-rho,
/// staller-z, exact. `gadget` is required by split and the Staller strategies.
std::unique_ptr<Strategy> make_strategy(const std::string& name, const Position& pos,
                                        const std::optional<GadgetSpec>& gadget = std::nullopt);

}  // namespace mbd
