#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbd/graph.hpp"

namespace mbd {

enum class Player { Dominator, Staller };

inline Player opponent(Player p) { return p == Player::Dominator ? Player::Staller : Player::Dominator; }
std::string to_string(Player p);

class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A claim of one vertex, or a pass (`vertex == kSkip`).
struct Move {
  static constexpr int kSkip = -1;
  int vertex = kSkip;

  static Move claim(int v) { return Move{v}; }
  static Move skip() { return Move{kSkip}; }
  bool is_skip() const { return vertex == kSkip; }
  bool operator==(const Move&) const = default;
};

enum class StatusKind { Ongoing, DominatorWin, StallerWin };

struct GameStatus {
  StatusKind kind = StatusKind::Ongoing;
  /// For StallerWin: an isolated vertex (lowest index).
  int isolated = -1;

  bool terminal() const { return kind != StatusKind::Ongoing; }
  bool operator==(const GameStatus&) const = default;
};

/// An MBD game position. Immutable value; moves produce new positions.
///
/// `predom` holds vertices counted as dominated from outside the board. They
/// remain claimable but never need domination and cannot be isolated.
class Position {
 public:
  Position() = default;
  /// Dominator-held vertices in `pre_dominator` are counted in initial_dom,
  /// not in dominator_moves. Throws std::invalid_argument on overlap.
  Position(std::shared_ptr<const Graph> graph, VertexSet pre_staller, VertexSet pre_dominated,
           Player to_move, VertexSet pre_dominator = {});

  const Graph& graph() const { return *graph_; }
  const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
  VertexSet dom() const { return dom_; }
  VertexSet stall() const { return stall_; }
  VertexSet predom() const { return predom_; }
  VertexSet initial_dom() const { return initial_dom_; }
  VertexSet free() const { return graph_->vertices() - dom_ - stall_; }
  Player to_move() const { return to_move_; }
  int dominator_moves() const { return dominator_moves_; }

  /// dom, its neighbourhood, and predom.
  VertexSet dominated() const { return graph_->dominated_by(dom_) | predom_; }
  GameStatus status() const;

  /// Free vertices, plus Skip when allowed and Dominator is to move.
  /// Throws std::logic_error on a terminal position.
  std::vector<Move> legal_moves(bool allow_skip = false) const;
  /// Throws IllegalMove with a reason.
  Position apply(Move m, bool allow_skip = false) const;

  /// Same position with the side to move flipped and nothing claimed.
  Position pass() const;

  bool same_state(const Position& o) const {
    return dom_ == o.dom_ && stall_ == o.stall_ && predom_ == o.predom_ && to_move_ == o.to_move_ &&
           dominator_moves_ == o.dominator_moves_ && *graph_ == *o.graph_;
  }

  /// Builds a position with arbitrary claim sets, as restored from a snapshot.
  static Position restore(std::shared_ptr<const Graph> graph, VertexSet dom, VertexSet stall,
                          VertexSet predom, Player to_move, int dominator_moves);

 private:
  std::shared_ptr<const Graph> graph_;
  VertexSet dom_;
  VertexSet stall_;
  VertexSet predom_;
  VertexSet initial_dom_;
  Player to_move_ = Player::Dominator;
  int dominator_moves_ = 0;
};

/// Plain-value constructor for callers holding a Graph by value.
Position new_position(const Graph& g, VertexSet pre_staller, VertexSet pre_dominated, Player to_move);

struct RecordedMove {
  Player player = Player::Dominator;
  Move move;
  std::string annotation;
};

/// Alternating move list from an initial position.
class GameRecord {
 public:
  GameRecord() = default;
  explicit GameRecord(Position initial) : initial_(std::move(initial)) {}

  const Position& initial() const { return initial_; }
  const std::vector<RecordedMove>& moves() const { return moves_; }
  void push(Player p, Move m, std::string annotation = {}) {
    moves_.push_back(RecordedMove{p, m, std::move(annotation)});
  }
  /// Claims by Dominator (skips excluded).
  int dominator_claims() const;
  int dominator_skips() const;

  /// Replays every move from the initial position; throws IllegalMove on a bad record.
  Position replay(bool allow_skip = true) const;

 private:
  Position initial_;
  std::vector<RecordedMove> moves_;
};

}  // namespace mbd
