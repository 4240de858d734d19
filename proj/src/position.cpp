#include "mbd/position.hpp"

#include <cassert>

namespace mbd {

std::string to_string(Player p) { return p == Player::Dominator ? "Dominator" : "Staller"; }

Position::Position(std::shared_ptr<const Graph> graph, VertexSet pre_staller, VertexSet pre_dominated,
                   Player to_move, VertexSet pre_dominator)
    : graph_(std::move(graph)),
      dom_(pre_dominator),
      stall_(pre_staller),
      predom_(pre_dominated),
      initial_dom_(pre_dominator),
      to_move_(to_move) {
  if (!graph_) throw std::invalid_argument("position needs a graph");
  const VertexSet all = graph_->vertices();
  if (!stall_.subset_of(all) || !predom_.subset_of(all) || !dom_.subset_of(all)) {
    throw std::invalid_argument("claimed or predominated vertex outside the graph");
  }
  if (dom_.intersects(stall_)) throw std::invalid_argument("a vertex cannot be claimed by both players");
}

Position Position::restore(std::shared_ptr<const Graph> graph, VertexSet dom, VertexSet stall,
                           VertexSet predom, Player to_move, int dominator_moves) {
  Position p(std::move(graph), stall, predom, to_move, dom);
  p.dominator_moves_ = dominator_moves;
  p.initial_dom_ = VertexSet();
  return p;
}

Position new_position(const Graph& g, VertexSet pre_staller, VertexSet pre_dominated, Player to_move) {
  return Position(std::make_shared<const Graph>(g), pre_staller, pre_dominated, to_move);
}

GameStatus Position::status() const {
  GameStatus s;
  for (int v : graph_->vertices() - predom_) {
    if (graph_->closed_neighborhood(v).subset_of(stall_)) {
      s.kind = StatusKind::StallerWin;
      s.isolated = v;
      break;
    }
  }
  const bool all_dominated = dominated() == graph_->vertices();
  assert(!(all_dominated && s.kind == StatusKind::StallerWin));
  if (s.kind == StatusKind::StallerWin) return s;
  if (all_dominated) s.kind = StatusKind::DominatorWin;
  return s;
}

std::vector<Move> Position::legal_moves(bool allow_skip) const {
  if (status().terminal()) throw std::logic_error("no legal moves in a finished game");
  std::vector<Move> out;
  for (int v : free()) out.push_back(Move::claim(v));
  if (allow_skip && to_move_ == Player::Dominator) out.push_back(Move::skip());
  return out;
}

Position Position::apply(Move m, bool allow_skip) const {
  Position next = *this;
  if (m.is_skip()) {
    if (to_move_ != Player::Dominator) throw IllegalMove("Staller cannot skip");
    if (!allow_skip) throw IllegalMove("skip is disabled");
    next.to_move_ = Player::Staller;
    return next;
  }
  if (m.vertex < 0 || m.vertex >= graph_->order()) throw IllegalMove("vertex out of range");
  if (dom_.contains(m.vertex) || stall_.contains(m.vertex)) {
    throw IllegalMove("vertex " + graph_->label(m.vertex) + " is already claimed");
  }
  if (to_move_ == Player::Dominator) {
    next.dom_.insert(m.vertex);
    ++next.dominator_moves_;
  } else {
    next.stall_.insert(m.vertex);
  }
  next.to_move_ = opponent(to_move_);
  return next;
}

Position Position::pass() const {
  Position next = *this;
  next.to_move_ = opponent(to_move_);
  return next;
}

int GameRecord::dominator_claims() const {
  int c = 0;
  for (const auto& m : moves_) c += (m.player == Player::Dominator && !m.move.is_skip());
  return c;
}

int GameRecord::dominator_skips() const {
  int c = 0;
  for (const auto& m : moves_) c += (m.player == Player::Dominator && m.move.is_skip());
  return c;
}

Position GameRecord::replay(bool allow_skip) const {
  Position p = initial_;
  for (const auto& m : moves_) {
    if (m.player != p.to_move()) throw IllegalMove("record move by the wrong player");
    if (m.move.is_skip() && m.player == Player::Staller) {
      p = p.pass();
    } else {
      p = p.apply(m.move, allow_skip);
    }
  }
  return p;
}

}  // namespace mbd
