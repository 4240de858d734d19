#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "mbd/strategy.hpp"

namespace mbd {

namespace {

// W_4 board indices (make_w_board(4)).
constexpr int wu(int i) { return i - 1; }
constexpr int wv(int i) { return 4 + i - 1; }
constexpr int kWv0 = 8;

// One solver per board and thread, so memo tables survive across queries.
std::shared_ptr<Solver> shared_solver(const std::string& board) {
  thread_local std::map<std::string, std::shared_ptr<Solver>> solvers;
  auto& s = solvers[board];
  if (!s) s = std::make_shared<Solver>();
  return s;
}

// Follows the W_4 case analysis where it names a move; the branches it leaves
// open ("at most two more moves", unlisted replies) are played optimally.
class W4Strategy : public Strategy {
 public:
  std::string name() const override { return "W4"; }
  Player side() const override { return Player::Dominator; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<W4Strategy>(*this); }

  bool accepts(const Position& pos) const override {
    return pos.graph() == make_w_board(4) && pos.predom() == VertexSet::of({wu(1), kWv0});
  }

  Move choose(const Position& pos, std::optional<Move> last) override {
    if (pos.to_move() != Player::Dominator || pos.status().terminal()) throw DomainError("W4: not Dominator's turn");
    const int s = last && !last->is_skip() ? last->vertex : -1;
    switch (phase_) {
      case Phase::Start:
        if (s == wv(2)) return go(Phase::AfterV2, wu(3));
        if (s == wu(4) || s == wv(4)) {
          first_ = s;
          return go(Phase::AfterFarCorner, wu(3));
        }
        if (s >= 0) return go(Phase::Solver, wv(2));
        phase_ = Phase::Solver;
        return solver_move(pos);
      case Phase::AfterV2:
        if (s == wv(1)) {
          tail_ = {VertexSet::of({kWv0, wu(1)})};
          return go(Phase::Tail, wv(3));
        }
        tail_ = {VertexSet::of({wv(3), wv(4), wu(4)})};
        return go(Phase::Tail, wv(1));
      case Phase::AfterFarCorner: {
        const int other = first_ == wu(4) ? wv(4) : wu(4);
        tail_ = {VertexSet::of({wv(1), wv(2)})};
        if (s == wv(3)) return go(Phase::Tail, other);
        if (s == other) return go(Phase::Tail, wv(3));
        phase_ = Phase::Solver;
        return solver_move(pos);
      }
      case Phase::Tail:
        return obligation_strategy("W4-tail", Obligation{tail_, std::nullopt})->choose(pos, last);
      case Phase::Solver:
        return solver_move(pos);
    }
    throw DomainError("W4: bad phase");
  }

  std::string state_key() const override {
    std::ostringstream out;
    out << static_cast<int>(phase_) << ',' << first_;
    for (VertexSet t : tail_) out << ',' << t.mask();
    return out.str();
  }

 private:
  enum class Phase { Start, AfterV2, AfterFarCorner, Tail, Solver };

  Move go(Phase next, int v) {
    phase_ = next;
    return Move::claim(v);
  }
  static Move solver_move(const Position& pos) { return shared_solver("W4")->best_move(pos); }

  Phase phase_ = Phase::Start;
  int first_ = -1;
  std::vector<VertexSet> tail_;
};

std::vector<VertexSet> column_pairs(const Grid2& grid, int from, int to) {
  std::vector<VertexSet> sets;
  for (int i = from; i <= to; ++i) sets.push_back(VertexSet::of({grid.u(i), grid.v(i)}));
  return sets;
}

std::vector<int> columns(const Grid2& grid, int from, int to) {
  std::vector<int> vs;
  for (int i = from; i <= to; ++i) vs.push_back(grid.u(i));
  for (int i = from; i <= to; ++i) vs.push_back(grid.v(i));
  return vs;
}

// W_m board placed on a larger board: at(row, c) gives the vertex carrying
// W's u_c (row 0) or v_c (row 1).
SubBoard w_part(std::string name, int m, const std::function<int(int, int)>& at, int v0,
                std::shared_ptr<Strategy> strategy) {
  SubBoard p;
  p.name = std::move(name);
  p.graph = std::make_shared<const Graph>(make_w_board(m));
  p.to_global.assign(2 * m + 1, -1);
  for (int c = 1; c <= m; ++c) {
    p.to_global[c - 1] = at(0, c);
    p.to_global[m + c - 1] = at(1, c);
  }
  p.to_global[2 * m] = v0;
  p.predom = VertexSet::of({0, 2 * m});
  p.strategy = std::move(strategy);
  return p;
}

// W_k for k >= 4: W_4 on columns 1..4 and one pair per further column.
std::unique_ptr<Strategy> w_split(int m) {
  Grid2 grid(m);
  const Graph board = make_w_board(m);
  std::vector<SubBoard> parts;
  parts.push_back(w_part(
      "W4", 4, [&](int row, int c) { return row == 0 ? grid.u(c) : grid.v(c); }, 2 * m,
      std::shared_ptr<Strategy>(w4_strategy())));
  if (m > 4) parts.push_back(obligation_part("pairs", board, columns(grid, 5, m), {}, column_pairs(grid, 5, m)));
  return dispatch_strategy("split:W:" + std::to_string(m), std::move(parts));
}

std::unique_ptr<Strategy> x_split(int m) {
  Grid2 grid(m);
  std::vector<SubBoard> parts;
  parts.push_back(w_part(
      "W4", 4, [&](int row, int c) { return row == 0 ? grid.v(c + 2) : grid.u(c + 2); }, grid.u(2),
      std::shared_ptr<Strategy>(w4_strategy())));
  if (m > 6) {
    parts.push_back(obligation_part("pairs", grid.graph(), columns(grid, 7, m), {}, column_pairs(grid, 7, m)));
  }
  return dispatch_strategy("split:X:" + std::to_string(m), std::move(parts), {grid.v(2)});
}

// The 2 x 13 strategy. Cases are worked out for Staller's first claim in the
// left half or u_7; a first claim in the right half is handled by reflecting
// columns i -> 14 - i.
class P2P13Strategy : public Strategy {
 public:
  P2P13Strategy() : grid_(13), board_(std::make_shared<const Graph>(grid_.graph())) {}
  P2P13Strategy(const P2P13Strategy& o)
      : grid_(o.grid_), board_(o.board_), phase_(o.phase_), first_(o.first_), case_(o.case_), mirrored_(o.mirrored_),
        rest_(o.rest_ ? o.rest_->clone() : nullptr) {}

  std::string name() const override { return "sd_p2p13"; }
  Player side() const override { return Player::Dominator; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<P2P13Strategy>(*this); }

  bool accepts(const Position& pos) const override {
    return pos.graph() == *board_ && pos.dom().empty() && pos.stall().empty() && pos.predom().empty() &&
           pos.to_move() == Player::Dominator;
  }

  Move choose(const Position& pos, std::optional<Move> last) override {
    if (pos.to_move() != Player::Dominator || pos.status().terminal()) throw DomainError("sd_p2p13: not Dominator's turn");
    if (pos.graph().order() != 26) throw DomainError("sd_p2p13: board is not the 2 x 13 grid");
    switch (phase_) {
      case 0:
        if (!pos.dom().empty() || !pos.free().contains(grid_.v(7))) throw DomainError("sd_p2p13: expects an empty board");
        phase_ = 1;
        return Move::claim(grid_.v(7));
      case 1: {
        phase_ = 2;
        first_ = last && !last->is_skip() ? last->vertex : -1;
        return open_case(pos);
      }
      default:
        return rest_->choose(pos, last);
    }
  }

  std::string state_key() const override {
    std::ostringstream out;
    out << phase_ << ',' << first_;
    if (rest_) out << ',' << rest_->state_key();
    return out.str();
  }

  std::optional<std::vector<Component>> decomposition(const Position& pos) const override {
    if (!rest_) return std::nullopt;
    auto parts = rest_->decomposition(pos);
    if (parts) {
      for (auto& c : *parts) c.name = "case" + std::to_string(case_) + (mirrored_ ? "'" : "") + ":" + c.name;
    }
    return parts;
  }

 private:
  int U(int i) const { return mirrored_ ? grid_.u(14 - i) : grid_.u(i); }
  int V(int i) const { return mirrored_ ? grid_.v(14 - i) : grid_.v(i); }

  Move open_case(const Position& pos) {
    int col = 7;
    int row = 0;
    if (first_ >= 0) {
      col = grid_.column_of(first_);
      row = grid_.row_of(first_);
    }
    mirrored_ = col > 7;
    if (mirrored_) col = 14 - col;
    auto is = [&](int r, int c) { return row == r && col == c && first_ >= 0; };

    std::vector<SubBoard> parts;
    auto right_w4 = [&] {
      return w_part("W4", 4, [&](int r, int c) { return r == 0 ? U(9 + c) : V(9 + c); }, V(9),
                    std::shared_ptr<Strategy>(w4_strategy()));
    };
    auto right_w6 = [&] {
      return w_part("W6", 6, [&](int r, int c) { return r == 0 ? V(7 + c) : U(7 + c); }, U(7),
                    std::shared_ptr<Strategy>(split_induction_strategy(GadgetKind::W, 6)));
    };
    std::vector<int> left;
    for (int i = 1; i <= 6; ++i) left.push_back(U(i));
    for (int i = 1; i <= 6; ++i) left.push_back(V(i));
    auto left_part = [&](int d2, std::vector<VertexSet> sets) {
      const VertexSet openings = VertexSet::of({grid_.v(7), d2});
      return obligation_part("L", *board_, left, board_->dominated_by(openings), sets);
    };
    auto set = [](std::initializer_list<int> vs) { return VertexSet::of(vs); };

    int d2 = -1;
    if (first_ < 0 || is(0, 7)) {
      case_ = 1;
      d2 = U(9);
      std::vector<VertexSet> pairs;
      for (int i = 1; i <= 6; ++i) pairs.push_back(set({U(i), V(i)}));
      parts.push_back(left_part(d2, pairs));
      parts.push_back(right_w4());
    } else if (is(0, 5)) {
      case_ = 2;
      d2 = U(9);
      parts.push_back(w_part("W'6", 6, [&](int r, int c) { return r == 0 ? V(7 - c) : U(7 - c); }, U(7),
                             std::shared_ptr<Strategy>(solver_strategy("W'6", Player::Dominator, shared_solver("W6")))));
      parts.push_back(right_w4());
    } else if (col >= 3) {
      case_ = 3;
      d2 = U(5);
      const bool plain = col == 6;
      parts.push_back(w_part(plain ? "W4" : "W'4", 4, [&](int r, int c) { return r == 0 ? U(5 - c) : V(5 - c); },
                             V(5),
                             plain ? std::shared_ptr<Strategy>(w4_strategy())
                                   : std::shared_ptr<Strategy>(solver_strategy("W'4", Player::Dominator, shared_solver("W4")))));
      parts.push_back(right_w6());
    } else if (col == 2) {
      case_ = 4;
      d2 = U(3);
      parts.push_back(left_part(d2, {set({U(1), V(1)}), set({V(4), V(5)}), set({U(5), U(6)}), set({U(2), V(2), V(3)})}));
      parts.push_back(right_w6());
    } else {
      case_ = 5;
      d2 = V(2);
      parts.push_back(left_part(d2, {set({U(3), U(4)}), set({V(4), V(5)}), set({U(5), U(6)}), set({U(1), V(1), U(2)})}));
      parts.push_back(right_w6());
    }
    if (!pos.free().contains(d2)) throw DomainError("sd_p2p13: planned reply is taken");
    rest_ = dispatch_strategy("sd_p2p13:case" + std::to_string(case_), std::move(parts));
    return Move::claim(d2);
  }

  Grid2 grid_;
  std::shared_ptr<const Graph> board_;
  int phase_ = 0;
  int first_ = -1;
  int case_ = 0;
  bool mirrored_ = false;
  std::unique_ptr<Strategy> rest_;
};

std::vector<std::pair<int, int>> grid_pairs_from_labels(const Graph& g) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1;; ++i) {
    auto u = g.find_label("u" + std::to_string(i));
    auto v = g.find_label("v" + std::to_string(i));
    if (!u || !v) break;
    pairs.emplace_back(*u, *v);
  }
  return pairs;
}

}  // namespace

SubBoard obligation_part(std::string name, const Graph& g, const std::vector<int>& vertices, VertexSet predom,
                         const std::vector<VertexSet>& sets) {
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  for (int a : vertices) {
    labels.push_back(g.label(a));
    for (int b : g.neighbors(a)) {
      if (local[b] > local[a]) edges.emplace_back(local[a], local[b]);
    }
  }
  SubBoard p;
  p.name = name;
  p.graph = std::make_shared<const Graph>(static_cast<int>(vertices.size()), edges, labels);
  p.to_global = vertices;
  for (int v : predom) {
    if (local[v] >= 0) p.predom.insert(local[v]);
  }
  Obligation ob;
  for (VertexSet s : sets) {
    VertexSet ls;
    for (int v : s) {
      if (local[v] < 0) throw std::invalid_argument(name + ": obligation vertex outside the sub-board");
      ls.insert(local[v]);
    }
    ob.sets.push_back(ls);
  }
  p.strategy = std::shared_ptr<Strategy>(obligation_strategy(std::move(name), std::move(ob)));
  return p;
}

std::unique_ptr<Strategy> w4_strategy() { return std::make_unique<W4Strategy>(); }

std::unique_ptr<Strategy> split_induction_strategy(GadgetKind kind, int m) {
  GadgetSpec{kind, m}.validate();
  const std::string name = "split:" + GadgetSpec{kind, m}.name();
  Grid2 grid(m);
  switch (kind) {
    case GadgetKind::Rho: {
      Obligation ob{{VertexSet::of({grid.v(1), grid.u(2)})}, grid.u(1)};
      for (VertexSet s : column_pairs(grid, 3, m)) ob.sets.push_back(s);
      return obligation_strategy(name, ob);
    }
    case GadgetKind::Z:
      return obligation_strategy(name, Obligation{column_pairs(grid, 2, m), std::nullopt});
    case GadgetKind::W:
      if (m <= 3) return obligation_strategy(name, Obligation{column_pairs(grid, 1, m), std::nullopt});
      if (m == 4) return w4_strategy();
      return w_split(m);
    case GadgetKind::X:
      if (m <= 5) return solver_strategy(name, Player::Dominator, shared_solver(name));
      return x_split(m);
    default:
      throw std::invalid_argument("no split strategy for " + GadgetSpec{kind, m}.name());
  }
}

std::unique_ptr<Strategy> sd_p2p13() { return std::make_unique<P2P13Strategy>(); }

std::unique_ptr<Strategy> p2pn_strategy(int n) {
  if (n < 13) throw std::invalid_argument("p2pn strategy needs n >= 13");
  if (n == 13) return sd_p2p13();
  if (2 * n > Graph::kMaxVertices) throw LimitError("board exceeds the 64-vertex capacity");
  Grid2 grid(n);
  Grid2 head(13);
  std::vector<SubBoard> parts;
  SubBoard p;
  p.name = "P2xP13";
  p.graph = std::make_shared<const Graph>(head.graph());
  for (int i = 1; i <= 13; ++i) p.to_global.push_back(grid.u(i));
  for (int i = 1; i <= 13; ++i) p.to_global.push_back(grid.v(i));
  p.strategy = std::shared_ptr<Strategy>(sd_p2p13());
  parts.push_back(std::move(p));
  parts.push_back(obligation_part("pairs", grid.graph(), columns(grid, 14, n), {}, column_pairs(grid, 14, n)));
  return dispatch_strategy("p2pn:" + std::to_string(n), std::move(parts));
}

std::unique_ptr<Strategy> make_strategy(const std::string& name, const Position& pos,
                                        const std::optional<GadgetSpec>& gadget) {
  auto need_gadget = [&]() -> const GadgetSpec& {
    if (!gadget) throw std::invalid_argument("strategy '" + name + "' needs a gadget board");
    return *gadget;
  };
  if (name == "pairing") return pairing_strategy(pos, Pairing{grid_pairs_from_labels(pos.graph()), std::nullopt});
  if (name == "split") return split_induction_strategy(need_gadget().kind, need_gadget().m);
  if (name == "w4") return w4_strategy();
  if (name == "sd_p2p13") return sd_p2p13();
  if (name == "p2pn") return p2pn_strategy(pos.graph().order() / 2);
  if (name == "staller-rho") {
    if (need_gadget().kind != GadgetKind::Rho) throw std::invalid_argument("staller-rho needs a rho board");
    return staller_rho_strategy(gadget->m);
  }
  if (name == "staller-z") {
    if (need_gadget().kind != GadgetKind::Z) throw std::invalid_argument("staller-z needs a Z board");
    return staller_z_strategy(gadget->m);
  }
  if (name == "exact") return solver_strategy("exact", pos.to_move(), std::make_shared<Solver>());
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

}  // namespace mbd
