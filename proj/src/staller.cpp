#include <deque>
#include <sstream>

#include "mbd/strategy.hpp"

namespace mbd {

std::string to_string(TrapKind k) { return k == TrapKind::Triangle ? "TriangleTrap" : "LineTrap"; }

std::vector<Trap> detect_traps(const Position& pos, const Grid2& grid) {
  std::vector<Trap> out;
  const int n = grid.columns();
  if (pos.graph().order() < 2 * n) return out;
  const VertexSet stall = pos.stall();
  const VertexSet free = pos.free();
  const VertexSet dominated = pos.dominated();
  auto at = [&](int row, int col) { return row == 0 ? grid.u(col) : grid.v(col); };
  for (int i = 2; i <= n - 1; ++i) {
    for (int row = 0; row < 2; ++row) {
      const int x = at(row, i);
      const int across = at(1 - row, i);
      const bool sides = stall.contains(at(row, i - 1)) && stall.contains(at(row, i + 1));
      if (dominated.contains(x) || !sides) continue;
      if (free.contains(x) && stall.contains(across)) out.push_back(Trap{TrapKind::Triangle, i, row, x});
      if (stall.contains(x) && free.contains(across)) out.push_back(Trap{TrapKind::Line, i, row, across});
    }
  }
  return out;
}

std::optional<Trap> detect_trap(const Position& pos, const Grid2& grid) {
  auto all = detect_traps(pos, grid);
  if (all.empty()) return std::nullopt;
  return all.front();
}

namespace {

// A rho-shaped window of the 2 x n board. Local column j sits at board column
// base + dir * (j - 1); `flip` swaps which board row plays the local u row.
struct Frame {
  int base = 1;
  int dir = 1;
  bool flip = false;
  int k = 0;
};

enum class Next { None, Start, Case2Far, Case2At4, Case3, Case4, ZReply, SubFrame };

class TrapStaller : public Strategy {
 public:
  TrapStaller(std::string name, int n, Frame frame, Next first, bool z_opening)
      : name_(std::move(name)), grid_(n), frame_(frame), next_(first), z_opening_(z_opening) {}

  std::string name() const override { return name_; }
  Player side() const override { return Player::Staller; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<TrapStaller>(*this); }

  Move choose(const Position& pos, std::optional<Move> last) override {
    if (pos.to_move() != Player::Staller || pos.status().terminal()) throw DomainError(name_ + ": not Staller's turn");
    if (pos.graph().order() != 2 * grid_.columns()) throw DomainError(name_ + ": board size mismatch");
    if (auto win = winning_claim(pos)) return Move::claim(*win);
    if (z_opening_) {
      z_opening_ = false;
      next_ = Next::ZReply;
      return Move::claim(grid_.u(grid_.columns()));
    }
    if (queue_.empty() && next_ != Next::None) react(last);
    while (!queue_.empty()) {
      const int v = queue_.front();
      queue_.pop_front();
      if (pos.free().contains(v)) return Move::claim(v);
    }
    return fallback(pos);
  }

  std::string state_key() const override {
    std::ostringstream out;
    out << frame_.base << ',' << frame_.dir << ',' << frame_.flip << ',' << frame_.k << ',' << static_cast<int>(next_)
        << ',' << z_opening_ << ',' << sub_.base << ',' << sub_.dir << ',' << sub_.flip << ','
        << sub_.k << ':';
    for (int v : queue_) out << v << ' ';
    return out.str();
  }

 private:
  int U(int j) const { return at(0, j); }
  int V(int j) const { return at(1, j); }
  int at(int local_row, int j) const {
    if (j < 1 || j > frame_.k) return -1;
    const int col = frame_.base + frame_.dir * (j - 1);
    const int row = frame_.flip ? 1 - local_row : local_row;
    return row == 0 ? grid_.u(col) : grid_.v(col);
  }
  // Local (row, column) of a board vertex inside the frame, column 0 if outside.
  std::pair<int, int> local(std::optional<Move> m) const {
    if (!m || m->is_skip()) return {0, 0};
    const int col = grid_.column_of(m->vertex);
    const int j = (col - frame_.base) * frame_.dir + 1;
    if (j < 1 || j > frame_.k) return {0, 0};
    const int row = grid_.row_of(m->vertex);
    return {frame_.flip ? 1 - row : row, j};
  }
  bool is(std::optional<Move> m, int row, int j) const { return local(m) == std::make_pair(row, j); }

  void push(int v) {
    if (v >= 0) queue_.push_back(v);
  }
  void push_range(int row, int from, int to) {
    for (int j = from; j <= to; ++j) push(at(row, j));
  }
  void enter(int shift, bool flip_rows) {
    sub_ = Frame{frame_.base + frame_.dir * shift, frame_.dir, flip_rows ? !frame_.flip : frame_.flip, frame_.k - shift};
    next_ = sub_.k >= 2 ? Next::SubFrame : Next::None;
  }

  void react(std::optional<Move> d) {
    const Next now = next_;
    next_ = Next::None;
    auto [row, j] = local(d);
    switch (now) {
      case Next::SubFrame:
        frame_ = sub_;
        sub_ = Frame{};
        start(d);
        return;
      case Next::Start:
        start(d);
        return;
      case Next::Case2Far:
        // Dominator opened on v_i, i >= 5, and we took u_2.
        if (is(d, 0, 3)) push(V(1));
        else if (is(d, 1, 3)) push(U(1));
        else if (is(d, 0, 1)) { push(V(3)); push(U(3)); }
        else if (is(d, 1, 1)) { push(U(3)); push(V(3)); }
        else push(U(1));
        return;
      case Next::Case2At4:
        if (is(d, 0, 1)) { push(V(3)); push(U(4)); push(U(6)); enter(4, true); }
        else if (is(d, 1, 1)) { push(U(3)); push(U(4)); push(U(6)); enter(4, true); }
        else if (is(d, 0, 3)) push(V(1));
        else push(U(1));
        return;
      case Next::Case3:
        // Dominator opened on u_1, we took v_3.
        if (row == 0 && j > 2) {
          push(U(2));
          push_range(1, 4, j);
          push(V(j + 2));
          enter(j, false);
        } else if (row == 1 && j > 4) {
          push(U(2));
          push(U(3));
        } else if (row == 1 && j == 4) {
          push(U(2)); push(U(4)); push(U(6));
          enter(4, true);
        } else {
          push_range(1, 4, frame_.k);
          push(U(frame_.k));
        }
        return;
      case Next::Case4:
        // Dominator opened on v_1, we took u_3.
        if (is(d, 1, 3)) { push(U(1)); push(U(5)); enter(3, true); }
        else if (is(d, 0, 4)) { push(U(1)); push(V(4)); push(V(6)); enter(4, false); }
        else if (is(d, 1, 4)) { push(U(2)); push(U(4)); push(U(6)); enter(4, true); }
        else if (is(d, 0, 1) || is(d, 0, 2)) {
          for (int c = 4; c <= frame_.k; ++c) push(c % 2 == 0 ? V(c) : U(c));
          push(frame_.k % 2 == 0 ? U(frame_.k) : V(frame_.k));
        } else {
          push(U(2));
          push(V(3));
        }
        return;
      case Next::ZReply: {
        // Board columns here: Z_m with s_1 = u_m.
        const int m = grid_.columns();
        const int dv = d && !d->is_skip() ? d->vertex : -1;
        auto col = [&](int c) { return c >= 1 && c <= m; };
        if (dv == grid_.u(m - 1)) {
          push(grid_.v(m - 1));
          if (col(m - 3)) push(grid_.v(m - 3));
          sub_ = Frame{m - 2, -1, false, m - 2};
        } else if (dv == grid_.v(m - 1)) {
          push(grid_.u(m - 1));
          if (col(m - 3)) push(grid_.u(m - 3));
          sub_ = Frame{m - 2, -1, true, m - 2};
        } else if (dv == grid_.v(m)) {
          if (col(m - 2)) push(grid_.u(m - 2));
          sub_ = Frame{m - 1, -1, true, m - 1};
        } else {
          push(grid_.v(m));
          return;
        }
        next_ = sub_.k >= 2 ? Next::SubFrame : Next::None;
        return;
      }
      case Next::None:
        return;
    }
  }

  // Frame opening: `d` is Dominator's first move on the frame (anything
  // outside it counts as a skip).
  void start(std::optional<Move> d) {
    auto [row, j] = local(d);
    const int k = frame_.k;
    if (j == 0) {
      push(V(1));
      push_range(1, 3, k);
      push(U(k));
    } else if (row == 0 && j >= 2) {
      push(V(1));
      if (j == 2) {
        push(V(4));
        enter(2, false);
      } else {
        push_range(1, 3, j);
        push(V(j + 2));
        enter(j, false);
      }
    } else if (row == 1 && j >= 3) {
      if (j == 3) {
        push(U(1)); push(U(3)); push(U(5));
        enter(3, true);
      } else {
        push(U(2));
        next_ = j == 4 ? Next::Case2At4 : Next::Case2Far;
      }
    } else if (row == 0 && j == 1) {
      push(V(3));
      next_ = Next::Case3;
    } else if (row == 1 && j == 1) {
      push(U(3));
      next_ = Next::Case4;
    } else {
      // Only reachable on a malformed frame; keep pressing.
      push(V(1));
    }
  }

  static std::optional<int> winning_claim(const Position& pos) {
    const Graph& g = pos.graph();
    const VertexSet open = g.vertices() - pos.dominated();
    for (int x : open) {
      const VertexSet nx = g.closed_neighborhood(x);
      const VertexSet f = nx & pos.free();
      if (f.size() == 1 && (nx - f).subset_of(pos.stall())) return f.lowest();
    }
    return std::nullopt;
  }

  // Press the undominated vertex with the fewest free neighbours.
  static Move fallback(const Position& pos) {
    const Graph& g = pos.graph();
    int best = -1;
    int best_free = 1 << 20;
    for (int x : g.vertices() - pos.dominated()) {
      const int f = (g.closed_neighborhood(x) & pos.free()).size();
      if (f >= 1 && f < best_free) {
        best_free = f;
        best = x;
      }
    }
    if (best >= 0) return Move::claim((g.closed_neighborhood(best) & pos.free()).lowest());
    return Move::claim(pos.free().lowest());
  }

  std::string name_;
  Grid2 grid_;
  Frame frame_;
  Frame sub_;
  Next next_;
  bool z_opening_;
  std::deque<int> queue_;
};

}  // namespace

std::unique_ptr<Strategy> staller_rho_strategy(int m) {
  GadgetSpec{GadgetKind::Rho, m}.validate();
  return std::make_unique<TrapStaller>("staller-rho", m, Frame{1, 1, false, m}, Next::Start, false);
}

std::unique_ptr<Strategy> staller_z_strategy(int m) {
  GadgetSpec{GadgetKind::Z, m}.validate();
  if (m < 2) throw std::invalid_argument("staller-z needs m >= 2");
  return std::make_unique<TrapStaller>("staller-z", m, Frame{1, 1, false, 0}, Next::None, true);
}

}  // namespace mbd
