#include "mbd/solver.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <thread>
#include <unordered_set>

namespace mbd {

namespace {

constexpr int kInf = GameValue::kStallerWin;
// Finite values never get near this; anything at or above it means Staller wins.
constexpr int kInfThreshold = 200;

int plus_one(int v) { return v >= kInfThreshold ? kInf : v + 1; }

struct NodeLimitHit {};

}  // namespace

// --- symmetry ---------------------------------------------------------------

VertexSet SymmetryGroup::apply(const Permutation& p, VertexSet s) {
  VertexSet out;
  for (int v : s) out.insert(p[v]);
  return out;
}

bool is_admissible_automorphism(const Graph& g, VertexSet predom, const Permutation& p) {
  const int n = g.order();
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : p) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  for (int v = 0; v < n; ++v) {
    if (SymmetryGroup::apply(p, g.neighbors(v)) != g.neighbors(p[v])) return false;
  }
  return SymmetryGroup::apply(p, predom) == predom;
}

SymmetryGroup::SymmetryGroup(const Graph& g, VertexSet predom, const std::vector<Permutation>& generators) {
  for (const auto& p : generators) {
    if (!is_admissible_automorphism(g, predom, p)) {
      throw std::invalid_argument("permutation is not an automorphism fixing the predominated set");
    }
  }
  const int n = g.order();
  Permutation id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<Permutation> group{id};
  std::vector<Permutation> frontier{id};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& a : frontier) {
      for (const auto& gen : generators) {
        Permutation c(n);
        for (int i = 0; i < n; ++i) c[i] = gen[a[i]];
        if (group.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  for (const auto& p : group) {
    if (p != id) perms_.push_back(p);
  }
}

SymmetryGroup SymmetryGroup::detect(const Graph& g, VertexSet predom, std::size_t max_elements) {
  const int n = g.order();
  std::vector<Permutation> found;
  Permutation p(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> extend = [&](int v) {
    if (found.size() >= max_elements) return;
    if (v == n) {
      found.push_back(p);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v) || predom.contains(w) != predom.contains(v)) continue;
      bool ok = true;
      for (int x = 0; x < v && ok; ++x) ok = g.adjacent(v, x) == g.adjacent(w, p[x]);
      if (!ok) continue;
      p[v] = w;
      used[w] = true;
      extend(v + 1);
      used[w] = false;
      p[v] = -1;
    }
  };
  extend(0);
  SymmetryGroup out;
  for (auto& q : found) {
    bool identity = true;
    for (int i = 0; i < n && identity; ++i) identity = q[i] == i;
    if (!identity) out.perms_.push_back(std::move(q));
  }
  return out;
}

std::pair<VertexSet, VertexSet> SymmetryGroup::canonical(VertexSet dom, VertexSet stall) const {
  std::pair<VertexSet, VertexSet> best{dom, stall};
  for (const auto& p : perms_) {
    std::pair<VertexSet, VertexSet> img{apply(p, dom), apply(p, stall)};
    if (img < best) best = img;
  }
  return best;
}

std::vector<Permutation> grid_symmetries(const Grid2& grid, VertexSet predom) {
  const Graph& g = grid.graph();
  const int n = grid.columns();
  Permutation swap_rows(2 * n), reverse(2 * n);
  for (int i = 1; i <= n; ++i) {
    swap_rows[grid.u(i)] = grid.v(i);
    swap_rows[grid.v(i)] = grid.u(i);
    reverse[grid.u(i)] = grid.u(n + 1 - i);
    reverse[grid.v(i)] = grid.v(n + 1 - i);
  }
  Permutation both(2 * n);
  for (int x = 0; x < 2 * n; ++x) both[x] = reverse[swap_rows[x]];
  std::vector<Permutation> out;
  for (auto* p : {&swap_rows, &reverse, &both}) {
    if (is_admissible_automorphism(g, predom, *p)) out.push_back(*p);
  }
  return out;
}

Position canonical_form(const Position& pos, const std::vector<Permutation>& automorphisms) {
  SymmetryGroup group(pos.graph(), pos.predom(), automorphisms);
  auto [d, s] = group.canonical(pos.dom(), pos.stall());
  return Position::restore(pos.graph_ptr(), d, s, pos.predom(), pos.to_move(), pos.dominator_moves());
}

// --- lower bound ------------------------------------------------------------

int packing_lower_bound(const Graph& g, VertexSet dom, VertexSet stall, VertexSet predom) {
  const VertexSet need = g.vertices() - (g.dominated_by(dom) | predom);
  if (need.empty()) return 0;
  const VertexSet freev = g.vertices() - dom - stall;
  std::array<std::pair<int, int>, 64> order{};
  int count = 0;
  for (int v : need) order[count++] = {(g.closed_neighborhood(v) & freev).size(), v};
  std::sort(order.begin(), order.begin() + count);
  VertexSet used;
  int picked = 0;
  for (int i = 0; i < count; ++i) {
    const VertexSet cover = g.closed_neighborhood(order[i].second) & freev;
    if (cover.empty()) return kInf;
    if (!cover.intersects(used)) {
      used |= cover;
      ++picked;
    }
  }
  return picked;
}

// --- search -----------------------------------------------------------------

namespace {

struct Key {
  std::uint64_t dom;
  std::uint64_t stall;
  std::uint8_t side;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = k.dom * 0x9E3779B97F4A7C15ULL;
    h ^= (k.stall + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= k.side * 0xC2B2AE3D27D4EB4FULL;
    h ^= h >> 31;
    return static_cast<std::size_t>(h * 0x94D049BB133111EBULL);
  }
};

struct Entry {
  std::uint8_t lo = 0;
  std::uint8_t hi = kInf;
};

constexpr int kShards = 64;

}  // namespace

struct Solver::Impl {
  std::shared_ptr<const Graph> graph;
  VertexSet predom;
  SymmetryGroup group;
  bool use_symmetry = false;
  bool allow_skip = false;
  MoveOrdering ordering = MoveOrdering::Natural;
  std::uint64_t node_limit = 0;
  std::size_t shard_capacity = 0;

  struct Shard {
    std::mutex mu;
    std::unordered_map<Key, Entry, KeyHash> map;
  };
  std::array<Shard, kShards> shards;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> hits{0};

  Key key_of(VertexSet dom, VertexSet stall, Player side) const {
    if (use_symmetry) {
      auto [d, s] = group.canonical(dom, stall);
      return Key{d.mask(), s.mask(), static_cast<std::uint8_t>(side)};
    }
    return Key{dom.mask(), stall.mask(), static_cast<std::uint8_t>(side)};
  }

  Shard& shard_of(const Key& k) { return shards[KeyHash{}(k) % kShards]; }

  std::optional<Entry> probe(const Key& k) {
    Shard& sh = shard_of(k);
    std::lock_guard lock(sh.mu);
    auto it = sh.map.find(k);
    if (it == sh.map.end()) return std::nullopt;
    return it->second;
  }

  void store(const Key& k, int lo, int hi) {
    Shard& sh = shard_of(k);
    std::lock_guard lock(sh.mu);
    if (sh.map.size() >= shard_capacity) sh.map.clear();
    Entry& e = sh.map[k];
    e.lo = static_cast<std::uint8_t>(std::max<int>(e.lo, lo));
    e.hi = static_cast<std::uint8_t>(std::min<int>(e.hi, hi));
  }

  // 0 when dominated, kInf when a vertex is isolated, -1 otherwise.
  int terminal_value(VertexSet dom, VertexSet stall) const {
    const Graph& g = *graph;
    for (int v : g.vertices() - predom) {
      if (g.closed_neighborhood(v).subset_of(stall)) return kInf;
    }
    if ((g.dominated_by(dom) | predom) == g.vertices()) return 0;
    return -1;
  }

  std::vector<int> ordered_moves(VertexSet dom, VertexSet stall, Player side) const {
    const Graph& g = *graph;
    const VertexSet freev = g.vertices() - dom - stall;
    std::vector<int> moves = freev.to_vector();
    if (ordering == MoveOrdering::ThreatFirst) {
      const VertexSet need = g.vertices() - (g.dominated_by(dom) | predom);
      std::vector<std::pair<int, int>> scored;
      for (int v : moves) {
        int score = 0;
        if (side == Player::Dominator) {
          score = (g.closed_neighborhood(v) & need).size();
        } else {
          for (int w : g.closed_neighborhood(v) & need) {
            score += 8 - std::min(8, (g.closed_neighborhood(w) & freev).size());
          }
        }
        scored.emplace_back(-score, v);
      }
      std::sort(scored.begin(), scored.end());
      for (std::size_t i = 0; i < moves.size(); ++i) moves[i] = scored[i].second;
    }
    return moves;
  }

  int search(VertexSet dom, VertexSet stall, Player side, int alpha, int beta) {
    const std::uint64_t n = ++nodes;
    if (node_limit != 0 && n > node_limit) throw NodeLimitHit{};
    const int term = terminal_value(dom, stall);
    if (term >= 0) return term;

    const Key key = key_of(dom, stall, side);
    if (auto e = probe(key)) {
      ++hits;
      if (e->lo == e->hi) return e->lo;
      if (e->lo >= beta) return e->lo;
      if (e->hi <= alpha) return e->hi;
      alpha = std::max<int>(alpha, e->lo);
      beta = std::min<int>(beta, e->hi);
    }
    const int lb = packing_lower_bound(*graph, dom, stall, predom);
    if (lb >= beta) {
      store(key, lb, kInf);
      return lb;
    }
    alpha = std::max(alpha, lb - 1);
    const int alpha0 = alpha;
    const int beta0 = beta;

    int best;
    if (side == Player::Dominator) {
      best = kInf;
      for (int v : ordered_moves(dom, stall, side)) {
        VertexSet d2 = dom;
        d2.insert(v);
        const int val = plus_one(search(d2, stall, Player::Staller, alpha - 1, beta - 1));
        best = std::min(best, val);
        if (best <= alpha) break;
        beta = std::min(beta, best);
      }
      if (allow_skip && best > alpha) {
        const int val = search(dom, stall, Player::Staller, alpha, beta);
        best = std::min(best, val);
      }
    } else {
      best = 0;
      for (int v : ordered_moves(dom, stall, side)) {
        VertexSet s2 = stall;
        s2.insert(v);
        const int val = search(dom, s2, Player::Dominator, alpha, beta);
        best = std::max(best, val);
        if (best >= beta) break;
        alpha = std::max(alpha, best);
      }
    }
    best = std::max(best, lb);
    if (best <= alpha0) {
      store(key, lb, best);
    } else if (best >= beta0) {
      store(key, best, kInf);
    } else {
      store(key, best, best);
    }
    return best;
  }

  int exact(VertexSet dom, VertexSet stall, Player side) { return search(dom, stall, side, -1, kInf + 1); }
};

Solver::Solver(SolveConfig cfg) : cfg_(std::move(cfg)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

Solver::Impl& Solver::session(const Position& pos) {
  if (impl_ && (impl_->graph == pos.graph_ptr() || *impl_->graph == pos.graph()) &&
      impl_->predom == pos.predom()) {
    return *impl_;
  }
  impl_ = std::make_unique<Impl>();
  impl_->graph = pos.graph_ptr();
  impl_->predom = pos.predom();
  impl_->allow_skip = cfg_.allow_skip;
  impl_->ordering = cfg_.move_ordering;
  impl_->node_limit = cfg_.node_limit;
  impl_->shard_capacity = std::max<std::size_t>(1, cfg_.memo_capacity / kShards);
  if (cfg_.use_symmetry) {
    impl_->use_symmetry = true;
    impl_->group = cfg_.automorphisms.empty()
                       ? SymmetryGroup::detect(pos.graph(), pos.predom())
                       : SymmetryGroup(pos.graph(), pos.predom(), cfg_.automorphisms);
  }
  return *impl_;
}

GameValue Solver::value(const Position& pos) {
  Impl& s = session(pos);
  try {
    return GameValue::from_raw(s.exact(pos.dom(), pos.stall(), pos.to_move()));
  } catch (const NodeLimitHit&) {
    throw LimitError("node limit reached");
  }
}

Move Solver::best_move(const Position& pos) {
  if (pos.status().terminal()) throw std::logic_error("no move in a finished game");
  Impl& s = session(pos);
  try {
    const int target = s.exact(pos.dom(), pos.stall(), pos.to_move());
    if (pos.to_move() == Player::Dominator) {
      for (int v : pos.free()) {
        VertexSet d = pos.dom();
        d.insert(v);
        if (plus_one(s.exact(d, pos.stall(), Player::Staller)) == target) return Move::claim(v);
      }
      return Move::skip();
    }
    for (int v : pos.free()) {
      VertexSet st = pos.stall();
      st.insert(v);
      if (s.exact(pos.dom(), st, Player::Dominator) == target) return Move::claim(v);
    }
  } catch (const NodeLimitHit&) {
    throw LimitError("node limit reached");
  }
  throw std::logic_error("solver found no move matching the position value");
}

SolveReport Solver::solve(const Position& pos) {
  Impl& s = session(pos);
  const std::uint64_t nodes0 = s.nodes.load();
  const std::uint64_t hits0 = s.hits.load();
  SolveReport rep;
  rep.principal_variation = GameRecord(pos);
  try {
    int root;
    const int beta = cfg_.upper_bound_seed ? *cfg_.upper_bound_seed + 1 : kInf + 1;
    if (cfg_.workers > 1 && !pos.status().terminal()) {
      const auto moves = pos.free().to_vector();
      std::vector<int> vals(moves.size(), kInf);
      std::atomic<std::size_t> next{0};
      std::atomic<bool> hit{false};
      auto work = [&] {
        try {
          for (std::size_t i; (i = next++) < moves.size();) {
            VertexSet d = pos.dom(), st = pos.stall();
            if (pos.to_move() == Player::Dominator) {
              d.insert(moves[i]);
              vals[i] = plus_one(s.exact(d, st, Player::Staller));
            } else {
              st.insert(moves[i]);
              vals[i] = s.exact(d, st, Player::Dominator);
            }
          }
        } catch (const NodeLimitHit&) {
          hit = true;
        }
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < cfg_.workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
      if (hit) throw NodeLimitHit{};
      if (pos.to_move() == Player::Dominator) {
        root = *std::min_element(vals.begin(), vals.end());
        if (cfg_.allow_skip) root = std::min(root, s.exact(pos.dom(), pos.stall(), Player::Staller));
      } else {
        root = *std::max_element(vals.begin(), vals.end());
      }
    } else {
      root = s.search(pos.dom(), pos.stall(), pos.to_move(), -1, beta);
      if (root >= beta) root = s.exact(pos.dom(), pos.stall(), pos.to_move());
    }
    rep.value = GameValue::from_raw(root);
    // Principal variation: follow lowest-index optimal moves for both sides.
    Position cur = pos;
    while (!cur.status().terminal()) {
      const Move m = best_move(cur);
      rep.principal_variation.push(cur.to_move(), m);
      cur = cur.apply(m, true);
    }
  } catch (const NodeLimitHit&) {
    rep.exhausted = true;
    if (cfg_.upper_bound_seed) {
      rep.value = GameValue::dominator_in(*cfg_.upper_bound_seed);
      rep.bound = BoundDirection::Upper;
    } else {
      int lb = packing_lower_bound(pos.graph(), pos.dom(), pos.stall(), pos.predom());
      const Key k = s.key_of(pos.dom(), pos.stall(), pos.to_move());
      if (auto e = s.probe(k)) lb = std::max<int>(lb, e->lo);
      rep.value = GameValue::from_raw(lb);
      rep.bound = BoundDirection::Lower;
    }
    rep.principal_variation = GameRecord(pos);
  }
  rep.nodes = s.nodes.load() - nodes0;
  rep.memo_hits = s.hits.load() - hits0;
  return rep;
}

SolveReport solve(const Position& pos, const SolveConfig& cfg) {
  Solver s(cfg);
  return s.solve(pos);
}

GameValue gamma_mb(const Graph& g, const SolveConfig& cfg) {
  Solver s(cfg);
  return s.value(new_position(g, {}, {}, Player::Dominator));
}

GameValue gamma_mb_prime(const Graph& g, const SolveConfig& cfg) {
  Solver s(cfg);
  return s.value(new_position(g, {}, {}, Player::Staller));
}

bool verify_skip_futility(const GadgetSpec& spec, const SolveConfig& cfg) {
  const Gadget gadget = build_gadget(spec);
  SolveConfig plain = cfg;
  plain.allow_skip = false;
  plain.workers = 1;
  Solver solver(plain);
  std::unordered_set<Key, KeyHash> seen;
  std::vector<Position> stack{gadget.position};
  while (!stack.empty()) {
    Position p = std::move(stack.back());
    stack.pop_back();
    if (p.status().terminal()) continue;
    if (!seen.insert(Key{p.dom().mask(), p.stall().mask(), static_cast<std::uint8_t>(p.to_move())}).second) {
      continue;
    }
    if (p.to_move() == Player::Dominator && solver.value(p).is_dominator_win()) {
      if (!solver.value(p.pass()).is_staller_win()) return false;
    }
    if (p.to_move() == Player::Dominator) {
      for (const Move& m : p.legal_moves()) stack.push_back(p.apply(m));
      continue;
    }
    // Staller keeps to value-optimal replies; off-plan Staller moves can hand
    // Dominator a spare tempo, which the lemma does not speak about.
    const GameValue v = solver.value(p);
    for (const Move& m : p.legal_moves()) {
      Position q = p.apply(m);
      const GameStatus st = q.status();
      const GameValue w = !st.terminal() ? solver.value(q)
                          : st.kind == StatusKind::StallerWin ? GameValue::staller_win()
                                                              : GameValue::dominator_in(0);
      if (w == v) stack.push_back(std::move(q));
    }
  }
  return true;
}

}  // namespace mbd
