#include "mbd/strategy.hpp"

#include <algorithm>
#include <sstream>

namespace mbd {

bool Strategy::accepts(const Position& pos) const { return !pos.status().terminal(); }

namespace {

void require_turn(const Strategy& s, const Position& pos) {
  if (pos.to_move() != s.side()) throw DomainError(s.name() + ": not this side's turn");
  if (pos.status().terminal()) throw DomainError(s.name() + ": game already over");
}

// Lowest free vertex that dominates something new, else the lowest free vertex.
Move fallback_claim(const Position& pos) {
  const VertexSet need = pos.graph().vertices() - pos.dominated();
  for (int v : pos.free()) {
    if (pos.graph().closed_neighborhood(v).intersects(need)) return Move::claim(v);
  }
  if (pos.free().empty()) throw DomainError("no free vertex");
  return Move::claim(pos.free().lowest());
}

class ObligationStrategy : public Strategy {
 public:
  ObligationStrategy(std::string name, Obligation ob) : name_(std::move(name)), ob_(std::move(ob)) {}

  std::string name() const override { return name_; }
  Player side() const override { return Player::Dominator; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<ObligationStrategy>(*this); }

  Move choose(const Position& pos, std::optional<Move> last) override {
    require_turn(*this, pos);
    const VertexSet dom = pos.dom();
    const VertexSet free = pos.free();
    if (last && !last->is_skip()) {
      for (VertexSet s : ob_.sets) {
        if (s.contains(last->vertex) && !s.intersects(dom) && (s & free).size() > 0) {
          return Move::claim((s & free).lowest());
        }
      }
    }
    if (ob_.opening && free.contains(*ob_.opening)) return Move::claim(*ob_.opening);
    const VertexSet* urgent = nullptr;
    for (const VertexSet& s : ob_.sets) {
      if (s.intersects(dom) || (s & free).empty()) continue;
      if (!urgent || (s & free).size() < (*urgent & free).size()) urgent = &s;
    }
    if (urgent) return Move::claim((*urgent & free).lowest());
    return fallback_claim(pos);
  }

 private:
  std::string name_;
  Obligation ob_;
};

class SolverStrategy : public Strategy {
 public:
  SolverStrategy(std::string name, Player side, std::shared_ptr<Solver> solver)
      : name_(std::move(name)), side_(side), solver_(std::move(solver)) {
    if (!solver_) solver_ = std::make_shared<Solver>();
  }

  std::string name() const override { return name_; }
  Player side() const override { return side_; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<SolverStrategy>(*this); }

  Move choose(const Position& pos, std::optional<Move>) override {
    require_turn(*this, pos);
    return solver_->best_move(pos);
  }

 private:
  std::string name_;
  Player side_;
  std::shared_ptr<Solver> solver_;
};

class DispatchStrategy : public Strategy {
 public:
  DispatchStrategy(std::string name, std::vector<SubBoard> parts, std::vector<int> openings)
      : name_(std::move(name)), parts_(std::move(parts)), openings_(std::move(openings)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const auto& p = parts_[i];
      if (!p.strategy) throw std::invalid_argument(name_ + ": sub-board " + p.name + " has no strategy");
      if (static_cast<int>(p.to_global.size()) != p.graph->order()) {
        throw std::invalid_argument(name_ + ": sub-board " + p.name + " has a bad index map");
      }
      for (int g : p.to_global) {
        if (g < 0 || g >= Graph::kMaxVertices || covered_.contains(g)) {
          throw std::invalid_argument(name_ + ": sub-boards overlap at vertex " + std::to_string(g));
        }
        covered_.insert(g);
      }
    }
  }

  DispatchStrategy(const DispatchStrategy& o)
      : name_(o.name_), parts_(o.parts_), openings_(o.openings_), opened_(o.opened_), covered_(o.covered_) {
    for (auto& p : parts_) p.strategy = std::shared_ptr<Strategy>(p.strategy->clone());
  }

  std::string name() const override { return name_; }
  Player side() const override { return Player::Dominator; }
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<DispatchStrategy>(*this); }

  Move choose(const Position& pos, std::optional<Move> last) override {
    require_turn(*this, pos);
    while (opened_ < openings_.size()) {
      const int v = openings_[opened_++];
      if (pos.free().contains(v)) return Move::claim(v);
    }
    if (last && !last->is_skip()) {
      const int part = part_of(last->vertex);
      if (part >= 0) {
        const Position local = local_position(parts_[part], pos, Player::Dominator);
        if (!local.status().terminal()) {
          return to_global(parts_[part], parts_[part].strategy->choose(local, Move::claim(local_index(part, last->vertex))));
        }
      }
    }
    for (auto& p : parts_) {
      const Position local = local_position(p, pos, Player::Dominator);
      if (local.status().terminal()) continue;
      return to_global(p, p.strategy->choose(local, Move::skip()));
    }
    return fallback_claim(pos);
  }

  std::string state_key() const override {
    std::ostringstream out;
    out << opened_;
    for (const auto& p : parts_) out << '|' << p.strategy->state_key();
    return out.str();
  }

  std::optional<std::vector<Component>> decomposition(const Position& pos) const override {
    if (opened_ < openings_.size()) return std::nullopt;
    std::vector<Component> out;
    for (const auto& p : parts_) {
      out.push_back(Component{p.name, local_position(p, pos, Player::Staller),
                              std::shared_ptr<Strategy>(p.strategy->clone()), p.to_global});
    }
    return out;
  }

 private:
  int part_of(int v) const {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const auto& tg = parts_[i].to_global;
      if (std::find(tg.begin(), tg.end(), v) != tg.end()) return static_cast<int>(i);
    }
    return -1;
  }

  int local_index(int part, int v) const {
    const auto& tg = parts_[part].to_global;
    return static_cast<int>(std::find(tg.begin(), tg.end(), v) - tg.begin());
  }

  static Position local_position(const SubBoard& p, const Position& pos, Player to_move) {
    VertexSet dom;
    VertexSet stall;
    for (std::size_t i = 0; i < p.to_global.size(); ++i) {
      if (pos.dom().contains(p.to_global[i])) dom.insert(static_cast<int>(i));
      if (pos.stall().contains(p.to_global[i])) stall.insert(static_cast<int>(i));
    }
    return Position::restore(p.graph, dom, stall, p.predom, to_move, dom.size());
  }

  static Move to_global(const SubBoard& p, Move m) {
    if (m.is_skip()) throw DomainError(p.name + ": sub-strategy skipped");
    return Move::claim(p.to_global[m.vertex]);
  }

  std::string name_;
  std::vector<SubBoard> parts_;
  std::vector<int> openings_;
  std::size_t opened_ = 0;
  VertexSet covered_;
};

}  // namespace

std::unique_ptr<Strategy> obligation_strategy(std::string name, Obligation obligation) {
  return std::make_unique<ObligationStrategy>(std::move(name), std::move(obligation));
}

std::unique_ptr<Strategy> pairing_strategy(const Position& board, const Pairing& p, std::string name) {
  const Graph& g = board.graph();
  Obligation ob;
  ob.opening = p.first_move;
  VertexSet used;
  for (auto [a, b] : p.pairs) {
    if (a == b) throw std::invalid_argument("pair with equal vertices");
    if (a < 0 || b < 0 || a >= g.order() || b >= g.order()) throw std::invalid_argument("pair vertex out of range");
    const VertexSet s = VertexSet::of({a, b});
    if (s.intersects(used)) throw std::invalid_argument("pairs are not disjoint");
    used |= s;
    ob.sets.push_back(s);
  }
  VertexSet need = g.vertices() - board.predom() - g.dominated_by(board.dom());
  if (p.first_move) need = need - g.closed_neighborhood(*p.first_move);
  for (int x : need) {
    const VertexSet nx = g.closed_neighborhood(x);
    const bool covered = std::any_of(ob.sets.begin(), ob.sets.end(), [&](VertexSet s) { return s.subset_of(nx); });
    if (!covered) throw std::invalid_argument("pairing does not guarantee domination of " + g.label(x));
  }
  return obligation_strategy(std::move(name), std::move(ob));
}

std::unique_ptr<Strategy> solver_strategy(std::string name, Player side, std::shared_ptr<Solver> solver) {
  return std::make_unique<SolverStrategy>(std::move(name), side, std::move(solver));
}

std::unique_ptr<Strategy> dispatch_strategy(std::string name, std::vector<SubBoard> parts, std::vector<int> openings) {
  return std::make_unique<DispatchStrategy>(std::move(name), std::move(parts), std::move(openings));
}

std::unique_ptr<Strategy> product_dispatch_strategy(const Graph& g, int copies, const Strategy& first,
                                                    const Strategy& second, int first_copy) {
  if (copies < 1) throw std::invalid_argument("product needs at least one copy");
  if (first_copy < 0 || first_copy >= copies) throw std::invalid_argument("first copy out of range");
  if (first.side() != Player::Dominator || second.side() != Player::Dominator) {
    throw std::invalid_argument("product dispatch needs Dominator sub-strategies");
  }
  auto board = std::make_shared<const Graph>(g);
  std::vector<SubBoard> parts;
  std::vector<int> order{first_copy};
  for (int j = 0; j < copies; ++j) {
    if (j != first_copy) order.push_back(j);
  }
  for (int j : order) {
    SubBoard p;
    p.name = "copy" + std::to_string(j);
    p.graph = board;
    for (int x = 0; x < g.order(); ++x) p.to_global.push_back(x * copies + j);
    p.strategy = std::shared_ptr<Strategy>(j == first_copy ? first.clone() : second.clone());
    parts.push_back(std::move(p));
  }
  return dispatch_strategy("product", std::move(parts));
}

}  // namespace mbd
