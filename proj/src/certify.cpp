#include "mbd/certify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace mbd {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

constexpr int kLoss = 255;  // Staller wins

struct Key {
  std::uint64_t dom;
  std::uint64_t stall;
  std::string state;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<std::uint64_t>()(k.dom * 0x9E3779B97F4A7C15ULL ^ k.stall);
    return h ^ (std::hash<std::string>()(k.state) + 0x9E3779B9 + (h << 6) + (h >> 2));
  }
};

struct Entry {
  int value;
  // Opponent move attaining it; -1 = skip/pass, -2 = split point (no move).
  int move;
};

int add(int a, int b) { return a >= kLoss || b >= kLoss ? kLoss : a + b; }

class UnsoundSplit : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Certifier {
 public:
  Certifier(const CertifyConfig& cfg, std::uint64_t* shared_nodes, CertificateReport* report)
      : cfg_(cfg), nodes_(shared_nodes), report_(report) {}

  // Additional Dominator claims from `pos` (opponent to move, not terminal).
  int opponent_node(const Position& pos, const Strategy& s) {
    Key key{pos.dom().mask(), pos.stall().mask(), s.state_key()};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++report_->memo_hits;
      return it->second.value;
    }
    if (cfg_.node_limit && *nodes_ >= cfg_.node_limit) throw LimitError("certification node limit reached");
    ++*nodes_;
    ++report_->nodes;

    if (cfg_.compose && s.side() == Player::Dominator) {
      if (auto parts = s.decomposition(pos)) {
        const int v = compose(pos, *parts);
        memo_.emplace(std::move(key), Entry{v, -2});
        return v;
      }
    }

    const bool maximize = s.side() == Player::Dominator;
    int best = maximize ? -1 : kLoss + 1;
    int best_move = -2;
    for (Move o : opponent_moves(pos)) {
      const int v = after_opponent(pos, s, o);
      if (maximize ? v > best : v < best) {
        best = v;
        best_move = o.vertex;
      }
      if (maximize && best >= kLoss) break;
    }
    memo_.emplace(std::move(key), Entry{best, best_move});
    return best;
  }

  std::vector<Move> opponent_moves(const Position& pos) const {
    std::vector<Move> out;
    for (int v : pos.free()) out.push_back(Move::claim(v));
    const bool pass = pos.to_move() == Player::Dominator ? cfg_.allow_skip : cfg_.staller_may_pass;
    if (pass) out.push_back(Move::skip());
    return out;
  }

  Position apply_opponent(const Position& pos, Move o) const {
    if (!o.is_skip()) return pos.apply(o);
    return pos.to_move() == Player::Dominator ? pos.apply(o, true) : pos.pass();
  }

  int terminal_value(const Position& pos) const { return pos.status().kind == StatusKind::StallerWin ? kLoss : 0; }

  int after_opponent(const Position& pos, const Strategy& s, Move o) {
    const Position p1 = apply_opponent(pos, o);
    const int c1 = pos.to_move() == Player::Dominator && !o.is_skip() ? 1 : 0;
    line_.push_back(RecordedMove{pos.to_move(), o, {}});
    int v;
    if (p1.status().terminal()) {
      v = add(c1, terminal_value(p1));
    } else {
      auto s2 = s.clone();
      const Move m = s2->choose(p1, o);
      const Position p2 = p1.apply(m, cfg_.allow_skip);
      const int c2 = s.side() == Player::Dominator && !m.is_skip() ? 1 : 0;
      line_.push_back(RecordedMove{p1.to_move(), m, {}});
      v = add(c1 + c2, p2.status().terminal() ? terminal_value(p2) : opponent_node(p2, *s2));
      line_.pop_back();
    }
    line_.pop_back();
    return v;
  }

  int compose(const Position& pos, const std::vector<Strategy::Component>& parts) {
    check_decomposition(pos, parts);
    CaseAccount account;
    account.line = line_;
    account.claims_before = pos.dominator_moves();
    int total = 0;
    for (const auto& c : parts) {
      ComponentResult r{c.name, GameValue::dominator_in(0), 0};
      if (!c.position.status().terminal()) {
        std::ostringstream key;
        key << c.name << '#' << c.position.dom().mask() << '#' << c.position.stall().mask() << '#'
            << c.strategy->state_key();
        auto it = part_memo_.find(key.str());
        if (it == part_memo_.end()) {
          CertifyConfig sub = cfg_;
          sub.staller_may_pass = true;
          CertificateReport sub_report;
          Certifier inner(sub, nodes_, &sub_report);
          const int v = inner.opponent_node(c.position, *c.strategy);
          it = part_memo_.emplace(key.str(), std::make_pair(v, sub_report.nodes)).first;
          report_->memo_hits += sub_report.memo_hits;
        }
        r.worst = GameValue::from_raw(static_cast<std::uint8_t>(it->second.first));
        r.nodes = it->second.second;
      }
      total = add(total, r.worst.raw());
      account.parts.push_back(std::move(r));
    }
    account.total = GameValue::from_raw(static_cast<std::uint8_t>(std::min(add(account.claims_before, total), kLoss)));
    report_->accounting.push_back(std::move(account));
    return total;
  }

  // Sub-boards must sit inside the board, have only predom vertices that are
  // really dominated, and jointly be responsible for every undominated vertex.
  static void check_decomposition(const Position& pos, const std::vector<Strategy::Component>& parts) {
    const Graph& g = pos.graph();
    const VertexSet dominated = pos.dominated();
    VertexSet responsible;
    for (const auto& c : parts) {
      const Graph& lg = c.position.graph();
      for (auto [a, b] : lg.edges()) {
        if (!g.adjacent(c.to_global[a], c.to_global[b])) throw UnsoundSplit(c.name + ": edge not in the board");
      }
      for (int x = 0; x < lg.order(); ++x) {
        const int gx = c.to_global[x];
        if (c.position.dom().contains(x) != pos.dom().contains(gx) ||
            c.position.stall().contains(x) != pos.stall().contains(gx)) {
          throw UnsoundSplit(c.name + ": claims out of sync");
        }
        if (c.position.predom().contains(x)) {
          if (!dominated.contains(gx)) throw UnsoundSplit(c.name + ": predominated vertex is not dominated");
        } else {
          responsible.insert(gx);
        }
      }
    }
    if (!(g.vertices() - dominated).subset_of(responsible)) {
      throw UnsoundSplit("decomposition leaves a vertex undominated");
    }
  }

  void witness(Position pos, std::unique_ptr<Strategy> s, GameRecord& out) {
    while (!pos.status().terminal()) {
      if (pos.to_move() == s->side()) throw std::logic_error("witness walk out of turn");
      auto it = memo_.find(Key{pos.dom().mask(), pos.stall().mask(), s->state_key()});
      if (it == memo_.end() || it->second.move == -2) return;
      const Move o = it->second.move == -1 ? Move::skip() : Move::claim(it->second.move);
      out.push(pos.to_move(), o);
      pos = apply_opponent(pos, o);
      if (pos.status().terminal()) return;
      const Move m = s->choose(pos, o);
      out.push(pos.to_move(), m);
      pos = pos.apply(m, cfg_.allow_skip);
    }
  }

  std::vector<RecordedMove> line_;

 private:
  CertifyConfig cfg_;
  std::uint64_t* nodes_;
  CertificateReport* report_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
  std::unordered_map<std::string, std::pair<int, std::uint64_t>> part_memo_;
};

}  // namespace

CertificateReport certify_strategy(const Position& pos, const Strategy& strategy, int budget,
                                   const CertifyConfig& cfg) {
  CertificateReport report;
  report.strategy = strategy.name();
  report.side = strategy.side();
  report.budget = budget;
  report.composed = cfg.compose;
  report.witness = GameRecord(pos);
  std::uint64_t nodes = 0;
  Certifier c(cfg, &nodes, &report);
  auto s = strategy.clone();
  Position start = pos;
  int claims = 0;
  try {
    if (!pos.status().terminal() && pos.to_move() == strategy.side()) {
      const Move m = s->choose(pos, std::nullopt);
      start = pos.apply(m, cfg.allow_skip);
      report.witness.push(pos.to_move(), m);
      claims = strategy.side() == Player::Dominator && !m.is_skip() ? 1 : 0;
      c.line_.push_back(RecordedMove{pos.to_move(), m, {}});
    }
    int v = claims;
    if (start.status().terminal()) {
      v = start.status().kind == StatusKind::StallerWin ? kLoss : claims;
    } else {
      v = add(claims, c.opponent_node(start, *s));
      c.witness(start, s->clone(), report.witness);
    }
    report.worst = GameValue::from_raw(static_cast<std::uint8_t>(std::min(v, kLoss)));
    const bool ok = strategy.side() == Player::Dominator ? v <= budget : v >= budget;
    report.verdict = ok ? Verdict::Certified : Verdict::Refuted;
  } catch (const LimitError& e) {
    report.verdict = Verdict::Inconclusive;
    report.note = e.what();
  } catch (const DomainError& e) {
    report.verdict = Verdict::Refuted;
    report.note = std::string("strategy left its domain: ") + e.what();
  } catch (const IllegalMove& e) {
    report.verdict = Verdict::Refuted;
    report.note = std::string("strategy played an illegal move: ") + e.what();
  } catch (const UnsoundSplit& e) {
    report.verdict = Verdict::Refuted;
    report.note = std::string("unsound decomposition: ") + e.what();
  }
  return report;
}

}  // namespace mbd
