#include "mbd/service.hpp"

#include <chrono>
#include <fstream>
#include <random>

namespace mbd {

namespace {

using Clock = std::chrono::steady_clock;

std::string new_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  static const char* hex = "0123456789abcdef";
  std::string id;
  std::uint64_t x = rng();
  for (int i = 0; i < 16; ++i, x >>= 4) id += hex[x & 15];
  return id;
}

/// Undominated vertices Staller could still isolate, with their free closed neighbourhoods.
std::vector<std::pair<int, VertexSet>> open_threats(const Position& pos) {
  std::vector<std::pair<int, VertexSet>> out;
  const Graph& g = pos.graph();
  for (int x : g.vertices() - pos.dominated()) {
    const VertexSet f = g.closed_neighborhood(x) & pos.free();
    if (!f.empty()) out.emplace_back(x, f);
  }
  return out;
}

// Used only when no proof-backed move is available in time.
Move heuristic_move(const Position& pos) {
  const auto threats = open_threats(pos);
  int tightest = -1;
  for (std::size_t i = 0; i < threats.size(); ++i)
    if (tightest < 0 || threats[i].second.size() < threats[tightest].second.size()) tightest = static_cast<int>(i);
  if (pos.to_move() == Player::Staller) {
    if (tightest >= 0) return Move::claim(threats[tightest].second.lowest());
    return Move::claim(pos.free().lowest());
  }
  if (tightest >= 0 && threats[tightest].second.size() == 1) return Move::claim(threats[tightest].second.lowest());
  const VertexSet need = pos.graph().vertices() - pos.dominated();
  int best = pos.free().lowest();
  int gain = -1;
  for (int v : pos.free()) {
    const int gv = (pos.graph().closed_neighborhood(v) & need).size();
    if (gv > gain) {
      gain = gv;
      best = v;
    }
  }
  return Move::claim(best);
}

std::optional<Grid2> trap_grid(const Board& b) {
  if (b.grid_columns) return Grid2(*b.grid_columns);
  if (b.gadget && b.start.graph().order() == 2 * b.gadget->m) return Grid2(b.gadget->m);
  return std::nullopt;
}

}  // namespace

Service::Service(ServiceConfig cfg) : cfg_(std::move(cfg)) {}

std::shared_ptr<Session> Service::find(const std::string& id) const {
  std::shared_lock lock(map_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "not_found", "no session '" + id + "'");
  return it->second;
}

std::size_t Service::session_count() const {
  std::shared_lock lock(map_mu_);
  return sessions_.size();
}

Evaluation Service::evaluate(const Position& pos) const {
  Evaluation ev;
  if (pos.status().terminal()) {
    ev.value = pos.status().kind == StatusKind::StallerWin ? GameValue::staller_win() : GameValue::dominator_in(0);
    return ev;
  }
  const auto deadline = Clock::now() + std::chrono::milliseconds(cfg_.budget_ms);
  std::uint64_t limit = 200'000;
  if (cfg_.solve.node_limit) limit = std::min(limit, cfg_.solve.node_limit);
  for (;;) {
    SolveConfig sc = cfg_.solve;
    sc.node_limit = limit;
    sc.automorphisms.clear();
    const auto t0 = Clock::now();
    const SolveReport r = solve(pos, sc);
    const double spent = std::chrono::duration<double>(Clock::now() - t0).count();
    ev.nodes += r.nodes;
    ev.value = r.value;
    if (!r.exhausted) {
      ev.exhausted = false;
      ev.bound = "exact";
      if (!r.principal_variation.moves().empty()) ev.best_move = r.principal_variation.moves().front().move;
      return ev;
    }
    ev.exhausted = true;
    ev.bound = r.bound == BoundDirection::Upper ? "upper" : "lower";
    if (cfg_.solve.node_limit && limit >= cfg_.solve.node_limit) return ev;
    const double left = std::chrono::duration<double>(deadline - Clock::now()).count();
    const double rate = static_cast<double>(r.nodes) / std::max(spent, 1e-6);
    // The next, larger search is re-run from scratch, so it must fit in what is left.
    std::uint64_t next = std::min<std::uint64_t>(limit * 8, static_cast<std::uint64_t>(rate * left * 0.8));
    if (cfg_.solve.node_limit) next = std::min(next, cfg_.solve.node_limit);
    if (next <= limit) return ev;
    limit = next;
  }
}

Move Service::engine_move(Session& s, const Position& pos, std::optional<Move> last) {
  if (s.strategy) {
    try {
      return s.strategy->choose(pos, last);
    } catch (const DomainError& e) {
      s.engine_exact = false;
      s.engine_note = std::string("strategy left its domain (") + e.what() + "); heuristic replies from here";
      s.strategy.reset();
      return heuristic_move(pos);
    }
  }
  if (s.engine == "exact") {
    const Evaluation ev = evaluate(pos);
    if (ev.best_move) return *ev.best_move;
    s.engine_exact = false;
    s.engine_note = "search budget ran out; heuristic reply";
    return heuristic_move(pos);
  }
  return heuristic_move(pos);
}

json Service::create_session(const json& req) {
  if (!req.is_object() || !req.contains("board") || !req["board"].is_string())
    throw ServiceError(400, "bad_request", "body needs a string field 'board'");
  auto s = std::make_shared<Session>();
  try {
    s->board = parse_board(req["board"].get<std::string>());
    s->human = parse_player(req.value("human", std::string("Staller")));
    s->engine = req.value("engine", cfg_.engine);
    s->position = req.contains("first") ? s->board.with_first(parse_player(req["first"].get<std::string>()))
                                        : s->board.start;
  } catch (const ServiceError&) {
    throw;
  } catch (const std::exception& e) {
    throw ServiceError(400, "bad_request", e.what());
  }
  const Player engine_side = opponent(s->human);
  if (s->engine == "exact") {
    if (s->position.graph().order() > cfg_.max_exact_vertices)
      throw ServiceError(422, "unsupported", "exact engine is capped at " + std::to_string(cfg_.max_exact_vertices) +
                                                 " vertices; board has " + std::to_string(s->position.graph().order()));
  } else if (s->engine.rfind("strategy:", 0) == 0) {
    const std::string name = s->engine.substr(9);
    try {
      s->strategy = make_strategy(name, s->position, s->board.gadget);
    } catch (const std::exception& e) {
      throw ServiceError(422, "unsupported", e.what());
    }
    if (s->strategy->side() != engine_side)
      throw ServiceError(422, "unsupported", "strategy '" + name + "' plays " + to_string(s->strategy->side()) +
                                                 ", but the engine side is " + to_string(engine_side));
    if (!s->strategy->accepts(s->position))
      throw ServiceError(422, "unsupported", "strategy '" + name + "' does not cover board " + s->board.spec);
  } else {
    throw ServiceError(400, "bad_request", "engine must be 'exact' or 'strategy:NAME'");
  }
  s->record = GameRecord(s->position);
  if (!s->position.status().terminal() && s->position.to_move() == engine_side) {
    const Move m = engine_move(*s, s->position, std::nullopt);
    s->position = s->position.apply(m, true);
    s->record.push(engine_side, m, "engine");
  }
  s->id = new_id();
  json out = session_json(*s);
  {
    std::unique_lock lock(map_mu_);
    sessions_[s->id] = s;
  }
  return out;
}

json Service::get_session(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return session_json(*s);
}

json Service::post_move(const std::string& id, const json& req) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  if (!req.is_object() || !req.contains("vertex"))
    throw ServiceError(400, "bad_request", "body needs a field 'vertex' (label or index)");
  if (s->position.status().terminal()) throw ServiceError(409, "game_over", "the game is already decided");
  if (s->position.to_move() != s->human) throw ServiceError(409, "not_your_turn", "the engine is to move");
  int v = -1;
  try {
    const json& jv = req["vertex"];
    v = jv.is_number_integer() ? jv.get<int>() : parse_vertex(s->position.graph(), jv.get<std::string>());
    if (v < 0 || v >= s->position.graph().order()) throw std::invalid_argument("vertex index out of range");
  } catch (const std::exception& e) {
    throw ServiceError(409, "illegal_move", e.what());
  }
  // Work on copies; commit only once both moves are known.
  Position next;
  try {
    next = s->position.apply(Move::claim(v));
  } catch (const IllegalMove& e) {
    throw ServiceError(409, "illegal_move", e.what());
  }
  GameRecord rec = s->record;
  rec.push(s->human, Move::claim(v), "human");
  if (!next.status().terminal()) {
    std::unique_ptr<Strategy> backup = s->strategy ? s->strategy->clone() : nullptr;
    const bool exact_before = s->engine_exact;
    const std::string note_before = s->engine_note;
    try {
      const Move m = engine_move(*s, next, Move::claim(v));
      next = next.apply(m, true);
      rec.push(opponent(s->human), m, "engine");
    } catch (const std::exception& e) {
      s->strategy = std::move(backup);
      s->engine_exact = exact_before;
      s->engine_note = note_before;
      throw ServiceError(500, "engine_failure", std::string("engine reply failed, move not applied: ") + e.what());
    }
  }
  s->position = next;
  s->record = std::move(rec);
  log_if_finished(*s);
  return session_json(*s);
}

json Service::eval(const std::string& id) {
  auto s = find(id);
  Position pos;
  Board board;
  {
    std::lock_guard lock(s->mu);
    pos = s->position;
    board = s->board;
  }
  // The search runs outside the session lock so moves are not held up.
  return eval_position(board, pos, s->engine == "exact");
}

json Service::eval_position(const Board& board, const Position& pos, bool exact_engine) const {
  json out{{"dominated", to_json(pos)["dominated"]}};
  if (exact_engine || pos.graph().order() <= cfg_.max_exact_vertices) {
    const Evaluation ev = evaluate(pos);
    out["value"] = to_json(ev.value);
    out["bound"] = ev.bound;
    out["exhausted"] = ev.exhausted;
    out["nodes"] = ev.nodes;
    if (ev.best_move && !ev.best_move->is_skip()) {
      out["best_move"] = {{"vertex", ev.best_move->vertex}, {"label", pos.graph().label(ev.best_move->vertex)}};
    } else {
      out["best_move"] = nullptr;
    }
  } else {
    out["value"] = to_json(GameValue::dominator_in(
        packing_lower_bound(pos.graph(), pos.dom(), pos.stall(), pos.predom())));
    out["bound"] = "lower";
    out["exhausted"] = true;
    out["nodes"] = 0;
    out["best_move"] = nullptr;
  }
  json traps = json::array();
  if (const auto grid = trap_grid(board); grid && !pos.status().terminal())
    for (const Trap& t : detect_traps(pos, *grid)) traps.push_back(to_json(t, pos.graph()));
  out["traps"] = traps;
  return out;
}

void Service::delete_session(const std::string& id) {
  std::unique_lock lock(map_mu_);
  if (sessions_.erase(id) == 0) throw ServiceError(404, "not_found", "no session '" + id + "'");
}

json Service::session_json(const Session& s) const {
  json j{{"id", s.id},
         {"board", s.board.spec},
         {"human", to_string(s.human)},
         {"engine", s.engine},
         {"position", to_json(s.position)},
         {"record", to_json(s.record)},
         {"status", to_json(s.position)["status"]},
         {"engine_exact", s.engine_exact},
         {"engine_note", s.engine_note}};
  if (s.board.grid_columns) j["grid_columns"] = *s.board.grid_columns;
  if (s.board.gadget) j["gadget"] = s.board.gadget->name();
  return j;
}

void Service::log_if_finished(const Session& s) {
  if (cfg_.record_log.empty() || !s.position.status().terminal()) return;
  std::lock_guard lock(log_mu_);
  std::ofstream out(cfg_.record_log, std::ios::app);
  out << json{{"id", s.id}, {"board", s.board.spec}, {"record", to_json(s.record)}}.dump() << '\n';
}

}  // namespace mbd
