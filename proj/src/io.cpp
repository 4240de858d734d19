#include "mbd/io.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mbd {

namespace {

int parse_count(const std::string& text, const std::string& whole) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("expected a non-negative integer in '" + whole + "', got '" + text + "'");
  return std::stoi(text);
}

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
  return s;
}

Graph parse_edges(const std::string& body, const std::string& whole) {
  const auto colon = body.find(':');
  const int n = parse_count(body.substr(0, colon), whole);
  std::vector<std::pair<int, int>> edges;
  if (colon != std::string::npos) {
    std::string rest = body.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size() && !rest.empty()) {
      const auto semi = rest.find(';', pos);
      const std::string tok = trim(rest.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
      if (!tok.empty()) {
        const auto dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("edge '" + tok + "' in '" + whole + "' needs a-b");
        edges.emplace_back(parse_count(tok.substr(0, dash), whole), parse_count(tok.substr(dash + 1), whole));
      }
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
  }
  return Graph(n, edges);
}

std::string set_labels(const Graph& g, VertexSet s) {
  std::string out;
  for (int v : s) out += (out.empty() ? "" : ",") + g.label(v);
  return out;
}

json vertex_list(VertexSet s) { return json(s.to_vector()); }

std::string kind_name(StatusKind k) {
  switch (k) {
    case StatusKind::Ongoing: return "Ongoing";
    case StatusKind::DominatorWin: return "DominatorWin";
    case StatusKind::StallerWin: return "StallerWin";
  }
  return "?";
}

std::string direction_name(BoundDirection d) {
  switch (d) {
    case BoundDirection::Exact: return "exact";
    case BoundDirection::Lower: return "lower";
    case BoundDirection::Upper: return "upper";
  }
  return "?";
}

}  // namespace

Position Board::with_first(Player first) const {
  if (start.to_move() == first) return start;
  return Position::restore(start.graph_ptr(), start.dom(), start.stall(), start.predom(), first,
                           start.dominator_moves());
}

Graph parse_graph(const std::string& text) { return parse_board(text).start.graph(); }

Board parse_board(const std::string& raw) {
  const std::string text = trim(raw);
  Board b;
  b.spec = text;
  if (text.rfind("prod(", 0) == 0) {
    if (text.back() != ')') throw std::invalid_argument("unbalanced parentheses in '" + text + "'");
    const std::string inner = text.substr(5, text.size() - 6);
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) throw std::invalid_argument("prod needs two factors: '" + text + "'");
    const Graph g = parse_graph(inner.substr(0, split));
    const Graph h = parse_graph(inner.substr(split + 1));
    b.start = new_position(cartesian_product(g, h), {}, {}, Player::Dominator);
    return b;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("board '" + text + "' needs kind:size");
  std::string kind = text.substr(0, colon);
  std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::string body = text.substr(colon + 1);
  if (kind == "path") {
    b.start = new_position(make_path(parse_count(body, text)), {}, {}, Player::Dominator);
  } else if (kind == "cycle") {
    b.start = new_position(make_cycle(parse_count(body, text)), {}, {}, Player::Dominator);
  } else if (kind == "complete") {
    b.start = new_position(make_complete(parse_count(body, text)), {}, {}, Player::Dominator);
  } else if (kind == "empty") {
    b.start = new_position(make_empty(parse_count(body, text)), {}, {}, Player::Dominator);
  } else if (kind == "grid2") {
    const int n = parse_count(body, text);
    b.start = new_position(Grid2(n).graph(), {}, {}, Player::Dominator);
    b.grid_columns = n;
  } else if (kind == "edges") {
    b.start = new_position(parse_edges(body, text), {}, {}, Player::Dominator);
  } else {
    const Gadget g = build_gadget(parse_gadget(text));
    b.gadget = g.spec;
    b.start = g.position;
  }
  return b;
}

int parse_vertex(const Graph& g, const std::string& token) {
  if (auto v = g.find_label(token)) return *v;
  if (!token.empty() && std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    const int v = std::stoi(token);
    if (v < g.order()) return v;
  }
  throw std::invalid_argument("no vertex '" + token + "' on this board");
}

Player parse_player(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "d" || t == "dominator") return Player::Dominator;
  if (t == "s" || t == "staller") return Player::Staller;
  throw std::invalid_argument("expected Dominator/Staller (D/S), got '" + text + "'");
}

json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  json labels = json::array();
  for (int v = 0; v < g.order(); ++v) labels.push_back(g.label(v));
  return {{"order", g.order()}, {"edges", edges}, {"labels", labels}};
}

json to_json(GameValue v) {
  json j{{"text", v.to_string()}};
  if (v.is_staller_win()) j["kind"] = "StallerWin";
  else {
    j["kind"] = "DominatorWin";
    j["claims"] = v.claims();
  }
  return j;
}

json to_json(const Position& p) {
  const GameStatus st = p.status();
  json status{{"kind", kind_name(st.kind)}};
  if (st.kind == StatusKind::StallerWin) {
    status["isolated"] = st.isolated;
    status["isolated_label"] = p.graph().label(st.isolated);
  }
  return {{"graph", to_json(p.graph())},
          {"dom", vertex_list(p.dom())},
          {"stall", vertex_list(p.stall())},
          {"predom", vertex_list(p.predom())},
          {"dominated", vertex_list(p.dominated())},
          {"to_move", to_string(p.to_move())},
          {"dominator_moves", p.dominator_moves()},
          {"status", status}};
}

json to_json(const GameRecord& r) {
  json moves = json::array();
  const Graph& g = r.initial().graph();
  for (const RecordedMove& m : r.moves()) {
    json mv{{"player", to_string(m.player)}};
    if (m.move.is_skip()) {
      mv["vertex"] = nullptr;
      mv["label"] = "skip";
    } else {
      mv["vertex"] = m.move.vertex;
      mv["label"] = g.label(m.move.vertex);
    }
    if (!m.annotation.empty()) mv["annotation"] = m.annotation;
    moves.push_back(mv);
  }
  return {{"initial", to_json(r.initial())},
          {"moves", moves},
          {"dominator_claims", r.dominator_claims()},
          {"dominator_skips", r.dominator_skips()}};
}

json to_json(const SolveReport& r) {
  return {{"value", to_json(r.value)},
          {"bound", direction_name(r.bound)},
          {"exhausted", r.exhausted},
          {"nodes", r.nodes},
          {"memo_hits", r.memo_hits},
          {"principal_variation", to_json(r.principal_variation)}};
}

json to_json(const CertificateReport& r) {
  json accounting = json::array();
  for (const CaseAccount& a : r.accounting) {
    json parts = json::array();
    for (const ComponentResult& c : a.parts) parts.push_back({{"name", c.name}, {"worst", to_json(c.worst)}, {"nodes", c.nodes}});
    json line = json::array();
    for (const RecordedMove& m : a.line)
      line.push_back(m.move.is_skip() ? json("skip") : json(r.witness.initial().graph().label(m.move.vertex)));
    accounting.push_back({{"line", line}, {"claims_before", a.claims_before}, {"parts", parts}, {"total", to_json(a.total)}});
  }
  return {{"strategy", r.strategy},
          {"side", to_string(r.side)},
          {"budget", r.budget},
          {"verdict", to_string(r.verdict)},
          {"worst", to_json(r.worst)},
          {"witness", to_json(r.witness)},
          {"nodes", r.nodes},
          {"memo_hits", r.memo_hits},
          {"composed", r.composed},
          {"accounting", accounting},
          {"note", r.note}};
}

json to_json(const BoundReport& r) {
  json inputs = json::array();
  for (const BoundInput& in : r.inputs)
    inputs.push_back({{"name", in.name}, {"value", to_json(in.value)}, {"provenance", in.provenance}});
  return {{"formula", r.formula},
          {"game", r.game},
          {"inputs", inputs},
          {"premise", r.premise},
          {"bound", r.bound ? json(*r.bound) : json(nullptr)},
          {"exact", r.exact ? to_json(*r.exact) : json(nullptr)},
          {"slack", r.slack ? json(*r.slack) : json(nullptr)},
          {"consistent", r.consistent()},
          {"note", r.note}};
}

json to_json(const LemmaCheck& c) {
  // Wall-clock time is left out so reruns compare byte for byte.
  return {{"item", c.item}, {"expected", c.expected}, {"observed", c.observed},
          {"pass", c.pass}, {"nodes", c.nodes},       {"note", c.note}};
}

json to_json(const LemmaReport& r) {
  json checks = json::array();
  for (const LemmaCheck& c : r.checks) checks.push_back(to_json(c));
  return {{"suite", r.name}, {"range", {r.lo, r.hi}}, {"pass", r.pass()}, {"checks", checks}, {"note", r.note}};
}

json to_json(const StructureCheck& s, const Graph& g) {
  json j{{"ok", s.ok}, {"diagnosis", s.diagnosis}, {"k", s.k}};
  if (s.ok) {
    j["a"] = g.label(s.a);
    json pairs = json::array();
    for (auto [b, c] : s.pairs) pairs.push_back({g.label(b), g.label(c)});
    j["pairs"] = pairs;
    json att = json::array();
    for (VertexSet a : s.attachments) att.push_back(set_labels(g, a));
    j["attachments"] = att;
  }
  return j;
}

json to_json(const Theorem1Verdict& v) {
  return {{"verdict", to_string(v.kind)},
          {"gamma", v.gamma},
          {"gamma_mb", v.gamma_mb ? to_json(*v.gamma_mb) : json(nullptr)},
          {"structure", v.structure},
          {"vertex_in_two_gamma_sets", v.vertex_in_two_gamma_sets ? json(*v.vertex_in_two_gamma_sets) : json(nullptr)},
          {"reason", v.reason}};
}

json to_json(const CorpusRow& row) {
  return {{"seed", row.seed},
          {"graph", to_json(row.graph)},
          {"gamma_mb", to_json(row.gamma_mb)},
          {"vertex_in_two_gamma_sets", row.two_sets},
          {"agree", row.agree}};
}

json to_json(const CalGLemmaRow& row) {
  return {{"spec", row.spec.to_string()},
          {"valid", row.valid},
          {"rejection", row.rejection},
          {"gamma_sets", row.gamma_sets},
          {"counts_ok", row.counts_ok},
          {"gamma_mb", to_json(row.gamma_mb)},
          {"gamma_mb_ok", row.gamma_mb_ok}};
}

json to_json(const Trap& t, const Graph& g) {
  return {{"kind", to_string(t.kind)},
          {"column", t.column},
          {"row", t.row == 0 ? "u" : "v"},
          {"reply", t.reply},
          {"reply_label", g.label(t.reply)},
          {"name", to_string(t.kind) + "@" + std::to_string(t.column)}};
}

json to_json(const RunManifest& m) {
  return {{"command", m.command},
          {"arguments", m.arguments},
          {"seeds", m.seeds},
          {"limits", {{"node_limit", m.node_limit}, {"workers", m.workers}}},
          {"outputs", m.outputs},
          {"tool_version", m.tool_version},
          {"timestamp", {{"started_at", m.started_at}, {"wall_clock_seconds", m.wall_clock_seconds}}}};
}

}  // namespace mbd
