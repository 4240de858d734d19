#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mbd/io.hpp"
#include "mbd/service.hpp"

using namespace mbd;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kLimit = 3 };

struct Common {
  std::uint64_t nodes = 0;
  int workers = 1;
  std::uint64_t seed = 0;
  std::string json_out;
  std::string skip = "off";
  std::string symmetry = "off";
};

struct Run {
  RunManifest manifest;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

std::string now_iso() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

bool on_off(const std::string& v) { return v == "on"; }

SolveConfig solve_config(const Common& c) {
  SolveConfig cfg;
  cfg.node_limit = c.nodes;
  cfg.workers = c.workers;
  cfg.allow_skip = on_off(c.skip);
  cfg.use_symmetry = on_off(c.symmetry);
  return cfg;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--nodes", c.nodes, "node limit, 0 = unlimited (default: $MBD_NODE_LIMIT)");
  app->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));
  app->add_option("--seed", c.seed, "base seed for sampled corpora");
  app->add_option("--json", c.json_out, "write the JSON artifact here ('-' for stdout)");
  app->add_option("--skip", c.skip, "allow Dominator skips")->check(CLI::IsMember({"on", "off"}));
  app->add_option("--symmetry", c.symmetry, "symmetry reduction")->check(CLI::IsMember({"on", "off"}));
}

Run start(const std::string& command, const Common& c, std::map<std::string, std::string> args) {
  Run r;
  r.manifest.command = command;
  r.manifest.arguments = std::move(args);
  r.manifest.arguments["skip"] = c.skip;
  r.manifest.arguments["symmetry"] = c.symmetry;
  r.manifest.node_limit = c.nodes;
  r.manifest.workers = c.workers;
  r.manifest.started_at = now_iso();
  r.manifest.tool_version = kToolVersion;
  if (!c.json_out.empty() && c.json_out != "-") r.manifest.outputs.push_back(c.json_out);
  return r;
}

void emit(Run& run, const Common& c, const json& result) {
  run.manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - run.t0).count();
  const json doc{{"manifest", to_json(run.manifest)}, {"result", result}};
  if (c.json_out.empty()) return;
  if (c.json_out == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(c.json_out);
  if (!out) throw std::runtime_error("cannot write " + c.json_out);
  out << doc.dump(2) << '\n';
}

/// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("range", "expected a or a..b, got '" + text + "'");
  }
}

std::string value_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

// ---- solve ---------------------------------------------------------------

int cmd_solve(const Common& c, const std::string& graph, const std::string& game) {
  const Board b = parse_board(graph);
  const Player first = parse_player(game);
  Run run = start("solve", c, {{"graph", graph}, {"game", game}});
  SolveConfig cfg = solve_config(c);
  if (cfg.use_symmetry && b.grid_columns && b.start.predom().empty())
    cfg.automorphisms = grid_symmetries(Grid2(*b.grid_columns), {});
  const SolveReport r = solve(b.with_first(first), cfg);
  std::cout << graph << " " << (first == Player::Dominator ? "D" : "S") << "-game: " << r.value.to_string();
  if (r.exhausted) std::cout << " (" << to_json(r)["bound"].get<std::string>() << " bound, node limit reached)";
  std::cout << "  nodes=" << r.nodes << '\n';
  emit(run, c, to_json(r));
  return r.exhausted ? kLimit : kPass;
}

// ---- certify -------------------------------------------------------------

int cmd_certify(const Common& c, const std::string& graph, const std::string& strategy, int budget,
                const std::string& game, bool compose, bool staller_pass) {
  const Board b = parse_board(graph);
  Position pos = game.empty() ? b.start : b.with_first(parse_player(game));
  Run run = start("certify", c,
                  {{"graph", graph}, {"strategy", strategy}, {"budget", std::to_string(budget)},
                   {"compose", compose ? "on" : "off"}, {"staller_pass", staller_pass ? "on" : "off"}});
  const auto s = make_strategy(strategy, pos, b.gadget);
  CertifyConfig cfg;
  cfg.node_limit = c.nodes;
  cfg.allow_skip = on_off(c.skip);
  cfg.compose = compose;
  cfg.staller_may_pass = staller_pass;
  const CertificateReport r = certify_strategy(pos, *s, budget, cfg);
  std::cout << s->name() << " on " << graph << ": " << to_string(r.verdict) << " (budget " << budget
            << ", worst " << r.worst.to_string() << ", nodes " << r.nodes << ")";
  if (!r.note.empty()) std::cout << "  " << r.note;
  std::cout << '\n';
  emit(run, c, to_json(r));
  switch (r.verdict) {
    case Verdict::Certified: return kPass;
    case Verdict::Refuted: return kFail;
    case Verdict::Inconclusive: return kLimit;
  }
  return kFail;
}

// ---- characterize --------------------------------------------------------

int cmd_characterize(const Common& c, const std::string& spec, const std::string& graph, const std::string& corpus,
                     int count, bool grid) {
  const SolveConfig cfg = solve_config(c);
  if (!spec.empty()) {
    const CalGSpec s = parse_calG_spec(spec);
    Run run = start("characterize", c, {{"spec", spec}});
    const Graph g = calG_graph(s);
    const StructureCheck st = is_calG_structure(g);
    const Theorem1Verdict v = theorem1_check(g, s, cfg);
    std::cout << "spec " << s.to_string() << ": structure " << (st.ok ? "ok" : "rejected: " + st.diagnosis)
              << "; gamma=" << v.gamma << " gamma_MB=" << (v.gamma_mb ? v.gamma_mb->to_string() : "?") << "; "
              << to_string(v.kind) << '\n';
    emit(run, c, {{"structure", to_json(st, g)}, {"graph", to_json(g)}, {"verdict", to_json(v)}});
    return v.kind == Theorem1Kind::CounterexampleCandidate ? kFail : kPass;
  }
  if (!graph.empty()) {
    const Graph g = parse_graph(graph);
    Run run = start("characterize", c, {{"graph", graph}});
    const StructureCheck st = is_calG_structure(g);
    const Theorem1Verdict v = theorem1_check(g, std::nullopt, cfg);
    std::cout << graph << ": structure " << (st.ok ? "ok" : "rejected: " + st.diagnosis) << "; " << to_string(v.kind)
              << " (" << v.reason << ")\n";
    emit(run, c, {{"structure", to_json(st, g)}, {"verdict", to_json(v)}});
    return v.kind == Theorem1Kind::CounterexampleCandidate ? kFail : kPass;
  }
  if (grid) {
    Run run = start("characterize", c, {{"grid", "on"}});
    json rows = json::array();
    int valid = 0, lemma = 0, mb = 0, total = 0;
    for (const CalGSpec& s : calG_spec_grid()) {
      const CalGLemmaRow row = calG_lemma_check(s, cfg);
      ++total;
      valid += row.valid;
      lemma += row.valid && row.counts_ok;
      mb += row.gamma_mb_ok;
      rows.push_back(to_json(row));
    }
    std::cout << "calG grid: " << total << " specs, " << valid << " keep the structure, " << lemma
              << " satisfy the gamma-set lemma, " << mb << " have gamma_MB = k\n";
    emit(run, c, {{"total", total}, {"valid", valid}, {"lemma_ok", lemma}, {"gamma_mb_ok", mb}, {"rows", rows}});
    return lemma == valid && mb == total ? kPass : kFail;
  }
  std::vector<std::uint64_t> seeds;
  if (!corpus.empty()) seeds = read_seed_list(corpus);
  else
    for (int i = 0; i < count; ++i) seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  Run run = start("characterize", c, {{"corpus", corpus.empty() ? "sampled" : corpus}, {"count", std::to_string(seeds.size())}});
  run.manifest.seeds = seeds;
  const auto rows = k2_corpus_check(seeds, c.workers);
  json out = json::array();
  int agree = 0, wins = 0;
  for (const CorpusRow& r : rows) {
    agree += r.agree;
    wins += r.gamma_mb == GameValue::dominator_in(2);
    out.push_back(to_json(r));
  }
  std::cout << "k=2 corpus: " << rows.size() << " graphs, " << wins << " with gamma_MB = 2, " << agree
            << " agree with the two-gamma-sets criterion\n";
  emit(run, c, {{"graphs", rows.size()}, {"agree", agree}, {"rows", out}});
  return agree == static_cast<int>(rows.size()) ? kPass : kFail;
}

// ---- bounds --------------------------------------------------------------

int cmd_bounds(const Common& c, int thm, const std::string& g, const std::string& h, const std::vector<int>& corollary,
               bool corpus, const std::string& csv) {
  ProductOptions opt;
  opt.solve = solve_config(c);
  opt.solve.use_symmetry = false;  // products carry their own structure; auto-detection is not worth it here
  std::vector<BoundReport> reports;
  Run run = start("bounds", c, {});
  if (corollary.size() == 2) {
    run.manifest.arguments["corollary"] = std::to_string(corollary[0]) + "," + std::to_string(corollary[1]);
    reports.push_back(corollary_bounds(corollary[0], corollary[1], opt));
    std::cout << "corollary P" << corollary[0] << "xP" << corollary[1] << ": " << value_text(reports.back().bound) << '\n';
  } else if (corpus) {
    run.manifest.arguments["corpus"] = "on";
    for (const ProductCase& pc : product_corpus_check(opt)) {
      for (const BoundReport* r : {&pc.bounds.first, &pc.bounds.second}) {
        reports.push_back(*r);
        std::cout << pc.g << "x" << pc.h << " " << r->formula << " " << r->game << "-game: bound " << value_text(r->bound)
                  << ", exact " << (r->exact ? r->exact->to_string() : "-") << (r->premise ? "" : " (premise fails)")
                  << '\n';
      }
    }
  } else if (thm == 3 || thm == 4) {
    if (g.empty() || (thm == 4 && h.empty())) throw CLI::ValidationError("bounds", "--thm 3 needs --g; --thm 4 needs --g and --h");
    run.manifest.arguments["thm"] = std::to_string(thm);
    run.manifest.arguments["g"] = g;
    if (thm == 4) run.manifest.arguments["h"] = h;
    const auto pair = thm == 3 ? thm3_bounds(parse_graph(g), opt) : thm4_bounds(parse_graph(g), parse_graph(h), opt);
    for (const BoundReport* r : {&pair.first, &pair.second}) {
      reports.push_back(*r);
      std::cout << r->formula << " " << r->game << "-game: bound " << value_text(r->bound) << ", exact "
                << (r->exact ? r->exact->to_string() : "-") << (r->note.empty() ? "" : "  [" + r->note + "]") << '\n';
    }
  } else {
    throw CLI::ValidationError("bounds", "give --thm 3|4, --corollary m n, or --corpus");
  }
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv);
    write_bounds_csv(out, reports);
    run.manifest.outputs.push_back(csv);
  }
  json arr = json::array();
  bool ok = true;
  for (const BoundReport& r : reports) {
    arr.push_back(to_json(r));
    ok = ok && r.consistent();
  }
  emit(run, c, arr);
  return ok ? kPass : kFail;
}

// ---- verify-lemma --------------------------------------------------------

int cmd_verify(const Common& c, const std::string& name, const std::string& range) {
  const auto [lo, hi] = parse_range(range);
  Run run = start("verify-lemma", c, {{"name", name}, {"range", range}});
  LemmaOptions opt;
  opt.solve = solve_config(c);
  if (c.nodes) opt.certify_nodes = c.nodes;
  const LemmaReport r = verify_lemma(name, lo, hi, opt);
  for (const LemmaCheck& ck : r.checks)
    std::cout << (ck.pass ? "pass  " : "FAIL  ") << ck.item << ": expected " << ck.expected << ", got " << ck.observed
              << (ck.note.empty() ? "" : "  [" + ck.note + "]") << '\n';
  if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
  emit(run, c, to_json(r));
  if (r.pass()) return kPass;
  for (const LemmaCheck& ck : r.checks)
    if (!ck.pass && ck.note.find("node limit") == std::string::npos && ck.observed.rfind("inconclusive", 0) != 0)
      return kFail;
  return kLimit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker domination game solver and verification tools"};
  app.require_subcommand(1);
  Common c;
  if (const char* env = std::getenv("MBD_NODE_LIMIT")) {
    try {
      c.nodes = std::stoull(env);
    } catch (const std::logic_error&) {
      std::cerr << "MBD_NODE_LIMIT must be an integer\n";
      return kUsage;
    }
  }

  std::string graph, game = "D", strategy, spec, corpus, h, range, csv, engine = "exact", host = "127.0.0.1";
  int budget = 0, thm = 0, count = 200, port = 8080, max_n = 16, budget_ms = 2000;
  bool compose = false, staller_pass = false, grid = false, corpus_flag = false;
  std::vector<int> corollary;

  auto* solve_cmd = app.add_subcommand("solve", "exact value of a board");
  solve_cmd->add_option("--graph", graph, "board spec, e.g. grid2:5, rho:4, prod(path:3,cycle:4)")->required();
  solve_cmd->add_option("--game", game, "who moves first: D or S");
  add_common(solve_cmd, c);

  auto* cert_cmd = app.add_subcommand("certify", "exhaustively check a strategy against a budget");
  cert_cmd->add_option("--graph", graph)->required();
  cert_cmd->add_option("--strategy", strategy,
                       "pairing, split, w4, sd_p2p13, p2pn, staller-rho, staller-z, exact")->required();
  cert_cmd->add_option("--budget", budget)->required();
  std::string cert_game;
  cert_cmd->add_option("--game", cert_game, "override the first mover");
  cert_cmd->add_flag("--compose", compose, "certify decomposed strategies part by part");
  cert_cmd->add_flag("--staller-pass", staller_pass, "let Staller pass");
  add_common(cert_cmd, c);

  auto* char_cmd = app.add_subcommand("characterize", "structure checks and characterization verdicts");
  auto* g1 = char_cmd->add_option("--spec", spec, "calG spec, e.g. k=3,a1=1,ai=1,1,cases=1,2");
  auto* g2 = char_cmd->add_option("--graph", graph, "board spec to test");
  auto* g3 = char_cmd->add_option("--corpus", corpus, "seed list for the k = 2 corpus");
  auto* g4 = char_cmd->add_flag("--grid", grid, "run the lemma over the full calG spec grid");
  char_cmd->add_option("--count", count, "sampled corpus size when no seed file is given");
  g1->excludes(g2, g3, g4);
  g2->excludes(g3, g4);
  g3->excludes(g4);
  add_common(char_cmd, c);

  auto* bounds_cmd = app.add_subcommand("bounds", "product bounds against exact values");
  bounds_cmd->set_help_flag("--help", "print this help and exit");
  bounds_cmd->add_option("--thm", thm)->check(CLI::IsMember({3, 4}));
  bounds_cmd->add_option("--g", spec, "first factor");
  bounds_cmd->add_option("--h", h, "second factor (--thm 4)");
  bounds_cmd->add_option("--corollary", corollary, "m n for P_m x P_n")->expected(2);
  bounds_cmd->add_flag("--corpus", corpus_flag, "all pairs from P2, P3, P4, C4, K3 up to 12 vertices");
  bounds_cmd->add_option("--csv", csv, "also write CSV rows here");
  add_common(bounds_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify-lemma", "run a lemma suite");
  std::string lemma;
  verify_cmd->add_option("name", lemma)->required()->check(CLI::IsMember(lemma_suites()));
  auto* m_opt = verify_cmd->add_option("--m", range, "range a..b");
  auto* n_opt = verify_cmd->add_option("--n", range, "range a..b (alias of --m)");
  m_opt->excludes(n_opt);
  add_common(verify_cmd, c);

  auto* serve_cmd = app.add_subcommand("serve", "HTTP play service");
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--engine", engine, "exact or strategy:NAME");
  serve_cmd->add_option("--max-n", max_n, "largest board the exact engine accepts");
  serve_cmd->add_option("--budget-ms", budget_ms, "per-move time budget");
  add_common(serve_cmd, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(c, graph, game);
    if (*cert_cmd) return cmd_certify(c, graph, strategy, budget, cert_game, compose, staller_pass);
    if (*char_cmd) return cmd_characterize(c, spec, graph, corpus, count, grid);
    if (*bounds_cmd) return cmd_bounds(c, thm, spec, h, corollary, corpus_flag, csv);
    if (*verify_cmd) {
      if (range.empty()) range = "1..6";
      return cmd_verify(c, lemma, range);
    }
    if (*serve_cmd) {
      ServiceConfig cfg;
      cfg.engine = engine;
      cfg.max_exact_vertices = max_n;
      cfg.budget_ms = budget_ms;
      cfg.solve = solve_config(c);
      Service service(cfg);
      std::cout << "serving on http://" << host << ":" << port << std::endl;
      if (!serve(service, host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << '\n';
        return kFail;
      }
      return kPass;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << '\n';
    return kLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
