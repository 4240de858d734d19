#include "mbd/characterization.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace mbd {

namespace {

std::string case_token(const CalGChoice& c) {
  switch (c.kind) {
    case CalGCase::Edge: return "1";
    case CalGCase::BothToA: return "2";
    case CalGCase::BToA: return "3b:" + std::to_string(c.j);
    case CalGCase::CToA: return "3c:" + std::to_string(c.j);
    case CalGCase::Cross: return "4:" + std::to_string(c.j) + ":" + std::to_string(c.l);
  }
  return "?";
}

std::string set_text(const Graph& g, VertexSet s) {
  std::string out = "{";
  for (int v : s) out += (out.size() > 1 ? "," : "") + g.label(v);
  return out + "}";
}

int next_pair(int i, int k) { return i == k ? 2 : i + 1; }

}  // namespace

int calG_a() { return 0; }
int calG_b(int i) { return 2 * i - 3; }
int calG_c(int i) { return 2 * i - 2; }

void CalGSpec::validate() const {
  auto fail = [](const std::string& why) { throw std::invalid_argument("calG spec: " + why); };
  if (k < 2) fail("k must be at least 2");
  if (a1_size < 1) fail("|A_1| must be at least 1");
  if (static_cast<int>(ai_sizes.size()) != k - 1) fail("need one |A_i| for each i = 2..k");
  if (static_cast<int>(cases.size()) != k - 1) fail("need one case for each i = 2..k");
  int n = 2 * k - 1 + a1_size;
  for (int s : ai_sizes) {
    if (s < 1) fail("every |A_i| must be at least 1");
    n += s;
  }
  if (n > kExhaustiveLimit) fail("graph has " + std::to_string(n) + " vertices, above the exhaustive limit");
  for (int i = 2; i <= k; ++i) {
    const CalGChoice& c = cases[i - 2];
    auto partner_ok = [&](int j) { return j >= 2 && j <= k && j != i; };
    if ((c.kind == CalGCase::BToA || c.kind == CalGCase::CToA || c.kind == CalGCase::Cross) && !partner_ok(c.j)) {
      fail("case partner j out of range for i = " + std::to_string(i));
    }
    if (c.kind == CalGCase::Cross && !partner_ok(c.l)) fail("case partner l out of range for i = " + std::to_string(i));
  }
}

std::string CalGSpec::to_string() const {
  std::ostringstream out;
  out << "k=" << k << ",a1=" << a1_size << ",ai=";
  for (std::size_t i = 0; i < ai_sizes.size(); ++i) out << (i ? "," : "") << ai_sizes[i];
  out << ",cases=";
  for (std::size_t i = 0; i < cases.size(); ++i) out << (i ? "," : "") << case_token(cases[i]);
  return out.str();
}

CalGSpec parse_calG_spec(const std::string& text) {
  // Split on commas, then group tokens under the last key seen.
  std::vector<std::pair<std::string, std::vector<std::string>>> fields;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) {
      fields.push_back({tok.substr(0, eq), {tok.substr(eq + 1)}});
    } else {
      if (fields.empty()) throw std::invalid_argument("calG spec: expected key=value, got '" + tok + "'");
      fields.back().second.push_back(tok);
    }
  }
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("calG spec: bad number '" + s + "'");
    return v;
  };
  CalGSpec spec;
  std::vector<std::string> case_tokens;
  bool have_k = false;
  for (auto& [key, values] : fields) {
    if (key == "k") {
      spec.k = number(values.at(0));
      have_k = true;
    } else if (key == "a1") {
      spec.a1_size = number(values.at(0));
    } else if (key == "ai") {
      for (auto& v : values) spec.ai_sizes.push_back(number(v));
    } else if (key == "cases") {
      case_tokens = values;
    } else {
      throw std::invalid_argument("calG spec: unknown key '" + key + "'");
    }
  }
  if (!have_k) throw std::invalid_argument("calG spec: k is required");
  if (spec.ai_sizes.empty()) spec.ai_sizes.assign(std::max(spec.k - 1, 0), 1);
  if (case_tokens.empty()) case_tokens.assign(std::max(spec.k - 1, 0), "1");
  for (std::size_t idx = 0; idx < case_tokens.size(); ++idx) {
    const int i = static_cast<int>(idx) + 2;
    std::vector<std::string> parts;
    std::stringstream cs(case_tokens[idx]);
    for (std::string p; std::getline(cs, p, ':');) parts.push_back(p);
    if (parts.empty()) throw std::invalid_argument("calG spec: empty case");
    CalGChoice c;
    const std::string& head = parts[0];
    const int dflt = next_pair(i, spec.k);
    if (head == "1") c.kind = CalGCase::Edge;
    else if (head == "2") c.kind = CalGCase::BothToA;
    else if (head == "3" || head == "3b") c.kind = CalGCase::BToA;
    else if (head == "3c") c.kind = CalGCase::CToA;
    else if (head == "4") c.kind = CalGCase::Cross;
    else throw std::invalid_argument("calG spec: unknown case '" + case_tokens[idx] + "'");
    c.j = parts.size() > 1 ? number(parts[1]) : dflt;
    c.l = parts.size() > 2 ? number(parts[2]) : c.j;
    if (c.kind == CalGCase::Edge || c.kind == CalGCase::BothToA) c.j = c.l = 0;
    if (c.kind != CalGCase::Cross) c.l = 0;
    spec.cases.push_back(c);
  }
  spec.validate();
  return spec;
}

std::vector<CalGSpec> calG_spec_grid() {
  std::vector<CalGSpec> out;
  for (int k = 2; k <= 4; ++k) {
    std::vector<std::vector<CalGChoice>> options(k - 1);
    for (int i = 2; i <= k; ++i) {
      auto& o = options[i - 2];
      o.push_back({CalGCase::Edge, 0, 0});
      o.push_back({CalGCase::BothToA, 0, 0});
      if (k == 2) continue;
      const int j = next_pair(i, k);
      o.push_back({CalGCase::BToA, j, 0});
      o.push_back({CalGCase::CToA, j, 0});
      o.push_back({CalGCase::Cross, j, j});
      if (k >= 4) o.push_back({CalGCase::Cross, j, next_pair(j, k)});
    }
    // Mixed-radix walk over case choices and sizes.
    std::vector<std::size_t> pick(k - 1, 0);
    for (bool more = true; more;) {
      for (int a1 = 1; a1 <= 2; ++a1) {
        for (int sizes = 0; sizes < (1 << (k - 1)); ++sizes) {
          CalGSpec s;
          s.k = k;
          s.a1_size = a1;
          for (int i = 0; i < k - 1; ++i) {
            s.ai_sizes.push_back(1 + ((sizes >> i) & 1));
            s.cases.push_back(options[i][pick[i]]);
          }
          out.push_back(std::move(s));
        }
      }
      more = false;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        if (++pick[i] < options[i].size()) {
          more = true;
          break;
        }
        pick[i] = 0;
      }
    }
  }
  return out;
}

Graph calG_graph(const CalGSpec& spec) {
  spec.validate();
  const int k = spec.k;
  std::vector<std::string> labels{"a"};
  for (int i = 2; i <= k; ++i) {
    labels.push_back("b" + std::to_string(i));
    labels.push_back("c" + std::to_string(i));
  }
  std::vector<std::pair<int, int>> edges;
  auto attach = [&](int set, int size, std::initializer_list<int> to) {
    for (int t = 1; t <= size; ++t) {
      const int x = static_cast<int>(labels.size());
      labels.push_back("A" + std::to_string(set) + "_" + std::to_string(t));
      for (int y : to) edges.emplace_back(y, x);
    }
  };
  attach(1, spec.a1_size, {calG_a()});
  for (int i = 2; i <= k; ++i) attach(i, spec.ai_sizes[i - 2], {calG_b(i), calG_c(i)});
  for (int i = 2; i <= k; ++i) {
    const CalGChoice& c = spec.cases[i - 2];
    const int b = calG_b(i), cc = calG_c(i);
    switch (c.kind) {
      case CalGCase::Edge:
        edges.emplace_back(b, cc);
        break;
      case CalGCase::BothToA:
        edges.emplace_back(calG_a(), b);
        edges.emplace_back(calG_a(), cc);
        break;
      case CalGCase::BToA:
        edges.emplace_back(calG_a(), b);
        edges.emplace_back(cc, calG_b(c.j));
        edges.emplace_back(cc, calG_c(c.j));
        break;
      case CalGCase::CToA:
        edges.emplace_back(calG_a(), cc);
        edges.emplace_back(b, calG_b(c.j));
        edges.emplace_back(b, calG_c(c.j));
        break;
      case CalGCase::Cross:
        edges.emplace_back(b, calG_b(c.j));
        edges.emplace_back(b, calG_c(c.j));
        edges.emplace_back(cc, calG_b(c.l));
        edges.emplace_back(cc, calG_c(c.l));
        break;
    }
  }
  // Different cases may ask for the same edge twice.
  for (auto& [x, y] : edges)
    if (x > y) std::swap(x, y);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const int n = static_cast<int>(labels.size());
  return Graph(n, edges, std::move(labels));
}

StructureCheck is_calG_structure(const Graph& g) {
  StructureCheck r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.diagnosis = std::move(why);
    return r;
  };
  const auto sets = enumerate_gamma_sets(g);
  const int k = sets.front().size();
  r.k = k;
  if (k < 2) return fail("domination number is " + std::to_string(k) + ", below 2");
  VertexSet u;
  for (VertexSet s : sets) u |= s;
  if (u.size() != 2 * k - 1) {
    return fail("γ-sets cover " + std::to_string(u.size()) + " vertices, expected 2k-1 = " + std::to_string(2 * k - 1));
  }

  // Roles come from how the outside vertices attach to U.
  const VertexSet outside = g.vertices() - u;
  int a = -1;
  VertexSet a1;
  std::vector<VertexSet> pair_sets;
  std::vector<VertexSet> attach_sets;
  for (int x : outside) {
    const VertexSet nu = g.neighbors(x) & u;
    if (nu.size() == 1) {
      if (a >= 0 && nu.lowest() != a) {
        return fail("vertices with one U-neighbour hang on both " + g.label(a) + " and " + g.label(nu.lowest()));
      }
      a = nu.lowest();
      a1.insert(x);
    } else if (nu.size() == 2) {
      auto it = std::find(pair_sets.begin(), pair_sets.end(), nu);
      if (it == pair_sets.end()) {
        pair_sets.push_back(nu);
        attach_sets.push_back(VertexSet::single(x));
      } else {
        attach_sets[it - pair_sets.begin()].insert(x);
      }
    } else {
      return fail("vertex " + g.label(x) + " has U-neighbourhood " + set_text(g, nu) + ", matching no attachment set");
    }
  }
  if (a < 0) return fail("A_1 is empty: no outside vertex hangs on a single U vertex");
  VertexSet covered = VertexSet::single(a);
  for (VertexSet p : pair_sets) {
    if (p.intersects(covered)) return fail("attachment neighbourhoods overlap at " + set_text(g, p & covered));
    covered |= p;
  }
  if (static_cast<int>(pair_sets.size()) != k - 1) {
    return fail("found " + std::to_string(pair_sets.size()) + " attachment pairs, expected k-1 = " + std::to_string(k - 1));
  }
  if (covered != u) return fail("U vertices " + set_text(g, u - covered) + " belong to no pair");

  r.a = a;
  r.attachments.push_back(a1);
  for (std::size_t i = 0; i < pair_sets.size(); ++i) {
    const std::vector<int> p = pair_sets[i].to_vector();
    r.pairs.emplace_back(p[0], p[1]);
    r.attachments.push_back(attach_sets[i]);
  }

  auto joined_to_pair = [&](int x, std::size_t skip) {
    for (std::size_t j = 0; j < r.pairs.size(); ++j) {
      if (j != skip && g.adjacent(x, r.pairs[j].first) && g.adjacent(x, r.pairs[j].second)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto [b, c] = r.pairs[i];
    const bool case1 = g.adjacent(b, c);
    const bool case2 = g.adjacent(b, a) && g.adjacent(c, a);
    const bool case3 = (g.adjacent(b, a) && joined_to_pair(c, i)) || (g.adjacent(c, a) && joined_to_pair(b, i));
    const bool case4 = joined_to_pair(b, i) && joined_to_pair(c, i);
    if (!(case1 || case2 || case3 || case4)) {
      return fail("pair " + set_text(g, VertexSet::of({b, c})) + " satisfies none of the four edge cases");
    }
  }
  r.ok = true;
  return r;
}

Graph build_calG(const CalGSpec& spec) {
  Graph g = calG_graph(spec);
  const StructureCheck s = is_calG_structure(g);
  if (!s.ok) throw std::invalid_argument("calG spec " + spec.to_string() + " does not yield the structure: " + s.diagnosis);
  return g;
}

int gamma_set_count(const Graph& g) { return static_cast<int>(enumerate_gamma_sets(g).size()); }

bool has_vertex_in_two_gamma_sets(const Graph& g) {
  const auto sets = enumerate_gamma_sets(g);
  if (sets.front().size() != 2) throw std::domain_error("two-γ-sets criterion needs γ = 2");
  for (int v : g.vertices()) {
    int hits = 0;
    for (VertexSet s : sets) hits += s.contains(v);
    if (hits >= 2) return true;
  }
  return false;
}

CalGLemmaRow calG_lemma_check(const CalGSpec& spec, const SolveConfig& cfg) {
  CalGLemmaRow row;
  row.spec = spec;
  const Graph g = calG_graph(spec);
  const StructureCheck st = is_calG_structure(g);
  row.valid = st.ok;
  row.rejection = st.diagnosis;
  const auto sets = enumerate_gamma_sets(g);
  row.gamma_sets = static_cast<int>(sets.size());
  if (row.valid) {
    const int k = spec.k;
    bool ok = row.gamma_sets == 1 << (k - 1);
    for (VertexSet s : sets) ok = ok && s.contains(calG_a());
    for (int i = 2; i <= k && ok; ++i) {
      int b = 0, c = 0;
      for (VertexSet s : sets) {
        b += s.contains(calG_b(i));
        c += s.contains(calG_c(i));
        ok = ok && !(s.contains(calG_b(i)) && s.contains(calG_c(i)));
      }
      ok = ok && b == 1 << (k - 2) && c == 1 << (k - 2);
    }
    row.counts_ok = ok;
  }
  row.gamma_mb = gamma_mb(g, cfg);
  row.gamma_mb_ok = row.gamma_mb == GameValue::dominator_in(spec.k);
  return row;
}

std::unique_ptr<Strategy> calG_strategy(const CalGSpec& spec) {
  spec.validate();
  Obligation ob;
  ob.opening = calG_a();
  for (int i = 2; i <= spec.k; ++i) ob.sets.push_back(VertexSet::of({calG_b(i), calG_c(i)}));
  return obligation_strategy("calG-pairs", std::move(ob));
}

std::string to_string(Theorem1Kind k) {
  switch (k) {
    case Theorem1Kind::Consistent: return "consistent";
    case Theorem1Kind::CounterexampleCandidate: return "counterexample-candidate";
    case Theorem1Kind::Untestable: return "untestable(containment)";
  }
  return "?";
}

Theorem1Verdict theorem1_check(const Graph& g, const std::optional<CalGSpec>& embedded, const SolveConfig& cfg) {
  Theorem1Verdict v;
  v.gamma = domination_number(g);
  if (v.gamma < 2) {
    v.kind = Theorem1Kind::Untestable;
    v.reason = "γ = " + std::to_string(v.gamma) + " is outside the k >= 2 scope";
    return v;
  }
  v.gamma_mb = gamma_mb(g, cfg);
  const bool equal = *v.gamma_mb == GameValue::dominator_in(v.gamma);
  v.structure = is_calG_structure(g).ok;

  bool contains = v.structure;
  if (!contains && embedded) {
    const Graph h = calG_graph(*embedded);
    if (h.order() == g.order() && embedded->k == v.gamma && is_calG_structure(h).ok) {
      contains = true;
      for (auto [x, y] : h.edges()) contains = contains && g.adjacent(x, y);
    }
  }
  if (v.gamma == 2) {
    v.vertex_in_two_gamma_sets = has_vertex_in_two_gamma_sets(g);
    if (*v.vertex_in_two_gamma_sets != equal) {
      v.kind = Theorem1Kind::CounterexampleCandidate;
      v.reason = "γ_MB = γ disagrees with the two-γ-sets criterion";
      return v;
    }
  }
  if (contains) {
    v.kind = equal ? Theorem1Kind::Consistent : Theorem1Kind::CounterexampleCandidate;
    v.reason = equal ? "contains the structure and γ_MB = γ" : "contains the structure but γ_MB != γ";
    return v;
  }
  if (v.gamma == 2) {
    v.kind = Theorem1Kind::Consistent;
    v.reason = "agrees with the two-γ-sets criterion";
    return v;
  }
  v.kind = Theorem1Kind::Untestable;
  v.reason = equal ? "γ_MB = γ but containment of the structure is not tested"
                   : "γ_MB != γ; absence of the structure as a subgraph is not tested";
  return v;
}

Graph sample_connected_graph(std::uint64_t seed, int min_n, int max_n, int gamma) {
  if (min_n < 1 || max_n < min_n || max_n > kExhaustiveLimit) throw std::invalid_argument("bad sample size range");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
    const double p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n));
    for (int v = 1; v < n; ++v) {
      const int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
      edges.emplace_back(parent, v);
      has[parent][v] = true;
    }
    std::bernoulli_distribution coin(p);
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (!has[x][y] && coin(rng)) edges.emplace_back(x, y);
    Graph g(n, edges);
    if (domination_number(g) == gamma) return g;
  }
  throw std::runtime_error("no graph with the requested domination number after 10000 draws");
}

std::vector<std::uint64_t> read_seed_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read seed list " + path);
  std::vector<std::uint64_t> out;
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    std::stringstream ls(line);
    std::uint64_t s;
    while (ls >> s) out.push_back(s);
  }
  return out;
}

std::vector<CorpusRow> k2_corpus_check(const std::vector<std::uint64_t>& seeds, int workers) {
  std::vector<CorpusRow> rows(seeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < seeds.size();) {
      CorpusRow& r = rows[i];
      r.seed = seeds[i];
      r.graph = sample_connected_graph(seeds[i], 4, 8, 2);
      r.gamma_mb = gamma_mb(r.graph);
      r.two_sets = has_vertex_in_two_gamma_sets(r.graph);
      r.agree = (r.gamma_mb == GameValue::dominator_in(2)) == r.two_sets;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(workers, 1); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace mbd
