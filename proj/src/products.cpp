#include "mbd/products.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mbd {

namespace {

constexpr int kNone = std::numeric_limits<int>::max();

int claims_or_none(GameValue v) { return v.is_staller_win() ? kNone : v.claims(); }

int add(int a, int b) { return a == kNone || b == kNone ? kNone : a + b; }
int times(int k, int a) { return a == kNone ? kNone : k * a; }

std::optional<int> finite(int v) { return v == kNone ? std::nullopt : std::optional<int>(v); }

// Generators given for one board mean nothing on another.
SolveConfig board_config(const ProductOptions& opt) {
  SolveConfig cfg = opt.solve;
  cfg.automorphisms.clear();
  return cfg;
}

void finish(BoundReport& r, const Graph& g, const Graph& h, const ProductOptions& opt, Player first) {
  if (g.order() * h.order() <= std::min(opt.exact_limit, Graph::kMaxVertices)) {
    const Graph product = cartesian_product(g, h);
    const SolveReport rep = solve(new_position(product, {}, {}, first), board_config(opt));
    if (!rep.exhausted) r.exact = rep.value;
  }
  if (r.exact && r.bound && r.exact->is_dominator_win()) r.slack = *r.bound - r.exact->claims();
}

struct Values {
  GameValue d;
  GameValue s;
  bool premise() const { return d.is_dominator_win() && s.is_dominator_win(); }
};

Values values_of(const Graph& g, const ProductOptions& opt) {
  return {gamma_mb(g, board_config(opt)), gamma_mb_prime(g, board_config(opt))};
}

}  // namespace

bool BoundReport::consistent() const {
  if (!premise || !bound || !exact) return true;
  return exact->is_dominator_win() && exact->claims() <= *bound;
}

std::pair<BoundReport, BoundReport> thm3_bounds(const Graph& g, const ProductOptions& opt) {
  const int n = g.order();
  const Graph h = make_complete(2);
  const Values v = values_of(g, opt);
  BoundReport d, s;
  d.formula = s.formula = "thm3";
  d.game = "D";
  s.game = "S";
  for (BoundReport* r : {&d, &s}) {
    r->inputs = {{"gamma_MB(G)", v.d, "exact-solve"}, {"gamma'_MB(G)", v.s, "exact-solve"}};
    r->premise = true;  // the pairing bound n needs no hypothesis
  }
  if (v.premise()) {
    d.bound = std::min(add(v.d.claims(), v.s.claims()), n);
    s.bound = std::min(times(2, v.s.claims()), n);
  } else {
    d.bound = s.bound = n;
    d.note = s.note = "Dominator does not win on G as both first and second player; pairing bound only";
  }
  finish(d, g, h, opt, Player::Dominator);
  finish(s, g, h, opt, Player::Staller);
  return {d, s};
}

std::pair<BoundReport, BoundReport> thm4_bounds(const Graph& g, const Graph& h, const ProductOptions& opt) {
  const int n = g.order();
  const int m = h.order();
  const Values vg = values_of(g, opt);
  const Values vh = values_of(h, opt);
  BoundReport d, s;
  d.formula = s.formula = "thm4";
  d.game = "D";
  s.game = "S";
  for (BoundReport* r : {&d, &s}) {
    r->inputs = {{"gamma_MB(G)", vg.d, "exact-solve"},
                 {"gamma'_MB(G)", vg.s, "exact-solve"},
                 {"gamma_MB(H)", vh.d, "exact-solve"},
                 {"gamma'_MB(H)", vh.s, "exact-solve"}};
    r->premise = vg.premise() || vh.premise();
  }
  // A term is usable only when its own graph carries both winning strategies.
  auto term = [](const Values& v, int value) { return v.premise() ? value : kNone; };
  const int d_g = term(vg, add(claims_or_none(vg.d), times(m - 1, claims_or_none(vg.s))));
  const int d_h = term(vh, add(claims_or_none(vh.d), times(n - 1, claims_or_none(vh.s))));
  const int s_g = term(vg, times(m, claims_or_none(vg.s)));
  const int s_h = term(vh, times(n, claims_or_none(vh.s)));
  d.bound = finite(std::min(d_g, d_h));
  s.bound = finite(std::min(s_g, s_h));
  const int printed = std::min(term(vg, times(m, claims_or_none(vg.d))), s_h);
  s.note = "with gamma_MB(G) in the first term: " + (printed == kNone ? std::string("none") : std::to_string(printed));
  if (!d.premise) {
    // Report the formulas anyway, labelled conditional.
    const int cd = std::min(add(claims_or_none(vg.d), times(m - 1, claims_or_none(vg.s))),
                            add(claims_or_none(vh.d), times(n - 1, claims_or_none(vh.s))));
    const int cs = std::min(times(m, claims_or_none(vg.s)), times(n, claims_or_none(vh.s)));
    d.bound = finite(cd);
    s.bound = finite(cs);
    d.note = "conditional: neither graph has Dominator winning as first and second player";
    s.note = d.note + "; " + s.note;
  }
  finish(d, g, h, opt, Player::Dominator);
  finish(s, g, h, opt, Player::Staller);
  return {d, s};
}

BoundReport corollary_bounds(int m, int n, const ProductOptions& opt) {
  if (m < 3 || n < m) throw std::invalid_argument("corollary bounds need 3 <= m <= n");
  if (n > Graph::kMaxVertices / 2) throw std::invalid_argument("n exceeds the 2 x n grid capacity");
  BoundReport r;
  r.game = "D";

  // P2□P_k values: proved closed forms from k = 13 on, exact solves below.
  auto grid_values = [&](int k) {
    if (k >= 13) {
      r.inputs.push_back({"gamma_MB(P2xP" + std::to_string(k) + ")", GameValue::dominator_in(k - 2), "proved-constant"});
      r.inputs.push_back({"gamma'_MB(P2xP" + std::to_string(k) + ")", GameValue::dominator_in(k), "proved-constant"});
    } else {
      const Graph grid = Grid2(k).graph();
      SolveConfig cfg = opt.solve;
      cfg.automorphisms = grid_symmetries(Grid2(k), {});
      cfg.use_symmetry = true;
      Solver solver(cfg);
      r.inputs.push_back({"gamma_MB(P2xP" + std::to_string(k) + ")",
                          solver.value(new_position(grid, {}, {}, Player::Dominator)), "exact-solve"});
      r.inputs.push_back({"gamma'_MB(P2xP" + std::to_string(k) + ")",
                          solver.value(new_position(grid, {}, {}, Player::Staller)), "exact-solve"});
    }
    return std::make_pair(claims_or_none(r.inputs[r.inputs.size() - 2].value), claims_or_none(r.inputs.back().value));
  };

  int bound = kNone;
  if (m % 2 == 0) {
    r.formula = "corollary-i";
    const auto [d, s] = grid_values(n);
    bound = add(d, times(m / 2 - 1, s));
  } else if (n % 2 == 1) {
    r.formula = "corollary-ii";
    const GameValue path = gamma_mb(make_path(n), board_config(opt));
    r.inputs.push_back({"gamma_MB(P" + std::to_string(n) + ")", path, "exact-solve"});
    const auto [d, s] = grid_values(n);
    (void)d;
    bound = add(claims_or_none(path), times(m / 2, s));
  } else {
    r.formula = "corollary-iii";
    const auto [d, s] = grid_values(m);
    bound = add(d, times(n / 2 - 1, s));
  }
  r.bound = finite(bound);
  if (!r.bound) r.note = "a term is a Staller win, so the formula gives no finite bound";
  finish(r, make_path(m), make_path(n), opt, Player::Dominator);
  return r;
}

std::vector<ProductCase> product_corpus_check(const ProductOptions& opt) {
  const std::vector<std::pair<std::string, Graph>> base = {
      {"P2", make_path(2)}, {"P3", make_path(3)}, {"P4", make_path(4)}, {"C4", make_cycle(4)}, {"K3", make_complete(3)}};
  std::vector<ProductCase> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i; j < base.size(); ++j) {
      const auto& [gn, g] = base[j];
      const auto& [hn, h] = base[i];
      if (g.order() * h.order() > opt.exact_limit) continue;
      ProductCase c{gn, hn, hn == "P2" ? thm3_bounds(g, opt) : thm4_bounds(g, h, opt)};
      out.push_back(std::move(c));
    }
  }
  return out;
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
  out << "formula,game,premise,bound,exact,slack\n";
  for (const BoundReport& r : reports) {
    out << r.formula << ',' << r.game << ',' << (r.premise ? "yes" : "no") << ',';
    if (r.bound) out << *r.bound;
    out << ',';
    if (r.exact) out << (r.exact->is_staller_win() ? std::string("StallerWin") : std::to_string(r.exact->claims()));
    out << ',';
    if (r.slack) out << *r.slack;
    out << '\n';
  }
}

}  // namespace mbd
