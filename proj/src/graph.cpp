#include "mbd/graph.hpp"

#include <algorithm>

namespace mbd {

std::vector<int> VertexSet::to_vector() const {
  std::vector<int> out;
  out.reserve(size());
  for (int v : *this) out.push_back(v);
  return out;
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, std::vector<std::string> labels)
    : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))), labels_(std::move(labels)) {
  if (n < 1 || n > kMaxVertices) {
    throw std::invalid_argument("graph order must be in [1, 64], got " + std::to_string(n));
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n) {
    throw std::invalid_argument("label count does not match vertex count");
  }
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
}

int Graph::size() const {
  int twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d;
  d.reserve(n_);
  for (int v = 0; v < n_; ++v) d.push_back(degree(v));
  return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string Graph::label(int v) const {
  if (labels_.empty()) return std::to_string(v);
  return labels_[v];
}

std::optional<int> Graph::find_label(const std::string& label) const {
  for (int v = 0; v < static_cast<int>(labels_.size()); ++v) {
    if (labels_[v] == label) return v;
  }
  return std::nullopt;
}

VertexSet Graph::dominated_by(VertexSet set) const {
  VertexSet out = set;
  for (int v : set) out |= adj_[v];
  return out;
}

Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs at least one vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three vertices");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph make_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs at least one vertex");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph make_empty(int n) { return Graph(n, {}); }

Graph cartesian_product(const Graph& g, const Graph& h) {
  const int ng = g.order();
  const int nh = h.order();
  if (static_cast<long>(ng) * nh > Graph::kMaxVertices) {
    throw LimitError("cartesian product exceeds the 64-vertex capacity");
  }
  auto idx = [nh](int a, int b) { return a * nh + b; };
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < ng; ++a) {
    for (auto [b1, b2] : h.edges()) e.emplace_back(idx(a, b1), idx(a, b2));
  }
  for (auto [a1, a2] : g.edges()) {
    for (int b = 0; b < nh; ++b) e.emplace_back(idx(a1, b), idx(a2, b));
  }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(ng * nh));
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b) labels.push_back("(" + g.label(a) + "," + h.label(b) + ")");
  return Graph(ng * nh, e, std::move(labels));
}

namespace {

Graph build_grid2(int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one column");
  if (2 * n > Graph::kMaxVertices) throw LimitError("2 x n grid exceeds the 64-vertex capacity");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) {
    e.emplace_back(i, i + 1);
    e.emplace_back(n + i, n + i + 1);
  }
  for (int i = 0; i < n; ++i) e.emplace_back(i, n + i);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("u" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("v" + std::to_string(i));
  return Graph(2 * n, e, std::move(labels));
}

}  // namespace

Grid2::Grid2(int columns) : n_(columns), graph_(build_grid2(columns)) {}

int Grid2::u(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("grid column out of range");
  return i - 1;
}

int Grid2::v(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("grid column out of range");
  return n_ + i - 1;
}

bool is_dominating_set(const Graph& g, VertexSet t) {
  return g.dominated_by(t) == g.vertices();
}

namespace {

void check_exhaustive(const Graph& g) {
  if (g.order() > kExhaustiveLimit) {
    throw LimitError("graph too large for exhaustive domination search (" +
                     std::to_string(g.order()) + " > " + std::to_string(kExhaustiveLimit) + ")");
  }
}

// Calls fn(mask) for every k-subset of n bits, in increasing mask order.
template <typename Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
  if (k == 0) {
    fn(std::uint64_t{0});
    return;
  }
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (s < limit) {
    if (!fn(s)) return;
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

}  // namespace

int domination_number(const Graph& g) {
  check_exhaustive(g);
  for (int k = 1; k <= g.order(); ++k) {
    bool found = false;
    for_each_k_subset(g.order(), k, [&](std::uint64_t m) {
      if (is_dominating_set(g, VertexSet(m))) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return k;
  }
  return g.order();
}

std::vector<VertexSet> enumerate_gamma_sets(const Graph& g) {
  const int k = domination_number(g);
  std::vector<VertexSet> out;
  for_each_k_subset(g.order(), k, [&](std::uint64_t m) {
    if (is_dominating_set(g, VertexSet(m))) out.emplace_back(m);
    return true;
  });
  return out;
}

}  // namespace mbd
