#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbd {

/// Raised when an exhaustive routine is asked to work beyond its size limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of vertices of one graph, one bit per vertex index.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr VertexSet single(int v) { return VertexSet(std::uint64_t{1} << v); }
  static constexpr VertexSet first_n(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static VertexSet of(std::initializer_list<int> vs) {
    VertexSet s;
    for (int v : vs) s.insert(v);
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool contains(int v) const { return (mask_ >> v) & 1U; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr int lowest() const { return mask_ ? std::countr_zero(mask_) : -1; }

  constexpr void insert(int v) { mask_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { mask_ &= ~(std::uint64_t{1} << v); }

  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(mask_ | o.mask_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(mask_ & o.mask_); }
  constexpr VertexSet operator-(VertexSet o) const { return VertexSet(mask_ & ~o.mask_); }
  constexpr VertexSet& operator|=(VertexSet o) { mask_ |= o.mask_; return *this; }
  constexpr VertexSet& operator&=(VertexSet o) { mask_ &= o.mask_; return *this; }
  constexpr bool operator==(const VertexSet&) const = default;
  constexpr auto operator<=>(const VertexSet&) const = default;

  constexpr bool subset_of(VertexSet o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (mask_ & o.mask_) != 0; }

  std::vector<int> to_vector() const;

  class iterator {
   public:
    explicit constexpr iterator(std::uint64_t m) : m_(m) {}
    constexpr int operator*() const { return std::countr_zero(m_); }
    constexpr iterator& operator++() { m_ &= m_ - 1; return *this; }
    constexpr bool operator!=(const iterator& o) const { return m_ != o.m_; }
   private:
    std::uint64_t m_;
  };
  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint64_t mask_ = 0;
};

/// Simple undirected graph on at most 64 vertices. Immutable once built.
/// Labels are display metadata only; every algorithm works on indices.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;
  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or n outside [1, 64].
  Graph(int n, const std::vector<std::pair<int, int>>& edges,
        std::vector<std::string> labels = {});

  int order() const { return n_; }
  int size() const;
  VertexSet vertices() const { return VertexSet::first_n(n_); }
  VertexSet neighbors(int v) const { return adj_[v]; }
  VertexSet closed_neighborhood(int v) const { return adj_[v] | VertexSet::single(v); }
  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  int degree(int v) const { return adj_[v].size(); }
  std::vector<int> degree_sequence() const;
  /// Edges with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int v) const;
  /// Index of the vertex carrying `label`, if any.
  std::optional<int> find_label(const std::string& label) const;

  /// Union of closed neighborhoods of `set`.
  VertexSet dominated_by(VertexSet set) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<std::string> labels_;
};

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_empty(int n);
/// Vertex (g, h) gets index g * order(H) + h.
Graph cartesian_product(const Graph& g, const Graph& h);

/// The 2 x n grid with vertices u_1..u_n (top row) and v_1..v_n (bottom row).
class Grid2 {
 public:
  explicit Grid2(int columns);
  int columns() const { return n_; }
  const Graph& graph() const { return graph_; }
  /// 1-based column lookups, matching the u_i / v_i naming.
  int u(int i) const;
  int v(int i) const;
  /// Column (1-based) and row (0 = u, 1 = v) of a vertex index.
  int column_of(int vertex) const { return vertex % n_ + 1; }
  int row_of(int vertex) const { return vertex / n_; }

 private:
  int n_;
  Graph graph_;
};

bool is_dominating_set(const Graph& g, VertexSet t);

/// Exhaustive routines refuse graphs above this order.
inline constexpr int kExhaustiveLimit = 24;

int domination_number(const Graph& g);
/// All minimum dominating sets, sorted by mask.
std::vector<VertexSet> enumerate_gamma_sets(const Graph& g);

}  // namespace mbd
