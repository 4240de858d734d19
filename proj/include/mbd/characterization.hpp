#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mbd/graph.hpp"
#include "mbd/strategy.hpp"

namespace mbd {

/// How the pair {b_i, c_i} is tied into the rest of the graph.
///   Edge:      b_i c_i.
///   BothToA:   b_i a and c_i a.
///   BToA:      b_i a, and c_i joined to both b_j and c_j.
///   CToA:      c_i a, and b_i joined to both b_j and c_j.
///   Cross:     b_i joined to b_j and c_j, c_i joined to b_l and c_l (l may equal j).
enum class CalGCase { Edge, BothToA, BToA, CToA, Cross };

struct CalGChoice {
  CalGCase kind = CalGCase::Edge;
  int j = 0;
  int l = 0;
};

struct CalGSpec {
  int k = 2;
  int a1_size = 1;
  /// |A_i| for i = 2..k.
  std::vector<int> ai_sizes;
  /// One entry per i = 2..k.
  std::vector<CalGChoice> cases;

  /// Range checks only; throws std::invalid_argument.
  void validate() const;
  std::string to_string() const;
};

/// Parses "k=3,a1=1,ai=1,1,cases=1,2". Case tokens: 1, 2, 3b:j, 3c:j, 4:j:l
/// ("3" and "4" alone pick the next pair index cyclically).
CalGSpec parse_calG_spec(const std::string& text);

/// Vertex layout: a = 0, b_i = 2i - 3, c_i = 2i - 2, then A_1, A_2, ..., A_k.
int calG_a();
int calG_b(int i);
int calG_c(int i);

/// k in {2,3,4}, every |A_1| and |A_i| in {1,2}, and every case choice per
/// pair (partners: the next pair cyclically, plus a second partner for Cross at k = 4).
std::vector<CalGSpec> calG_spec_grid();

/// The raw construction, no structure check.
Graph calG_graph(const CalGSpec& spec);

struct StructureCheck {
  bool ok = false;
  /// First violated condition when !ok.
  std::string diagnosis;
  int k = 0;
  int a = -1;
  /// b_i, c_i for i = 2..k (index 0 holds i = 2).
  std::vector<std::pair<int, int>> pairs;
  /// A_1..A_k.
  std::vector<VertexSet> attachments;
};

/// Recovers a, the pairs and the A-partition from the γ-sets of `g` and checks
/// every condition of the construction.
StructureCheck is_calG_structure(const Graph& g);

/// Throws std::invalid_argument (with the diagnosis) if calG_graph(spec) fails the check.
Graph build_calG(const CalGSpec& spec);

int gamma_set_count(const Graph& g);
/// Requires γ(g) = 2, else std::domain_error.
bool has_vertex_in_two_gamma_sets(const Graph& g);

struct CalGLemmaRow {
  CalGSpec spec;
  /// The raw construction passes the structure check.
  bool valid = false;
  std::string rejection;
  int gamma_sets = 0;
  /// 2^{k-1} γ-sets, a in all, b_i and c_i each in 2^{k-2} and never together.
  /// Only evaluated when valid.
  bool counts_ok = false;
  GameValue gamma_mb;
  bool gamma_mb_ok = false;
};

/// γ-set lemma counts and γ_MB = k for one spec's raw graph.
CalGLemmaRow calG_lemma_check(const CalGSpec& spec, const SolveConfig& cfg = {});

/// Dominator claims a, then answers b_i with c_i and c_i with b_i.
std::unique_ptr<Strategy> calG_strategy(const CalGSpec& spec);

enum class Theorem1Kind { Consistent, CounterexampleCandidate, Untestable };
std::string to_string(Theorem1Kind k);

struct Theorem1Verdict {
  Theorem1Kind kind = Theorem1Kind::Untestable;
  int gamma = 0;
  std::optional<GameValue> gamma_mb;
  bool structure = false;
  /// Set when γ = 2.
  std::optional<bool> vertex_in_two_gamma_sets;
  std::string reason;
};

/// Compares γ_MB(G) = γ(G) with the structural evidence available: the
/// structure check on G itself, an optional spec whose raw construction is a
/// spanning subgraph of G, and for γ = 2 the two-γ-sets criterion.
Theorem1Verdict theorem1_check(const Graph& g, const std::optional<CalGSpec>& embedded = std::nullopt,
                               const SolveConfig& cfg = {});

/// Connected graph from one seed: n in [min_n, max_n], random spanning tree
/// plus extra edges, resampled (same stream) until γ = gamma.
Graph sample_connected_graph(std::uint64_t seed, int min_n, int max_n, int gamma);

/// One seed per non-empty line; '#' starts a comment.
std::vector<std::uint64_t> read_seed_list(const std::string& path);

struct CorpusRow {
  std::uint64_t seed = 0;
  Graph graph;
  GameValue gamma_mb;
  bool two_sets = false;
  bool agree = false;
};

/// γ_MB = 2 versus the two-γ-sets criterion over sampled γ = 2 graphs on at most 8 vertices.
std::vector<CorpusRow> k2_corpus_check(const std::vector<std::uint64_t>& seeds, int workers = 1);

}  // namespace mbd
