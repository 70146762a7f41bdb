#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <utility>
#include <vector>

namespace sminlab {

/// Unordered pair stored with first < second. Vertices are 0-based in the
/// API and 1-based in edge-list text.
using Edge = std::pair<std::size_t, std::size_t>;
using VertexSet = std::vector<std::size_t>;  // sorted, no duplicates

/// Simple undirected graph on {0, ..., n-1}.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : n_(n) {}
  /// Throws InvalidInput on self-loops, duplicates or out-of-range vertices.
  Graph(std::size_t n, std::vector<Edge> edges);

  void add_edge(std::size_t j, std::size_t k);
  bool has_edge(std::size_t j, std::size_t k) const;
  std::size_t n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(std::size_t v) const;
  bool isolated(std::size_t v) const { return degree(v) == 0; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;  // sorted
};

/// Edges of `edges` with no endpoint in `removed`.
std::vector<Edge> edges_avoiding(const std::vector<Edge>& edges, const VertexSet& removed);

/// "j k" per line, 1-indexed. Blank lines and '#' comments are skipped.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is, std::size_t n);

enum class DecompositionMode { exact, greedy };

std::string_view to_string(DecompositionMode mode);
DecompositionMode decomposition_mode_from_string(std::string_view name);

/// Largest vertex count accepted by exact mode (exhaustive search).
inline constexpr std::size_t kExactModeMaxVertices = 16;

/// Nested vertex sets S_0 = {} c S_1 c ... and residual edge sets
/// E_0 = E, E_k = edges not incident to S_k, where each step at least
/// halves the residual: |E_k| <= |E_{k-1}|/2.
///
/// Exact mode picks a minimum-cardinality admissible superset at every
/// step, ties going to the lexicographically smallest sorted vertex list.
/// Greedy mode adds maximum-degree residual vertices (smallest index on
/// ties) until the halving condition holds. Once the residual is empty the
/// sequences continue with S_k = S_{k-1} and E_k = {}.
struct GreedyDecomposition {
  std::size_t vertex = 0;
  DecompositionMode mode = DecompositionMode::exact;
  std::vector<VertexSet> S;          // S[0..depth]
  std::vector<std::vector<Edge>> E;  // E[0..depth]

  std::size_t depth() const { return S.empty() ? 0 : S.size() - 1; }
  std::size_t increment(std::size_t k) const { return S[k].size() - S[k - 1].size(); }
};

/// Throws InvalidInput if `i` is not isolated or depth == 0, and
/// UnsupportedSize for exact mode on more than 16 vertices.
GreedyDecomposition greedy_decomposition(const Graph& g, std::size_t i, std::size_t depth,
                                         DecompositionMode mode = DecompositionMode::exact);

/// min(max(2^{-L/2} sqrt|E|, |S_L|), sqrt|E|).
double vertex_value(const Graph& g, std::size_t i, std::size_t L,
                    DecompositionMode mode = DecompositionMode::exact);
double vertex_value(const GreedyDecomposition& d, std::size_t L);

/// E_{k0-1} where k0 in [1, 4L] is the first step with the largest
/// increment |S_k \ S_{k-1}|.
std::vector<Edge> rho_set(const Graph& g, std::size_t i, std::size_t L,
                          DecompositionMode mode = DecompositionMode::exact);

/// 2^l |E_k| <= |E_{k-l}| <= 2^l |E_k| + 2^{l+1} n on an exact decomposition.
bool check_edge_interval(const Graph& g, std::size_t i, std::size_t k, std::size_t l);

/// Smallest |I| such that at least half of `edges` have an endpoint in I.
/// Exhaustive; n <= 16.
std::size_t min_half_cover(const std::vector<Edge>& edges, std::size_t n);

/// Outcome of the two-graph dichotomy for a vertex isolated in G and G~.
struct DichotomyReport {
  double value = 0.0;              // vl_{G,L}(i)
  std::size_t rho_size = 0;        // |rho_{G~,L}(i)|
  std::size_t min_cover = 0;       // min half cover of rho
  bool large_cover = false;        // min_cover >= value / (4 L^2)
  bool small_value = false;        // value <= 4 * 2^{-L/2} n
  bool holds() const { return large_cover || small_value; }
};

/// Throws PreconditionError when |E(G) \ E(G~)| > 16^{-L} n^2.
DichotomyReport two_graphs_dichotomy(const Graph& g, const Graph& g_tilde, std::size_t i, std::size_t L);

}  // namespace sminlab
