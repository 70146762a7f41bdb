#include "sminlab/graph.hpp"

#include "sminlab/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sminlab {

namespace {

Edge normalized(std::size_t j, std::size_t k) { return j < k ? Edge{j, k} : Edge{k, j}; }

void check_vertex(const Graph& g, std::size_t v, const char* what) {
  if (v >= g.n()) throw InvalidInput(std::string(what) + ": vertex " + std::to_string(v) + " out of range");
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (const auto& [j, k] : edges) add_edge(j, k);
}

void Graph::add_edge(std::size_t j, std::size_t k) {
  if (j >= n_ || k >= n_) throw InvalidInput("edge endpoint out of range");
  if (j == k) throw InvalidInput("self-loop at vertex " + std::to_string(j));
  const Edge e = normalized(j, k);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) {
    throw InvalidInput("duplicate edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
  }
  edges_.insert(it, e);
}

bool Graph::has_edge(std::size_t j, std::size_t k) const {
  if (j == k) return false;
  return std::binary_search(edges_.begin(), edges_.end(), normalized(j, k));
}

std::size_t Graph::degree(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.first == v || e.second == v; }));
}

std::vector<Edge> edges_avoiding(const std::vector<Edge>& edges, const VertexSet& removed) {
  std::vector<Edge> out;
  for (const auto& e : edges) {
    if (!std::binary_search(removed.begin(), removed.end(), e.first) &&
        !std::binary_search(removed.begin(), removed.end(), e.second)) {
      out.push_back(e);
    }
  }
  return out;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  for (const auto& [j, k] : g.edges()) os << (j + 1) << ' ' << (k + 1) << '\n';
}

Graph read_edge_list(std::istream& is, std::size_t n) {
  Graph g(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long j = 0, k = 0;
    if (!(ls >> j)) continue;
    std::string rest;
    if (!(ls >> k) || (ls >> rest) || j < 1 || k < 1) {
      throw InvalidInput("edge list line " + std::to_string(line_no) + ": expected 'j k' with 1-indexed vertices");
    }
    g.add_edge(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1));
  }
  return g;
}

std::string_view to_string(DecompositionMode mode) {
  return mode == DecompositionMode::exact ? "exact" : "greedy";
}

DecompositionMode decomposition_mode_from_string(std::string_view name) {
  if (name == "exact") return DecompositionMode::exact;
  if (name == "greedy") return DecompositionMode::greedy;
  throw InvalidInput("unknown decomposition mode '" + std::string(name) + "'");
}

namespace {

using Mask = std::uint32_t;

std::size_t count_avoiding(const std::vector<Mask>& edge_masks, Mask removed) {
  std::size_t c = 0;
  for (Mask em : edge_masks) c += (em & removed) == 0 ? 1 : 0;
  return c;
}

// Minimum-cardinality T, disjoint from `prev`, leaving at most half of the
// residual edges; lexicographically first among the minimum ones.
VertexSet exact_step(const VertexSet& prev, const std::vector<Edge>& residual) {
  std::vector<Mask> edge_masks;
  edge_masks.reserve(residual.size());
  Mask touched = 0;
  for (const auto& [j, k] : residual) {
    const Mask m = (Mask{1} << j) | (Mask{1} << k);
    edge_masks.push_back(m);
    touched |= m;
  }
  // A minimum set never contains a vertex without residual edges, and
  // restricting to touched vertices preserves the lexicographic order.
  std::vector<std::size_t> candidates;
  for (std::size_t v = 0; v < 32; ++v) {
    if (touched & (Mask{1} << v)) candidates.push_back(v);
  }
  const std::size_t budget = residual.size();  // keep 2|E_k| <= |E_{k-1}|

  const std::size_t m = candidates.size();
  for (std::size_t size = 0; size <= m; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t t = 0; t < size; ++t) idx[t] = t;
    while (true) {
      Mask chosen = 0;
      for (auto t : idx) chosen |= Mask{1} << candidates[t];
      if (2 * count_avoiding(edge_masks, chosen) <= budget) {
        VertexSet s = prev;
        for (auto t : idx) s.push_back(candidates[t]);
        std::sort(s.begin(), s.end());
        return s;
      }
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == m - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t t = pos; t < size; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  // Removing every touched vertex empties the residual, so this is unreachable.
  throw std::logic_error("exact_step: no admissible set");
}

VertexSet greedy_step(std::size_t n, const VertexSet& prev, const std::vector<Edge>& residual) {
  VertexSet s = prev;
  std::vector<Edge> left = residual;
  while (2 * left.size() > residual.size()) {
    std::vector<std::size_t> deg(n, 0);
    for (const auto& [j, k] : left) {
      ++deg[j];
      ++deg[k];
    }
    const auto best = static_cast<std::size_t>(std::max_element(deg.begin(), deg.end()) - deg.begin());
    s.insert(std::lower_bound(s.begin(), s.end(), best), best);
    const VertexSet single{best};
    left = edges_avoiding(left, single);
  }
  return s;
}

}  // namespace

GreedyDecomposition greedy_decomposition(const Graph& g, std::size_t i, std::size_t depth, DecompositionMode mode) {
  check_vertex(g, i, "greedy_decomposition");
  if (!g.isolated(i)) throw InvalidInput("greedy_decomposition: vertex " + std::to_string(i) + " is not isolated");
  if (depth == 0) throw InvalidInput("greedy_decomposition: depth must be positive");
  if (mode == DecompositionMode::exact && g.n() > kExactModeMaxVertices) {
    throw UnsupportedSize("exact decomposition supports at most 16 vertices, got " + std::to_string(g.n()));
  }

  GreedyDecomposition d;
  d.vertex = i;
  d.mode = mode;
  d.S.reserve(depth + 1);
  d.E.reserve(depth + 1);
  d.S.emplace_back();
  d.E.push_back(g.edges());
  for (std::size_t k = 1; k <= depth; ++k) {
    const VertexSet prev = d.S.back();
    const std::vector<Edge> residual = d.E.back();
    if (residual.empty()) {
      d.S.push_back(prev);
      d.E.emplace_back();
      continue;
    }
    VertexSet next = mode == DecompositionMode::exact ? exact_step(prev, residual) : greedy_step(g.n(), prev, residual);
    auto next_edges = edges_avoiding(residual, next);
    d.S.push_back(std::move(next));
    d.E.push_back(std::move(next_edges));
  }
  return d;
}

double vertex_value(const GreedyDecomposition& d, std::size_t L) {
  if (L == 0 || L > d.depth()) throw InvalidInput("vertex_value: decomposition too shallow");
  const double root_edges = std::sqrt(static_cast<double>(d.E[0].size()));
  const double damped = std::pow(2.0, -static_cast<double>(L) / 2.0) * root_edges;
  return std::min(std::max(damped, static_cast<double>(d.S[L].size())), root_edges);
}

double vertex_value(const Graph& g, std::size_t i, std::size_t L, DecompositionMode mode) {
  return vertex_value(greedy_decomposition(g, i, L, mode), L);
}

std::vector<Edge> rho_set(const Graph& g, std::size_t i, std::size_t L, DecompositionMode mode) {
  if (L == 0) throw InvalidInput("rho_set: L must be positive");
  const auto d = greedy_decomposition(g, i, 4 * L, mode);
  std::size_t best_k = 1;
  for (std::size_t k = 2; k <= 4 * L; ++k) {
    if (d.increment(k) > d.increment(best_k)) best_k = k;
  }
  return d.E[best_k - 1];
}

bool check_edge_interval(const Graph& g, std::size_t i, std::size_t k, std::size_t l) {
  if (l == 0 || l > k) throw InvalidInput("check_edge_interval: need 0 < l <= k");
  const auto d = greedy_decomposition(g, i, k, DecompositionMode::exact);
  const double ek = static_cast<double>(d.E[k].size());
  const double ekl = static_cast<double>(d.E[k - l].size());
  const double scale = std::ldexp(1.0, static_cast<int>(l));
  return scale * ek <= ekl && ekl <= scale * ek + 2.0 * scale * static_cast<double>(g.n());
}

std::size_t min_half_cover(const std::vector<Edge>& edges, std::size_t n) {
  if (n > kExactModeMaxVertices) throw UnsupportedSize("min_half_cover supports at most 16 vertices");
  if (edges.empty()) return 0;
  std::vector<Mask> edge_masks;
  for (const auto& [j, k] : edges) {
    if (j >= n || k >= n) throw InvalidInput("min_half_cover: edge endpoint out of range");
    edge_masks.push_back((Mask{1} << j) | (Mask{1} << k));
  }
  const std::size_t total = edges.size();
  std::size_t best = n;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    const auto size = static_cast<std::size_t>(std::popcount(m));
    if (size >= best) continue;
    const std::size_t covered = total - count_avoiding(edge_masks, m);
    if (2 * covered >= total) best = size;
  }
  return best;
}

DichotomyReport two_graphs_dichotomy(const Graph& g, const Graph& g_tilde, std::size_t i, std::size_t L) {
  if (g.n() != g_tilde.n()) throw InvalidInput("two_graphs_dichotomy: graphs on different vertex sets");
  if (L == 0) throw InvalidInput("two_graphs_dichotomy: L must be positive");
  check_vertex(g, i, "two_graphs_dichotomy");
  if (!g.isolated(i) || !g_tilde.isolated(i)) {
    throw PreconditionError("two_graphs_dichotomy: vertex must be isolated in both graphs");
  }
  std::size_t missing = 0;
  for (const auto& e : g.edges()) {
    if (!g_tilde.has_edge(e.first, e.second)) ++missing;
  }
  const double n = static_cast<double>(g.n());
  const double allowance = n * n * std::pow(16.0, -static_cast<double>(L));
  if (static_cast<double>(missing) > allowance) {
    throw PreconditionError("two_graphs_dichotomy: |E \\ E~| = " + std::to_string(missing) +
                            " exceeds 16^-L n^2");
  }

  DichotomyReport r;
  r.value = vertex_value(g, i, L, DecompositionMode::exact);
  const auto rho = rho_set(g_tilde, i, L, DecompositionMode::exact);
  r.rho_size = rho.size();
  r.min_cover = min_half_cover(rho, g.n());
  const double l = static_cast<double>(L);
  r.large_cover = static_cast<double>(r.min_cover) >= r.value / (4.0 * l * l);
  r.small_value = r.value <= 4.0 * std::pow(2.0, -l / 2.0) * n;
  return r;
}

}  // namespace sminlab
