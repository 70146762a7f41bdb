#include "sminlab/combinatorics.hpp"

#include "sminlab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace sminlab {

namespace {

void check_row(const Matrix& b, std::size_t i, const char* what) {
  if (i >= b.n()) throw InvalidInput(std::string(what) + ": index " + std::to_string(i) + " out of range");
}

// Visits every r-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t r, Visit&& visit) {
  if (r > n) return;
  VertexSet s(r);
  std::iota(s.begin(), s.end(), std::size_t{0});
  while (true) {
    visit(static_cast<const VertexSet&>(s));
    std::size_t pos = r;
    while (pos > 0 && s[pos - 1] == n - r + pos - 1) --pos;
    if (pos == 0) return;
    ++s[pos - 1];
    for (std::size_t t = pos; t < r; ++t) s[t] = s[t - 1] + 1;
  }
}

std::vector<Vector> rows_outside(const Matrix& b, const std::array<std::size_t, 3>& triple) {
  std::vector<Vector> rows;
  for (std::size_t x = 0; x < b.n(); ++x) {
    if (x != triple[0] && x != triple[1] && x != triple[2]) rows.push_back(b.row(x));
  }
  return rows;
}

std::size_t slot_of(const std::array<std::size_t, 3>& triple, std::size_t v) {
  return static_cast<std::size_t>(std::find(triple.begin(), triple.end(), v) - triple.begin());
}

}  // namespace

std::array<double, 3> triple_distances(const Matrix& b, std::size_t j, std::size_t k, std::size_t l) {
  std::array<std::size_t, 3> t{j, k, l};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw InvalidInput("triple_distances: indices must be distinct");
  const auto d = dists_to_complement(b, t);
  return {d[0], d[1], d[2]};
}

Graph build_graph_G(const Matrix& b, std::size_t i) {
  const std::size_t n = b.n();
  if (n < 3) throw InvalidInput("build_graph_G: need n >= 3");
  check_row(b, i, "build_graph_G");
  Graph g(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (k == i) continue;
      std::array<std::size_t, 3> t{i, j, k};
      std::sort(t.begin(), t.end());
      const auto d = triple_distances(b, i, j, k);
      const double di = d[slot_of(t, i)];
      if (di >= std::max(d[slot_of(t, j)], d[slot_of(t, k)])) g.add_edge(j, k);
    }
  }
  return g;
}

Graph build_graph_G_tilde(const Matrix& a, const Matrix& m, std::size_t i, double offset) {
  if (a.n() != m.n()) throw InvalidInput("build_graph_G_tilde: A and M differ in size");
  const std::size_t n = a.n();
  if (n < 3) throw InvalidInput("build_graph_G_tilde: need n >= 3");
  check_row(a, i, "build_graph_G_tilde");
  const Matrix b = a + m;
  const double scale = b.max_row_norm();
  const Vector shift_row = m.row(i);
  Graph g(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (k == i) continue;
      std::array<std::size_t, 3> t{i, j, k};
      std::sort(t.begin(), t.end());
      const auto d = triple_distances(b, i, j, k);
      const auto others = rows_outside(b, t);
      const double lhs = dist_to_span(shift_row, others, scale) + offset;
      if (lhs >= std::max(d[slot_of(t, j)], d[slot_of(t, k)])) g.add_edge(j, k);
    }
  }
  return g;
}

std::size_t low_value_count(const Matrix& b, std::size_t L, std::size_t N, DecompositionMode mode) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < b.n(); ++i) {
    if (vertex_value(build_graph_G(b, i), i, L, mode) <= static_cast<double>(N)) ++count;
  }
  return count;
}

std::size_t QSets::union_size() const {
  std::set<VertexSet> all(q1.begin(), q1.end());
  all.insert(q2.begin(), q2.end());
  return all.size();
}

QSets q_sets(const Matrix& b, const VertexSet& I, double tau, double a, double b_threshold, std::size_t r) {
  const std::size_t n = b.n();
  if (r > n) throw InvalidInput("q_sets: r exceeds n");
  if (r == 0) throw InvalidInput("q_sets: r must be positive");
  for (auto v : I) check_row(b, v, "q_sets");
  const double far = tau * b_threshold / (2.0 * a * static_cast<double>(r));
  const auto in_I = [&I](std::size_t v) { return std::find(I.begin(), I.end(), v) != I.end(); };

  QSets out;
  for_each_subset(n, r, [&](const VertexSet& s) {
    if (std::none_of(s.begin(), s.end(), in_I)) return;
    const auto d = dists_to_complement(b, s);
    bool near_hit = false;
    bool far_hit = false;
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (in_I(s[t])) {
        near_hit = near_hit || d[t] <= tau;
      } else {
        far_hit = far_hit || d[t] >= far;
      }
    }
    if (near_hit) out.q1.push_back(s);
    if (far_hit) out.q2.push_back(s);
  });
  return out;
}

PivotResult pivot_index(std::span<const Vector> xs, double a, double b) {
  constexpr double kSlack = 1e-9;
  const std::size_t r = xs.size();
  if (r < 2) throw InvalidInput("pivot_index: need at least two vectors");
  for (const auto& x : xs) {
    if (x.size() != xs[0].size()) throw InvalidInput("pivot_index: dimension mismatch");
  }
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("pivot_index: a and b must be positive");

  const auto dist_to_others = [&](std::size_t i) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < r; ++j) {
      if (j != i) others.push_back(xs[j]);
    }
    return dist_to_span(xs[i], others);
  };

  PivotResult out;
  const double d1 = dist_to_others(0);
  if (d1 > a * (1.0 + kSlack)) {
    out.diagnostic = "hypothesis fails: dist(x_1, span rest) = " + std::to_string(d1) + " > a";
    return out;
  }
  for (std::size_t i = 1; i < r; ++i) {
    const double di = dist_to_others(i);
    if (di < b * (1.0 - kSlack)) {
      out.diagnostic = "hypothesis fails: dist(x_" + std::to_string(i + 1) + ", span others) = " +
                       std::to_string(di) + " < b";
      return out;
    }
  }
  const double target = b / (2.0 * a * static_cast<double>(r)) * xs[0].norm();
  for (std::size_t i = 1; i < r; ++i) {
    if (xs[i].norm() >= target) {
      out.index = i;
      return out;
    }
  }
  out.diagnostic = "conclusion fails: no x_i with norm >= b/(2ar) ||x_1||";
  return out;
}

double mindist(std::span<const double> row_dists, std::size_t j, std::size_t k) {
  if (j == k) throw InvalidInput("mindist: j and k must differ");
  if (j >= row_dists.size() || k >= row_dists.size()) throw InvalidInput("mindist: index out of range");
  return std::min(row_dists[j], row_dists[k]);
}

double mindist(const Matrix& b, std::size_t j, std::size_t k) {
  if (j == k) throw InvalidInput("mindist: j and k must differ");
  return mindist(row_distances(b), j, k);
}

double kmax(std::vector<double> values, std::size_t k) {
  if (k == 0 || k > values.size()) throw InvalidInput("kmax: k out of range");
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k - 1), values.end(),
                   std::greater<>());
  return values[k - 1];
}

std::size_t StructureParams::levels() const { return static_cast<std::size_t>(std::ceil(level_count)); }

StructureParams structure_params(std::size_t n, std::size_t u, double k1, double t) {
  if (n == 0) throw InvalidInput("structure_params: n must be positive");
  if (!(k1 > 0.0)) throw InvalidInput("structure_params: K1 must be positive");
  if (!(t > 0.0)) throw InvalidInput("structure_params: t must be positive");
  const auto log_n = static_cast<std::size_t>(std::bit_width(n) - 1);
  if (u > log_n) throw InvalidInput("structure_params: u must lie in [0, floor(log2 n)]");
  StructureParams p;
  p.n = n;
  p.u = u;
  p.k1 = k1;
  p.t = t;
  p.level_count = 8.0 * static_cast<double>(log_n + 1 - u) + 2.0 * std::log2(1.0 + k1);
  p.offset = std::exp2(p.level_count / 192.0);
  return p;
}

std::string DyadicLevel::str() const {
  switch (kind) {
    case Kind::minus_infinity:
      return "-inf";
    case Kind::plus_infinity:
      return "+inf";
    case Kind::finite:
      break;
  }
  return std::to_string(value);
}

DyadicLevel dyadic_level(double x, double t, int levels) {
  if (!(t > 0.0)) throw InvalidInput("dyadic_level: t must be positive");
  if (x < std::ldexp(t, -levels)) return DyadicLevel::minus_infinity();
  if (x >= std::ldexp(t, levels + 1)) return DyadicLevel::plus_infinity();
  int l = static_cast<int>(std::floor(std::log2(x / t)));
  while (std::ldexp(t, l) > x) --l;
  while (std::ldexp(t, l + 1) <= x) ++l;
  return DyadicLevel::at(std::clamp(l, -levels, levels));
}

LambdaClass classify_lambda(const Matrix& a, const Matrix& m, std::size_t i, const StructureParams& params,
                            DecompositionMode mode) {
  if (a.n() != m.n()) throw InvalidInput("classify_lambda: A and M differ in size");
  check_row(a, i, "classify_lambda");
  const Matrix b = a + m;
  const auto dists = row_distances(b);
  const auto levels = static_cast<int>(params.levels());

  LambdaClass out;
  out.distance = dyadic_level(dists[i], params.t, levels);

  const auto g_tilde = build_graph_G_tilde(a, m, i, params.offset);
  const auto rho = rho_set(g_tilde, i, params.levels(), mode);
  if (rho.empty()) {
    out.spread = DyadicLevel::minus_infinity();
    return out;
  }
  std::vector<double> spreads;
  spreads.reserve(rho.size());
  for (const auto& [j, k] : rho) spreads.push_back(mindist(dists, j, k));
  const double median_like = kmax(spreads, (rho.size() + 1) / 2);
  out.spread = dyadic_level(median_like, params.t, levels);
  return out;
}

}  // namespace sminlab
