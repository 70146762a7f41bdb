#include "sminlab/alphaeta.hpp"

#include "sminlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sminlab {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kHardAtomLimit = 20'000'000;

// Neumaier-compensated running sum; order of additions is the caller's.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

DiscreteProductSpace::DiscreteProductSpace(std::vector<std::vector<double>> factors, std::size_t atom_budget)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidInput("product space needs at least one factor");
  stride_.resize(factors_.size());
  std::size_t count = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.empty()) throw InvalidInput("factor " + std::to_string(i) + " has no atoms");
    CompensatedSum total;
    for (double p : f) {
      if (!(p > 0.0)) throw InvalidInput("factor " + std::to_string(i) + " has a non-positive probability");
      total.add(p);
    }
    if (std::abs(total.value() - 1.0) > 1e-12) {
      throw InvalidInput("factor " + std::to_string(i) + " probabilities do not sum to 1");
    }
    stride_[i] = count;
    if (count > atom_budget / f.size()) {
      throw UnsupportedSize("product space exceeds the enumeration budget of " + std::to_string(atom_budget) +
                            " atoms");
    }
    count *= f.size();
  }
  atom_count_ = count;
}

double DiscreteProductSpace::probability(std::size_t atom) const {
  double p = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) p *= factors_[i][coordinate(atom, i)];
  return p;
}

void AlphaEtaStructure::validate() const {
  const std::size_t n = space.n();
  const std::size_t atoms = space.atom_count();
  if (psi_labels.empty()) throw InvalidInput("structure: Psi is empty");
  if (lambda_labels.empty()) throw InvalidInput("structure: Lambda is empty");
  if (classes.size() != n || event_partition.size() != n || in_event.size() != atoms) {
    throw InvalidInput("structure: tables do not match the space");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (classes[i].size() != atoms || event_partition[i].size() != atoms) {
      throw InvalidInput("structure: table for coordinate " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t w = 0; w < atoms; ++w) {
      if (classes[i][w] >= psi_labels.size()) throw InvalidInput("structure: class index out of range");
      if (in_event[w] && event_partition[i][w] >= lambda_labels.size()) {
        throw InvalidInput("structure: event cell index out of range");
      }
    }
  }
}

double AlphaEtaStructure::event_probability() const {
  CompensatedSum total;
  for (std::size_t w = 0; w < space.atom_count(); ++w) {
    if (in_event[w]) total.add(space.probability(w));
  }
  return total.value();
}

std::vector<std::size_t> sharp_all(const AlphaEtaStructure& s) {
  std::vector<std::size_t> best(s.psi_labels.size(), 0);
  std::vector<std::size_t> count(s.psi_labels.size());
  for (std::size_t w = 0; w < s.space.atom_count(); ++w) {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < s.space.n(); ++i) ++count[s.classes[i][w]];
    for (std::size_t p = 0; p < count.size(); ++p) best[p] = std::max(best[p], count[p]);
  }
  return best;
}

std::size_t sharp(const AlphaEtaStructure& s, std::size_t psi) {
  if (psi >= s.psi_labels.size()) throw InvalidInput("sharp: unknown psi");
  return sharp_all(s)[psi];
}

double class_section_probability(const AlphaEtaStructure& s, std::size_t i, std::size_t atom, std::size_t psi) {
  CompensatedSum total;
  for (std::size_t v = 0; v < s.space.atoms_in(i); ++v) {
    if (s.classes[i][s.space.with_coordinate(atom, i, v)] == psi) total.add(s.space.factor_probability(i, v));
  }
  return total.value();
}

namespace {

std::size_t argmax_largest_on_tie(const std::vector<double>& section) {
  const double top = *std::max_element(section.begin(), section.end());
  std::size_t p = section.size();
  while (p-- > 0) {
    if (section[p] >= top - kTieTolerance) break;
  }
  return p;
}

std::vector<double> class_sections(const AlphaEtaStructure& s, std::size_t i, std::size_t atom) {
  std::vector<double> section(s.psi_labels.size(), 0.0);
  std::vector<CompensatedSum> sums(s.psi_labels.size());
  for (std::size_t v = 0; v < s.space.atoms_in(i); ++v) {
    sums[s.classes[i][s.space.with_coordinate(atom, i, v)]].add(s.space.factor_probability(i, v));
  }
  for (std::size_t p = 0; p < sums.size(); ++p) section[p] = sums[p].value();
  return section;
}

double event_cell_section(const AlphaEtaStructure& s, std::size_t i, std::size_t atom) {
  const auto cell = s.event_partition[i][atom];
  CompensatedSum total;
  for (std::size_t v = 0; v < s.space.atoms_in(i); ++v) {
    const std::size_t w = s.space.with_coordinate(atom, i, v);
    if (s.in_event[w] && s.event_partition[i][w] == cell) total.add(s.space.factor_probability(i, v));
  }
  return total.value();
}

}  // namespace

std::size_t eta(const AlphaEtaStructure& s, std::size_t i, std::size_t atom) {
  if (i >= s.space.n() || atom >= s.space.atom_count()) throw InvalidInput("eta: index out of range");
  return argmax_largest_on_tie(class_sections(s, i, atom));
}

double alpha(const AlphaEtaStructure& s, std::size_t i, std::size_t atom) {
  if (i >= s.space.n() || atom >= s.space.atom_count()) throw InvalidInput("alpha: index out of range");
  if (!s.in_event[atom]) throw InvalidInput("alpha: atom is not in the event");
  return 1.0 / event_cell_section(s, i, atom);
}

AlphaRhoCheck verify_alpharho(const AlphaEtaStructure& s) {
  const std::size_t n = s.space.n();
  const std::size_t atoms = s.space.atom_count();
  const auto sharps = sharp_all(s);

  // ratio[w] accumulates sum_i alpha(i,w)/#eta(i,w). Both alpha and eta are
  // constant along coordinate i, so each fiber is evaluated once.
  std::vector<double> ratio(atoms, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t base = 0; base < atoms; ++base) {
      if (s.space.coordinate(base, i) != 0) continue;
      const std::size_t psi = argmax_largest_on_tie(class_sections(s, i, base));
      const std::size_t count = sharps[psi];
      std::vector<CompensatedSum> cell_mass(s.lambda_labels.size());
      for (std::size_t v = 0; v < s.space.atoms_in(i); ++v) {
        const std::size_t w = s.space.with_coordinate(base, i, v);
        if (s.in_event[w]) cell_mass[s.event_partition[i][w]].add(s.space.factor_probability(i, v));
      }
      for (std::size_t v = 0; v < s.space.atoms_in(i); ++v) {
        const std::size_t w = s.space.with_coordinate(base, i, v);
        if (!s.in_event[w]) continue;
        if (count == 0) {
          throw DegenerateStructure("#eta(" + std::to_string(i) + ", atom " + std::to_string(w) + ") is zero");
        }
        ratio[w] += 1.0 / (cell_mass[s.event_partition[i][w]].value() * static_cast<double>(count));
      }
    }
  }

  AlphaRhoCheck out;
  CompensatedSum lhs;
  out.min_ratio_sum = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < atoms; ++w) {
    if (!s.in_event[w]) continue;
    lhs.add(s.space.probability(w) * ratio[w]);
    out.min_ratio_sum = std::min(out.min_ratio_sum, ratio[w]);
  }
  const double psi_count = static_cast<double>(s.psi_labels.size());
  out.lhs = lhs.value();
  out.rhs = psi_count * psi_count * static_cast<double>(s.lambda_labels.size());
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

AlphaEtaStructure cube_example_structure(std::size_t n, double K, std::size_t m) {
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (n < 4 || root * root != n) throw InvalidInput("cube example: n must be a perfect square >= 4");
  if (!(K > 1.0)) throw InvalidInput("cube example: K must exceed 1");
  if (m == 0) throw InvalidInput("cube example: m must be positive");

  const auto whole_cells = [m](double width) {
    const double cells = static_cast<double>(m) * width;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
      throw InvalidInput("cube example: cut-off is not a multiple of 1/m");
    }
    return static_cast<std::size_t>(rounded);
  };
  const std::size_t head = n - root;  // coordinates 0..head-1 use the finer cut-off
  const std::size_t head_cells = whole_cells(1.0 / (K * static_cast<double>(n)));
  const std::size_t tail_cells = whole_cells(1.0 / (K * static_cast<double>(root)));

  double atoms = 1.0;
  for (std::size_t i = 0; i < n; ++i) atoms *= static_cast<double>(m);
  if (atoms > static_cast<double>(kHardAtomLimit)) {
    throw UnsupportedSize("cube example: m^n exceeds " + std::to_string(kHardAtomLimit) + " atoms");
  }

  AlphaEtaStructure s;
  s.space = DiscreteProductSpace(std::vector<std::vector<double>>(n, std::vector<double>(m, 1.0 / static_cast<double>(m))),
                                 static_cast<std::size_t>(atoms));
  s.psi_labels = {1, 2};
  s.lambda_labels = {1};
  const std::size_t count = s.space.atom_count();
  s.classes.assign(n, std::vector<std::uint16_t>(count, 0));
  for (std::size_t i = head; i < n; ++i) std::fill(s.classes[i].begin(), s.classes[i].end(), std::uint16_t{1});
  s.in_event.assign(count, 0);
  for (std::size_t w = 0; w < count; ++w) {
    bool hit = false;
    for (std::size_t i = 0; i < n && !hit; ++i) {
      hit = s.space.coordinate(w, i) < (i < head ? head_cells : tail_cells);
    }
    s.in_event[w] = hit ? 1 : 0;
  }
  s.event_partition.assign(n, std::vector<std::uint16_t>(count, 0));
  return s;
}

}  // namespace sminlab
