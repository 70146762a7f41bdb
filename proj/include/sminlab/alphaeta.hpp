#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sminlab {

inline constexpr std::size_t kDefaultAtomBudget = 1'000'000;

/// Finite product probability space prod_i (Omega_i, P_i).
///
/// A point of the product ("atom") is addressed by its mixed-radix index
/// with coordinate 0 varying fastest.
class DiscreteProductSpace {
 public:
  DiscreteProductSpace() = default;
  /// Throws InvalidInput on non-positive probabilities or factors not
  /// summing to 1 (1e-12), and UnsupportedSize past `atom_budget`.
  explicit DiscreteProductSpace(std::vector<std::vector<double>> factors,
                                std::size_t atom_budget = kDefaultAtomBudget);

  std::size_t n() const { return factors_.size(); }
  std::size_t atoms_in(std::size_t i) const { return factors_[i].size(); }
  std::size_t atom_count() const { return atom_count_; }
  const std::vector<std::vector<double>>& factors() const { return factors_; }

  std::size_t coordinate(std::size_t atom, std::size_t i) const { return (atom / stride_[i]) % factors_[i].size(); }
  /// The atom equal to `atom` except that coordinate i is `value`.
  std::size_t with_coordinate(std::size_t atom, std::size_t i, std::size_t value) const {
    return atom - coordinate(atom, i) * stride_[i] + value * stride_[i];
  }
  double probability(std::size_t atom) const;
  double factor_probability(std::size_t i, std::size_t value) const { return factors_[i][value]; }

 private:
  std::vector<std::vector<double>> factors_;
  std::vector<std::size_t> stride_;
  std::size_t atom_count_ = 0;
};

/// Partitions {Class_{i,psi}} of the whole space and {E_{i,lambda}} of an
/// event E, for every coordinate i. Psi and Lambda are referred to by their
/// position in `psi_labels` / `lambda_labels`; position order is the total
/// order on the index set.
struct AlphaEtaStructure {
  DiscreteProductSpace space;
  std::vector<int> psi_labels;
  std::vector<int> lambda_labels;
  std::vector<std::vector<std::uint16_t>> classes;          // [i][atom] -> psi position
  std::vector<char> in_event;                               // [atom]
  std::vector<std::vector<std::uint16_t>> event_partition;  // [i][atom] -> lambda position, event atoms only

  /// Throws InvalidInput unless every table has the right shape and every
  /// entry names a valid index.
  void validate() const;
  double event_probability() const;
};

/// Largest number of coordinates i whose classes Class_{i,psi} share a
/// single atom; 0 when the class is empty for every i.
std::size_t sharp(const AlphaEtaStructure& s, std::size_t psi);
std::vector<std::size_t> sharp_all(const AlphaEtaStructure& s);

/// P_i of the section of Class_{i,psi} through `atom` along coordinate i.
double class_section_probability(const AlphaEtaStructure& s, std::size_t i, std::size_t atom, std::size_t psi);

/// The psi whose section through `atom` has the largest P_i; ties (within
/// 1e-12) go to the largest psi.
std::size_t eta(const AlphaEtaStructure& s, std::size_t i, std::size_t atom);

/// 1 / P_i(section of E_{i,lambda} through atom), lambda being the cell of
/// `atom`. Throws InvalidInput if `atom` is not in E.
double alpha(const AlphaEtaStructure& s, std::size_t i, std::size_t atom);

struct AlphaRhoCheck {
  double lhs = 0.0;  // sum over E of P(w) sum_i alpha(i,w) / #eta(i,w)
  double rhs = 0.0;  // |Psi|^2 |Lambda|
  bool holds = false;
  double min_ratio_sum = 0.0;  // min over E of sum_i alpha/#eta (+inf when E is empty)
};

/// Exact finite-sum evaluation of the integral inequality. Throws
/// DegenerateStructure if some #eta(i,w) is 0 on E.
AlphaRhoCheck verify_alpharho(const AlphaEtaStructure& s);

/// Uniform grid {0, 1/m, ..., (m-1)/m}^n with the event "one of the first
/// n - sqrt(n) coordinates is below 1/(Kn) or one of the last sqrt(n) is
/// below 1/(K sqrt(n))", two classes split by coordinate position and a
/// single event cell. n must be a perfect square >= 4 and both cut-offs
/// whole multiples of 1/m.
AlphaEtaStructure cube_example_structure(std::size_t n, double K, std::size_t m);

}  // namespace sminlab
