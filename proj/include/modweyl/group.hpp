#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace modweyl {

using Complex = std::complex<double>;

/// An element x of G, stored as residues coords[j] in [0, n_j).
struct GroupElement {
  std::vector<int> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// A character of G under the self-dual identification: the character with
/// coordinates y sends x to exp(2 pi i sum_j x_j y_j / n_j).
struct Character {
  std::vector<int> coords;
  friend bool operator==(const Character&, const Character&) = default;
};

std::string to_string(const GroupElement& x);
std::string to_string(const Character& phi);

/**
 * G = Z_{n_1} x ... x Z_{n_k} together with its Pontryagin dual.
 *
 * Elements and characters are enumerated in mixed-radix order with the first
 * factor most significant, so index(x) is stable and doubles as the position
 * of x in every per-element table of the library. Both G and its dual carry
 * counting measure with unit weight; the modular function is identically 1.
 */
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  std::size_t num_factors() const { return factors_.size(); }

  GroupElement identity() const;
  /// Reduces every coordinate mod n_j. Throws StructuralError on a length mismatch.
  GroupElement element(std::vector<int> coords) const;
  Character character(std::vector<int> coords) const;
  Character trivial_character() const;

  GroupElement compose(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  /// Pointwise product of characters.
  Character multiply(const Character& phi, const Character& psi) const;

  /// phi(x), a unit complex number.
  Complex pair(const Character& phi, const GroupElement& x) const;

  std::size_t index(const GroupElement& x) const;
  std::size_t index(const Character& phi) const;
  GroupElement element_at(std::size_t i) const;
  Character character_at(std::size_t i) const;
  std::vector<GroupElement> elements() const;
  std::vector<Character> characters() const;
  /// The unit vectors (0,..,1,..,0), one per cyclic factor.
  std::vector<GroupElement> generators() const;

  // Index-level arithmetic used by the hot loops of the other modules.
  std::size_t add(std::size_t i, std::size_t j) const { return add_(i, j); }
  std::size_t sub(std::size_t i, std::size_t j) const { return add_(i, neg_[j]); }
  std::size_t neg(std::size_t i) const { return neg_[i]; }
  /// table(phi, x) = phi(x) with rows indexed by characters.
  const Eigen::MatrixXcd& character_table() const { return table_; }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  void check_shape(const std::vector<int>& coords) const;
  std::vector<int> coords_of(std::size_t i) const;
  std::size_t index_of(const std::vector<int>& coords) const;

  std::vector<int> factors_;
  std::size_t order_ = 1;
  Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic> add_;
  std::vector<std::size_t> neg_;
  Eigen::MatrixXcd table_;
};

}  // namespace modweyl
