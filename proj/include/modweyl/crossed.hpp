#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "modweyl/heisenberg.hpp"

namespace modweyl {

/// The coefficient algebra B of a finite crossed product.
enum class CoeffKind {
  Matrix,    ///< B = M_d with the action beta itself
  Function,  ///< B = C(G, M_d) with the action lt (x) alpha
};

/**
 * An element of the convolution *-algebra of B-valued functions on G.
 *
 * For CoeffKind::Matrix the values are one d x d matrix per element. For
 * CoeffKind::Function the value at x is itself a function G -> M_d, stored
 * flat at index x*|G| + y. The dual group is handled as a Matrix element over
 * the same group under the self-dual identification, with the trivial action.
 */
class CrossedElem {
 public:
  static CrossedElem matrix_coeff(const Action& beta, FnTable values);
  static CrossedElem function_coeff(const Action& alpha, std::vector<FnTable> values);
  /// delta_e (x) 1_B.
  static CrossedElem unit(const Action& action, CoeffKind kind);
  static CrossedElem zero(const Action& action, CoeffKind kind);

  CoeffKind kind() const { return kind_; }
  const Action& action() const { return action_; }
  const FiniteAbelianGroup& group() const { return action_.group(); }
  int dim() const { return action_.dim(); }

  /// Matrix kind only: f(x).
  const Mat& value(std::size_t x) const;
  /// Function kind only: F(x)(y).
  const Mat& value(std::size_t x, std::size_t y) const;
  Mat& value(std::size_t x, std::size_t y);
  /// Function kind only: F(x) as a table over y.
  FnTable function_at(std::size_t x) const;
  const std::vector<Mat>& raw() const { return values_; }

  CrossedElem operator+(const CrossedElem& other) const;
  CrossedElem operator-(const CrossedElem& other) const;
  CrossedElem operator*(Complex c) const;

 private:
  CrossedElem(Action action, CoeffKind kind, std::vector<Mat> values)
      : action_(std::move(action)), kind_(kind), values_(std::move(values)) {}
  void require_compatible(const CrossedElem& other, const char* what) const;

  Action action_;
  CoeffKind kind_;
  std::vector<Mat> values_;

  friend CrossedElem convolve(const CrossedElem&, const CrossedElem&);
  friend CrossedElem involute(const CrossedElem&);
};

/// (f * g)(x) = sum_y f(y) beta_y(g(y^-1 x)).
CrossedElem convolve(const CrossedElem& f, const CrossedElem& g);
/// f^*(x) = beta_x(f(x^-1)^*).
CrossedElem involute(const CrossedElem& f);
/// Largest operator norm over all stored coefficient values.
double sup_distance(const CrossedElem& f, const CrossedElem& g);

/// The crossed-product-valued inner product of Green's imprimitivity
/// bimodule: <phi, psi>_L(x)(y) = phi(y) alpha_x(psi(x^-1 y)^*).
CrossedElem green_left_inner(const ModuleVector& phi, const ModuleVector& psi);

/// Integrated form Pi_{X,pi,R}(F) = sum_x pi(F(x)) R(x).
ModuleOperator integrated_form(const CovariantRep& cov, const CrossedElem& F);

/// Pi_{L^2, Xi, U}: the faithful realization of C*(G, C(G,A), lt (x) alpha)
/// as operators on L^2(G, A, alpha).
ModuleOperator pi_full(const CrossedElem& F);
/// The inverse of pi_full on all of L(L^2(G,A,alpha)):
/// F(x)(y) = alpha_y(K_{y, y-x}) in untwisted block coordinates.
CrossedElem pi_full_inverse(const Action& alpha, const ModuleOperator& K);
/// pi_full as a ((|G|d)^2) x (|G|^2 d^2) matrix on the basis
/// delta_x (x) delta_y (x) e_ij; used for rank tests.
Mat pi_full_matrix(const Action& alpha);

/// T -> shuffle(Omega T Omega^-1), from operators on L^2(G,A,alpha) to
/// M_{|G|}(C) (x) M_d in Kronecker order. `linearity_residual`, if given,
/// receives how far Omega T Omega^-1 is from a right-M_d-linear map.
Mat takai_map(const ModuleOperator& T, double* linearity_residual = nullptr);

struct TakaiReport {
  std::size_t lhs_dimension = 0;     ///< |G|^2 d^2, complex dim of the crossed product
  std::size_t rhs_dimension = 0;     ///< |G|^2 d^2, complex dim of M_{|G|} (x) M_d
  std::size_t map_rank = 0;          ///< rank of the takai map on operators
  std::size_t composite_rank = 0;    ///< rank of takai o pi_full on crossed elements
  double multiplicativity = 0.0;
  double adjoint = 0.0;
  double unitality = 0.0;
  double linearity = 0.0;
  double worst_residual() const;
  bool pass(double tol) const;
};

/// Verifies the chain C*(G, C(G,A), lt (x) alpha) = K(L^2(G,A,alpha))
/// = K(L^2(G,A,iota)) = M_{|G|} (x) M_d on `samples` random operator pairs.
TakaiReport takai_iso(const Action& alpha, std::size_t samples, std::uint64_t seed);

}  // namespace modweyl
