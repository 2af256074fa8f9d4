#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "modweyl/errors.hpp"
#include "modweyl/group.hpp"

namespace modweyl {

/// An element of A = M_d(C), identified with the compact operators on C^d.
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// C*-norm of K(C^d): the largest singular value.
double op_norm(const Mat& t);

/// |v><w|, the operator x -> <w, x> v.
Mat rank_one(const Vec& v, const Vec& w);

/// The d x d matrix unit e_{ij}.
Mat matrix_unit(int d, int i, int j);

/// Hermitian to within tol and with spectrum >= -tol.
bool is_positive(const Mat& t, double tol = kDefaultTol);

/// Numerical rank with cutoff max(rows, cols) * rel_cutoff * sigma_max.
std::size_t numerical_rank(const Mat& m, double rel_cutoff = kDefaultTol);

/// Row-major flattening; used to stack linear maps into rank-test matrices.
Vec flatten(const Mat& m);

/// Dimension of the two-sided ideal generated by t, i.e. rank of
/// span{ e_ij t e_kl }. Equals d^2 for every nonzero t since M_d is simple.
std::size_t ideal_dimension(const Mat& t);

/// What validate_action found wrong with a candidate unitary table.
struct ActionReport {
  enum class Failure { None, IdentityMismatch, NonUnitary, NotHomomorphism, Shape };
  Failure failure = Failure::None;
  std::size_t x = 0;  ///< index of the worst element (or first of the pair)
  std::size_t y = 0;  ///< second element of the worst pair for homomorphism failures
  double residual = 0.0;
  std::string message;
};

/**
 * An action of G on M_d by inner automorphisms, alpha_x = Ad(u_x), where
 * u : G -> U(d) is a genuine unitary representation.
 *
 * Instances only come out of validate_action / from_generators / trivial, so
 * every Action in circulation satisfies the homomorphism and unitarity
 * invariants within the tolerance it was built with.
 */
class Action {
 public:
  static Action trivial(const FiniteAbelianGroup& group, int d);
  /// Completes the table from one unitary per cyclic factor via u_x = prod_j g_j^{x_j}
  /// and validates it. Throws StructuralError on shape problems and
  /// ValidationError (with the report text) otherwise.
  static Action from_generators(const FiniteAbelianGroup& group, const std::vector<Mat>& generators,
                                double tol = kDefaultTol);

  const FiniteAbelianGroup& group() const { return group_; }
  int dim() const { return d_; }
  const Mat& unitary(std::size_t x) const { return table_[x]; }
  const std::vector<Mat>& table() const { return table_; }
  bool is_trivial(double tol = kDefaultTol) const;

  /// alpha_x(t) = u_x t u_x^*.
  Mat apply(std::size_t x, const Mat& t) const;
  Mat apply(const GroupElement& x, const Mat& t) const { return apply(group_.index(x), t); }

  /// Same group, same dimension, and equal automorphisms (not merely equal
  /// unitaries: u and c*u implement the same action).
  bool same_automorphisms(const Action& other, double tol = kDefaultTol) const;

 private:
  Action(FiniteAbelianGroup group, int d, std::vector<Mat> table)
      : group_(std::move(group)), d_(d), table_(std::move(table)) {}
  friend std::variant<Action, ActionReport> validate_action(const FiniteAbelianGroup&, std::vector<Mat>, double);

  FiniteAbelianGroup group_;
  int d_;
  std::vector<Mat> table_;
};

/// Checks u_e = I, unitarity of every u_x, and u_{x+y} = u_x u_y. Returns the
/// Action when every residual is within tol, otherwise a report naming the
/// worst violation.
std::variant<Action, ActionReport> validate_action(const FiniteAbelianGroup& group, std::vector<Mat> table,
                                                   double tol = kDefaultTol);

/// act(alpha, x, t) = alpha_x(t); the free-function form of Action::apply.
Mat act(const Action& alpha, const GroupElement& x, const Mat& t);

}  // namespace modweyl
