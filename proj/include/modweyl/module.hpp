#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "modweyl/algebra.hpp"

namespace modweyl {

/**
 * A free Hilbert M_d-module M_d^n, optionally carrying the twist of
 * L^2(G, A, alpha) (then n = |G|).
 *
 * Every vector is stored in untwisted coordinates: the stacked (n*d) x d
 * matrix Z whose x-th d x d block is Omega(phi)(x) = alpha_{x^-1}(phi(x)).
 * In these coordinates the right action is Z -> Z a, the inner product is
 * Z^* W, and adjointable operators are exactly left multiplications by
 * (n*d) x (n*d) matrices.
 */
class HModule {
 public:
  static HModule free(std::size_t rank, int d);
  /// L^2(G, M_d, alpha), of rank |G|.
  static HModule l2(const Action& alpha);

  std::size_t rank() const { return rank_; }
  int dim() const { return d_; }
  bool twisted() const { return static_cast<bool>(twist_); }
  /// Throws StructuralError on an untwisted module.
  const Action& twist() const;
  /// Rows of the stacked coordinate matrix, n*d.
  Eigen::Index stacked_rows() const { return static_cast<Eigen::Index>(rank_) * d_; }
  std::size_t complex_dimension() const { return rank_ * static_cast<std::size_t>(d_ * d_); }

  friend bool operator==(const HModule& a, const HModule& b);

 private:
  HModule(std::size_t rank, int d, std::shared_ptr<const Action> twist)
      : rank_(rank), d_(d), twist_(std::move(twist)) {}

  std::size_t rank_;
  int d_;
  std::shared_ptr<const Action> twist_;
};

class ModuleVector {
 public:
  /// Wraps untwisted stacked coordinates.
  ModuleVector(HModule home, Mat stacked);

  static ModuleVector zero(const HModule& home);
  /// Builds the vector whose function values are blocks[x] = phi(x). On an
  /// untwisted module the blocks are the stacked coordinates themselves.
  static ModuleVector from_blocks(const HModule& home, const std::vector<Mat>& blocks);
  /// delta_x (x) a, the function supported at index x with value a.
  static ModuleVector delta(const HModule& home, std::size_t x, const Mat& a);

  const HModule& home() const { return home_; }
  const Mat& stacked() const { return stacked_; }
  /// phi(x) in function coordinates.
  Mat block(std::size_t x) const;
  std::vector<Mat> blocks() const;
  Mat untwisted_block(std::size_t x) const;

  ModuleVector operator+(const ModuleVector& other) const;
  ModuleVector operator-(const ModuleVector& other) const;
  ModuleVector operator*(Complex c) const;

 private:
  HModule home_;
  Mat stacked_;
};

/// An adjointable operator, stored as the (n*d) x (n*d) matrix acting on
/// untwisted stacked coordinates. The unitary W between two modules of equal
/// rank is also a ModuleOperator, homed on its codomain.
class ModuleOperator {
 public:
  ModuleOperator(HModule home, Mat matrix);

  static ModuleOperator identity(const HModule& home);
  static ModuleOperator zero(const HModule& home);

  const HModule& home() const { return home_; }
  const Mat& matrix() const { return matrix_; }

  ModuleVector apply(const ModuleVector& v) const;
  ModuleOperator adjoint() const;
  ModuleOperator operator*(const ModuleOperator& other) const;
  ModuleOperator operator+(const ModuleOperator& other) const;
  ModuleOperator operator-(const ModuleOperator& other) const;
  ModuleOperator operator*(Complex c) const;

  /// The complex-linear map on function coordinates, indexed
  /// (x, i, j) -> (x*d + i)*d + j. For twisted modules this is the operator as
  /// it acts on functions G -> M_d, i.e. Omega^-1 T Omega.
  Mat function_matrix() const;

 private:
  HModule home_;
  Mat matrix_;
};

/// The A-valued inner product; on L^2(G,A,alpha) this is
/// sum_x alpha_{x^-1}(phi(x)^* psi(x)).
Mat inner(const ModuleVector& phi, const ModuleVector& psi);
/// Alias naming the twisted case explicitly; requires a twisted home.
Mat inner_twisted(const ModuleVector& phi, const ModuleVector& psi);
/// ||phi|| = sqrt(||<phi, phi>||).
double norm(const ModuleVector& phi);

/// phi . a; on L^2(G,A,alpha) the function x -> phi(x) alpha_x(a).
ModuleVector right_act(const ModuleVector& phi, const Mat& a);

/// Omega : L^2(G,A,alpha) -> L^2(G,A,iota), Omega(phi)(x) = alpha_{x^-1}(phi(x)).
ModuleVector untwist(const ModuleVector& phi);
/// Omega^-1.
ModuleVector retwist(const ModuleVector& phi, const Action& alpha);

/// Theta_{zeta,eta} : xi -> zeta . <eta, xi>. The two vectors may live in
/// different modules of equal rank; the result is homed on zeta's module.
ModuleOperator theta(const ModuleVector& zeta, const ModuleVector& eta);

/// Rank-additive direct sums. A sum of more than one summand is untwisted;
/// a single summand is returned unchanged. Empty input throws.
HModule direct_sum(std::span<const HModule> modules);
ModuleVector direct_sum(std::span<const ModuleVector> vectors);
ModuleOperator direct_sum(std::span<const ModuleOperator> operators);

/// Residual-free check that two homes agree; throws StructuralError.
void require_same_home(const HModule& a, const HModule& b, const char* what);

}  // namespace modweyl
