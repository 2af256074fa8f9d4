#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "modweyl/module.hpp"

namespace modweyl {

/// Drop tolerance for the pivoted Gram-Schmidt used on spanning sets.
inline constexpr double kGramSchmidtDrop = 1e-9;

/// P = |v><v| for a unit vector v in C^d.
class RankOneProj {
 public:
  /// Normalizes v; throws StructuralError for the zero vector.
  explicit RankOneProj(Vec v);
  /// P = e_ii.
  static RankOneProj basis(int d, int i);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vec& vector() const { return v_; }
  Mat matrix() const { return v_ * v_.adjoint(); }

 private:
  Vec v_;
};

/// The unique functional with P S P = f_P(S) P, namely <v, S v>.
Complex f_P(const RankOneProj& p, const Mat& s);

/// <zeta, eta>_{X.P} := f_P(<zeta, eta>_X).
Complex reduced_inner(const RankOneProj& p, const ModuleVector& zeta, const ModuleVector& eta);

/// The Hilbert space X.P = { zeta : zeta . P = zeta } with an orthonormal
/// basis for the reduced inner product.
struct ReducedSpace {
  HModule parent;
  RankOneProj proj;
  std::vector<ModuleVector> basis;

  std::size_t dimension() const { return basis.size(); }
  /// Coordinates of zeta in the basis.
  Vec coordinates(const ModuleVector& zeta) const;
};

/// Pivoted Gram-Schmidt in X.P: at each step take the remaining candidate of
/// largest reduced norm, drop it when that norm is below `drop`.
std::vector<ModuleVector> orthonormalize(std::span<const ModuleVector> candidates, const RankOneProj& p,
                                         double drop = kGramSchmidtDrop);

/// Orthonormal basis of X.P built from xi . P over the standard generators
/// delta_k (x) e_ij of X. Dimension n*d for a rank-n module.
ReducedSpace reduce(const HModule& x, const RankOneProj& p);

/// The matrix of T restricted to X.P in the reduced basis.
Mat restrict_operator(const ModuleOperator& t, const ReducedSpace& red);

/// sum_ij L_ij Theta_{b_i, b_j}: the unique adjointable operator whose
/// restriction to X.P is L.
ModuleOperator extend_operator(const Mat& l, const ReducedSpace& red);
/// Operator from the parent of `domain` to the parent of `codomain` (modules
/// of equal rank) with restricted matrix L: sum_ij L_ij Theta_{c_i, b_j}.
ModuleOperator extend_operator(const Mat& l, const ReducedSpace& domain, const ReducedSpace& codomain);

/// Projection onto the closed submodule generated by `span`, built through
/// its restriction to X.P. Throws StructuralError on an empty span, a zero
/// span, or vectors from another module.
ModuleOperator complement_projection(std::span<const ModuleVector> span, const HModule& x);

/// A zeta in X with <zeta, zeta> = P.
ModuleVector unit_vector_for_P(const HModule& x, const RankOneProj& p);

/// Dimension of the commutant of { restrict(theta(b_i, b_j)) } in the
/// operators on X.P; 1 means K(X) acts irreducibly.
std::size_t commutant_dimension(const ReducedSpace& red);

}  // namespace modweyl
