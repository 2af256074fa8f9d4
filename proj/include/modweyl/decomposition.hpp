#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "modweyl/heisenberg.hpp"

namespace modweyl {

/// Worst conjugation residuals ||W T W^* - T'|| over the whole group, the
/// whole dual group, and every matrix unit.
struct IntertwiningResiduals {
  double R = 0.0;
  double S = 0.0;
  double rho = 0.0;
  double max() const;
};

struct DecompositionResult {
  /// rank(X) / |G|.
  std::size_t multiplicity = 0;
  /// Independent count: numerical rank of the image of a minimal projection.
  std::size_t rank_multiplicity = 0;
  /// Unitary from X onto the m-fold sum of L^2(G,A,alpha), homed on the sum.
  ModuleOperator W;
  IntertwiningResiduals residuals;
  double unitarity = 0.0;
  /// Empty unless the two multiplicity routes disagree or a residual
  /// exceeds 10 * tol.
  std::string diagnostic;
};

/// Direct sum of representations of one system. A single summand is
/// returned unchanged; a larger sum lives on a free module.
HeisenbergRep direct_sum(std::span<const HeisenbergRep> reps);
/// The m-fold sum of the Schrodinger representation.
HeisenbergRep schrodinger_sum(const Action& alpha, std::size_t m);
/// W0^* rep W0 for a unitary W0 on the stacked coordinates.
HeisenbergRep conjugate(const HeisenbergRep& rep, const Mat& w0);

IntertwiningResiduals intertwining_residuals(const ModuleOperator& w, const HeisenbergRep& from,
                                             const HeisenbergRep& to);

/**
 * Decomposes a Heisenberg representation into copies of the Schrodinger
 * representation.
 *
 * Phi = Pi_{X, pi_nu, R} o pi_full^-1 carries K(L^2) into L(X). Passing to
 * the Hilbert spaces L^2.P and X.P with P = e_11, the image E of the matrix
 * unit e_11 of K(L^2.P) is a projection of rank m; with an orthonormal basis
 * w_1..w_m of its range, eps_j^(k) -> Phi(e_j1) w_k is a unitary that
 * intertwines everything, and W is its adjoint lifted back to the modules.
 *
 * Throws ValidationError when the representation fails validation at tol or
 * its rank is not a multiple of |G|.
 */
DecompositionResult decompose(const HeisenbergRep& rep, double tol = kDefaultTol);

/// A unitary V with V rep_a V^* = rep_b when the multiplicities agree.
/// Throws StructuralError when the two representations are of different
/// systems (group, d, or action).
std::optional<ModuleOperator> equivalent(const HeisenbergRep& a, const HeisenbergRep& b, double tol = kDefaultTol);

struct InequivalenceWitness {
  GroupElement x;
  int i = 0, j = 0;  ///< the matrix unit a = e_ij
  Mat a;
  double gap = 0.0;            ///< ||alpha_x(a) - beta_x(a)||
  double contradiction = 0.0;  ///< ||M^beta(beta_x(a)) - M^beta(alpha_x(a))||
};

/// The (x, e_ij) maximizing ||alpha_x(e_ij) - beta_x(e_ij)||, or nothing when
/// that maximum is within tol.
std::optional<InequivalenceWitness> inequivalence_witness(const Action& alpha, const Action& beta,
                                                          double tol = kDefaultTol);

/// W0^* (m-fold Schrodinger) W0 with W0 Haar-random from `seed`. Seed 0
/// uses W0 = I.
HeisenbergRep random_heisenberg(const Action& alpha, std::size_t m, std::uint64_t seed);

/// FNV-1a over the entries rounded to 1e-8, as 16 hex digits.
std::string matrix_checksum(const Mat& m);

}  // namespace modweyl
