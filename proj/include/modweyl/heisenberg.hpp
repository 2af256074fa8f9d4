#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "modweyl/module.hpp"

namespace modweyl {

/// A function on G (or on its dual) with values in M_d, indexed by element index.
using FnTable = std::vector<Mat>;

/**
 * A quadruple (X, rho, R, S) meant to satisfy the seven Heisenberg axioms for
 * the system (G, M_d, alpha).
 *
 * rho is stored through its values on the matrix units (rho_units[i*d + j] =
 * rho(e_ij)) and extended linearly. R is indexed by element index, S by
 * character index. Nothing here is validated on construction; run
 * validate_heisenberg.
 */
struct HeisenbergRep {
  Action alpha;
  HModule module;
  std::vector<ModuleOperator> rho_units;
  std::vector<ModuleOperator> R;
  std::vector<ModuleOperator> S;

  const FiniteAbelianGroup& group() const { return alpha.group(); }
  int dim() const { return alpha.dim(); }
  ModuleOperator rho(const Mat& a) const;
};

enum class Axiom : std::size_t {
  Fullness = 0,
  NonDegenerate,
  RUnitaryRep,
  SUnitaryRep,
  Weyl,
  Covariance,
  Commutation,
};
inline constexpr std::size_t kNumAxioms = 7;
const char* axiom_name(Axiom a);

struct AxiomResult {
  Axiom axiom;
  double residual = 0.0;
  std::string witness;  ///< where the worst residual was attained
  bool pass = true;
};

struct ValidationReport {
  std::array<AxiomResult, kNumAxioms> axioms;
  double tolerance = kDefaultTol;

  bool pass() const;
  double worst_residual() const;
  const AxiomResult& operator[](Axiom a) const { return axioms[static_cast<std::size_t>(a)]; }
};

/// Exhaustive sweep over every element, character, and matrix unit.
/// Failures are recorded in the report, never thrown (shape errors aside).
ValidationReport validate_heisenberg(const HeisenbergRep& rep, double tol = kDefaultTol);

/// (L^2(G,A,alpha), M, U, V). In untwisted coordinates U is plain
/// translation, V is multiplication by the character, and
/// M(a) = blockdiag_y(alpha_{y^-1}(a)).
HeisenbergRep schrodinger(const Action& alpha);

/// The same operators assembled from their defining formulas on functions
/// G -> M_d (a.phi, alpha_x(phi(x^-1 y)), chi.phi), as function-coordinate
/// matrices. Used as an independent cross-check of schrodinger().
struct SchrodingerFunctionForm {
  std::vector<Mat> M_units, U, V;
};
SchrodingerFunctionForm schrodinger_function_form(const Action& alpha);

/// Which covariant pair the integrated form uses: (rho, R) over G or
/// (rho, S) over the dual group.
enum class Side { Group, Dual };

/// Pi(f) = weight * sum_h rho(f(h)) T(h) with T = R or S.
ModuleOperator integrated_form(const HeisenbergRep& rep, Side side, const FnTable& f, double weight = 1.0);

/// F(f)(x) = weight * sum_phi phi(x) f(phi).
FnTable fourier(const FiniteAbelianGroup& group, const FnTable& f, double weight = 1.0);
/// F^-1(g)(phi) = 1/(weight |G|) sum_x conj(phi(x)) g(x).
FnTable inverse_fourier(const FiniteAbelianGroup& group, const FnTable& g, double weight = 1.0);

/// pi_nu(g) = Pi_{rho,S}(F^-1(g)); independent of the weight.
ModuleOperator pi_nu(const HeisenbergRep& rep, const FnTable& g, double weight = 1.0);

/**
 * A covariant representation (X, pi, R) of (G, C(G, M_d), lt (x) alpha).
 * pi is stored on the basis delta_y (x) e_ij of C(G, M_d), at index
 * (y*d + i)*d + j.
 */
struct CovariantRep {
  Action alpha;
  HModule module;
  std::vector<ModuleOperator> pi_units;
  std::vector<ModuleOperator> R;

  ModuleOperator pi(const FnTable& g) const;
};

/// (lt (x) alpha)_x(g)(y) = alpha_x(g(y - x)).
FnTable lt_alpha(const Action& alpha, std::size_t x, const FnTable& g);

/// (X, pi_nu, R). Throws ValidationError when rep fails validation at tol.
CovariantRep heisenberg_to_covariant(const HeisenbergRep& rep, double tol = kDefaultTol);

/// Inverse of the class map: rho(a) = pi(const a), S(phi) = pi(x -> phi(x) I).
HeisenbergRep covariant_to_heisenberg(const CovariantRep& cov);

/// Worst ||R(x) pi(g) - pi((lt (x) alpha)_x g) R(x)|| over x and basis g.
double covariance_residual(const CovariantRep& cov);

/// Green's covariant pair (L^2(G,A,alpha), Xi, U) built from its definition,
/// Xi(g) phi = g phi pointwise.
CovariantRep green_covariant(const Action& alpha);

/// Worst difference between the operators of two representations on the
/// same module: max over rho units, R and S.
double rep_distance(const HeisenbergRep& a, const HeisenbergRep& b);

}  // namespace modweyl
