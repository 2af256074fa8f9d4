#include "modweyl/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/SVD>

#include "modweyl/crossed.hpp"
#include "modweyl/random.hpp"
#include "modweyl/reduction.hpp"

namespace modweyl {

double IntertwiningResiduals::max() const { return std::max({R, S, rho}); }

HeisenbergRep direct_sum(std::span<const HeisenbergRep> reps) {
  if (reps.empty()) throw StructuralError("direct sum of zero representations");
  if (reps.size() == 1) return reps.front();
  const HeisenbergRep& first = reps.front();
  std::vector<HModule> modules;
  for (const auto& r : reps) {
    if (!r.alpha.same_automorphisms(first.alpha))
      throw StructuralError("direct sum of representations of different systems");
    modules.push_back(r.module);
  }
  const HModule sum = direct_sum(std::span<const HModule>(modules));

  auto stack = [&](auto member, std::size_t k) {
    std::vector<ModuleOperator> parts;
    for (const auto& r : reps) parts.push_back((r.*member)[k]);
    const ModuleOperator blocks = direct_sum(std::span<const ModuleOperator>(parts));
    return ModuleOperator(sum, blocks.matrix());
  };
  HeisenbergRep out{first.alpha, sum, {}, {}, {}};
  for (std::size_t k = 0; k < first.rho_units.size(); ++k) out.rho_units.push_back(stack(&HeisenbergRep::rho_units, k));
  for (std::size_t k = 0; k < first.R.size(); ++k) out.R.push_back(stack(&HeisenbergRep::R, k));
  for (std::size_t k = 0; k < first.S.size(); ++k) out.S.push_back(stack(&HeisenbergRep::S, k));
  return out;
}

HeisenbergRep schrodinger_sum(const Action& alpha, std::size_t m) {
  if (m < 1) throw StructuralError("multiplicity must be >= 1");
  const std::vector<HeisenbergRep> copies(m, schrodinger(alpha));
  return direct_sum(std::span<const HeisenbergRep>(copies));
}

HeisenbergRep conjugate(const HeisenbergRep& rep, const Mat& w0) {
  if (w0.rows() != rep.module.stacked_rows() || w0.cols() != rep.module.stacked_rows())
    throw StructuralError("conjugate: unitary has the wrong size");
  auto conj = [&](const ModuleOperator& t) { return ModuleOperator(rep.module, w0.adjoint() * t.matrix() * w0); };
  HeisenbergRep out{rep.alpha, rep.module, {}, {}, {}};
  for (const auto& t : rep.rho_units) out.rho_units.push_back(conj(t));
  for (const auto& t : rep.R) out.R.push_back(conj(t));
  for (const auto& t : rep.S) out.S.push_back(conj(t));
  return out;
}

IntertwiningResiduals intertwining_residuals(const ModuleOperator& w, const HeisenbergRep& from,
                                             const HeisenbergRep& to) {
  const Mat& wm = w.matrix();
  auto residual = [&](const std::vector<ModuleOperator>& a, const std::vector<ModuleOperator>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      worst = std::max(worst, op_norm(wm * a[k].matrix() * wm.adjoint() - b[k].matrix()));
    return worst;
  };
  if (from.R.size() != to.R.size() || from.rho_units.size() != to.rho_units.size())
    throw StructuralError("intertwining_residuals: representations of different systems");
  return IntertwiningResiduals{residual(from.R, to.R), residual(from.S, to.S), residual(from.rho_units, to.rho_units)};
}

namespace {

/// Fixes the phase of a vector so its largest-magnitude entry is real positive.
void fix_phase(Eigen::Ref<Vec> v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  const double mag = std::abs(v(at));
  if (mag > 0.0) v *= std::conj(v(at)) / mag;
}

}  // namespace

DecompositionResult decompose(const HeisenbergRep& rep, double tol) {
  const Action& alpha = rep.alpha;
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const CovariantRep cov = heisenberg_to_covariant(rep, tol);

  if (rep.module.rank() % n != 0) {
    throw ValidationError("module rank " + std::to_string(rep.module.rank()) + " is not a multiple of |G| = " +
                          std::to_string(n) + "; the representation is inconsistent");
  }
  const std::size_t m = rep.module.rank() / n;

  const RankOneProj p = RankOneProj::basis(d, 0);
  const HModule l2 = HModule::l2(alpha);
  const ReducedSpace red_l2 = reduce(l2, p);
  const ReducedSpace red_x = reduce(rep.module, p);

  // Phi(K) = Pi_{X, pi_nu, R}(pi_full^-1(K)), evaluated on the column of
  // matrix units e_j1 = Theta_{eps_j, eps_1} of K(L^2.P).
  const std::size_t k_dim = red_l2.dimension();
  std::vector<Mat> phi_e_j1;
  phi_e_j1.reserve(k_dim);
  for (std::size_t j = 0; j < k_dim; ++j) {
    const ModuleOperator e_j1 = theta(red_l2.basis[j], red_l2.basis[0]);
    phi_e_j1.push_back(restrict_operator(integrated_form(cov, pi_full_inverse(alpha, e_j1)), red_x));
  }

  const Mat& e11 = phi_e_j1[0];
  Eigen::BDCSVD<Mat> svd(e11, Eigen::ComputeFullU);
  const std::size_t rank_m = numerical_rank(e11);
  Mat range = svd.matrixU().leftCols(static_cast<Eigen::Index>(m));
  for (Eigen::Index k = 0; k < range.cols(); ++k) fix_phase(range.col(k));

  // Columns ordered (copy k, basis index j) to match the reduced basis of the sum below.
  Mat w_hat(static_cast<Eigen::Index>(red_x.dimension()), static_cast<Eigen::Index>(m * k_dim));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < k_dim; ++j)
      w_hat.col(static_cast<Eigen::Index>(k * k_dim + j)) = phi_e_j1[j] * range.col(static_cast<Eigen::Index>(k));

  const HeisenbergRep target = schrodinger_sum(alpha, m);
  ReducedSpace red_sum{target.module, p, {}};
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < k_dim; ++j) {
      std::vector<ModuleVector> parts(m, ModuleVector::zero(l2));
      parts[k] = red_l2.basis[j];
      const ModuleVector summed = direct_sum(std::span<const ModuleVector>(parts));
      red_sum.basis.emplace_back(target.module, summed.stacked());
    }

  ModuleOperator w = extend_operator(w_hat.adjoint(), red_x, red_sum);
  const Mat& wm = w.matrix();
  const Mat id = Mat::Identity(wm.rows(), wm.cols());
  const double unitarity = std::max(op_norm(wm.adjoint() * wm - id), op_norm(wm * wm.adjoint() - id));
  const IntertwiningResiduals residuals = intertwining_residuals(w, rep, target);

  std::ostringstream diag;
  if (rank_m != m) diag << "multiplicity routes disagree: rank/|G| gives " << m << ", projection rank gives " << rank_m << ". ";
  if (residuals.max() > 10.0 * tol || unitarity > 10.0 * tol)
    diag << "residual " << std::max(residuals.max(), unitarity) << " exceeds 10*tol";

  return DecompositionResult{m, rank_m, std::move(w), residuals, unitarity, diag.str()};
}

std::optional<ModuleOperator> equivalent(const HeisenbergRep& a, const HeisenbergRep& b, double tol) {
  if (!(a.group() == b.group()) || a.dim() != b.dim())
    throw StructuralError("equivalent: representations of different (G, d)");
  if (!a.alpha.same_automorphisms(b.alpha))
    throw StructuralError("equivalent: representations of different actions; see inequivalence_witness");
  if (a.module.rank() != b.module.rank()) {
    (void)heisenberg_to_covariant(a, tol);
    (void)heisenberg_to_covariant(b, tol);
    return std::nullopt;
  }
  const DecompositionResult da = decompose(a, tol);
  const DecompositionResult db = decompose(b, tol);
  if (da.multiplicity != db.multiplicity) return std::nullopt;
  return ModuleOperator(b.module, db.W.matrix().adjoint() * da.W.matrix());
}

std::optional<InequivalenceWitness> inequivalence_witness(const Action& alpha, const Action& beta, double tol) {
  if (!(alpha.group() == beta.group()) || alpha.dim() != beta.dim())
    throw StructuralError("inequivalence_witness: actions of different (G, d)");
  const FiniteAbelianGroup& group = alpha.group();
  const int d = alpha.dim();
  InequivalenceWitness best{group.identity(), 0, 0, matrix_unit(d, 0, 0), 0.0, 0.0};
  for (std::size_t x = 0; x < group.order(); ++x)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Mat e = matrix_unit(d, i, j);
        const double gap = op_norm(alpha.apply(x, e) - beta.apply(x, e));
        if (gap > best.gap) best = InequivalenceWitness{group.element_at(x), i, j, e, gap, 0.0};
      }
  if (best.gap <= tol) return std::nullopt;
  const HeisenbergRep sb = schrodinger(beta);
  const std::size_t x = group.index(best.x);
  best.contradiction = op_norm(sb.rho(beta.apply(x, best.a)).matrix() - sb.rho(alpha.apply(x, best.a)).matrix());
  return best;
}

HeisenbergRep random_heisenberg(const Action& alpha, std::size_t m, std::uint64_t seed) {
  HeisenbergRep base = schrodinger_sum(alpha, m);
  if (seed == 0) return base;
  Rng rng(seed);
  return conjugate(base, haar_unitary(base.module.stacked_rows(), rng));
}

std::string matrix_checksum(const Mat& m) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](long long v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      mix(std::llround(m(i, j).real() * 1e8));
      mix(std::llround(m(i, j).imag() * 1e8));
    }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace modweyl
