#include "modweyl/reduction.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace modweyl {

RankOneProj::RankOneProj(Vec v) : v_(std::move(v)) {
  const double n = v_.norm();
  if (v_.size() == 0 || n == 0.0) throw StructuralError("rank-one projection needs a nonzero vector");
  v_ /= n;
}

RankOneProj RankOneProj::basis(int d, int i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return RankOneProj(std::move(v));
}

Complex f_P(const RankOneProj& p, const Mat& s) {
  if (s.rows() != p.dim() || s.cols() != p.dim()) throw StructuralError("f_P: matrix dimension mismatch");
  return p.vector().dot(s * p.vector());
}

Complex reduced_inner(const RankOneProj& p, const ModuleVector& zeta, const ModuleVector& eta) {
  return f_P(p, inner(zeta, eta));
}

Vec ReducedSpace::coordinates(const ModuleVector& zeta) const {
  Vec c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) c(static_cast<Eigen::Index>(k)) = reduced_inner(proj, basis[k], zeta);
  return c;
}

std::vector<ModuleVector> orthonormalize(std::span<const ModuleVector> candidates, const RankOneProj& p,
                                         double drop) {
  std::vector<ModuleVector> remaining(candidates.begin(), candidates.end());
  std::vector<ModuleVector> basis;
  while (!remaining.empty()) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      const double nk = std::sqrt(std::max(0.0, reduced_inner(p, remaining[k], remaining[k]).real()));
      if (nk > best_norm) best_norm = nk, best = k;
    }
    if (best_norm < drop) break;
    ModuleVector q = remaining[best] * Complex(1.0 / best_norm);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& r : remaining) r = r - q * reduced_inner(p, q, r);
    basis.push_back(std::move(q));
  }
  return basis;
}

ReducedSpace reduce(const HModule& x, const RankOneProj& p) {
  if (p.dim() != x.dim()) throw StructuralError("reduce: projection acts on C^" + std::to_string(p.dim()) +
                                                ", module is over M_" + std::to_string(x.dim()));
  const Mat pm = p.matrix();
  std::vector<ModuleVector> candidates;
  for (std::size_t k = 0; k < x.rank(); ++k)
    for (int i = 0; i < x.dim(); ++i)
      for (int j = 0; j < x.dim(); ++j)
        candidates.push_back(right_act(ModuleVector::delta(x, k, matrix_unit(x.dim(), i, j)), pm));
  ReducedSpace red{x, p, orthonormalize(candidates, p)};
  if (red.basis.empty()) throw StructuralError("reduce: module is trivial");
  return red;
}

Mat restrict_operator(const ModuleOperator& t, const ReducedSpace& red) {
  require_same_home(t.home(), red.parent, "restrict_operator");
  const auto k = static_cast<Eigen::Index>(red.dimension());
  Mat out(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const ModuleVector image = t.apply(red.basis[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < k; ++i) out(i, j) = reduced_inner(red.proj, red.basis[static_cast<std::size_t>(i)], image);
  }
  return out;
}

ModuleOperator extend_operator(const Mat& l, const ReducedSpace& domain, const ReducedSpace& codomain) {
  if (l.rows() != static_cast<Eigen::Index>(codomain.dimension()) ||
      l.cols() != static_cast<Eigen::Index>(domain.dimension()))
    throw StructuralError("extend_operator: matrix is " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                          ", reduced spaces have dimensions " + std::to_string(codomain.dimension()) + " and " +
                          std::to_string(domain.dimension()));
  if (domain.parent.rank() != codomain.parent.rank() || domain.parent.dim() != codomain.parent.dim())
    throw StructuralError("extend_operator: modules of different rank");
  Mat acc = Mat::Zero(codomain.parent.stacked_rows(), codomain.parent.stacked_rows());
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    for (Eigen::Index j = 0; j < l.cols(); ++j)
      if (l(i, j) != Complex(0.0))
        acc += l(i, j) * theta(codomain.basis[static_cast<std::size_t>(i)], domain.basis[static_cast<std::size_t>(j)]).matrix();
  return ModuleOperator(codomain.parent, std::move(acc));
}

ModuleOperator extend_operator(const Mat& l, const ReducedSpace& red) { return extend_operator(l, red, red); }

ModuleOperator complement_projection(std::span<const ModuleVector> span, const HModule& x) {
  if (span.empty()) throw StructuralError("complement_projection: empty spanning set");
  for (const auto& v : span) require_same_home(v.home(), x, "complement_projection");
  const RankOneProj p = RankOneProj::basis(x.dim(), 0);
  const ReducedSpace red = reduce(x, p);

  // Y.P is spanned by y . e_ij . P over the spanning vectors y.
  std::vector<ModuleVector> candidates;
  for (const auto& y : span)
    for (int i = 0; i < x.dim(); ++i)
      for (int j = 0; j < x.dim(); ++j) candidates.push_back(right_act(y, matrix_unit(x.dim(), i, j) * p.matrix()));
  const std::vector<ModuleVector> y_basis = orthonormalize(candidates, p);
  if (y_basis.empty()) throw StructuralError("complement_projection: spanning set generates the zero submodule");

  Mat q = Mat::Zero(static_cast<Eigen::Index>(red.dimension()), static_cast<Eigen::Index>(red.dimension()));
  for (const auto& b : y_basis) {
    const Vec c = red.coordinates(b);
    q += c * c.adjoint();
  }
  return extend_operator(q, red);
}

ModuleVector unit_vector_for_P(const HModule& x, const RankOneProj& p) {
  const ReducedSpace red = reduce(x, p);
  const ModuleVector& eta = red.basis.front();
  return eta * Complex(1.0 / std::sqrt(reduced_inner(p, eta, eta).real()));
}

std::size_t commutant_dimension(const ReducedSpace& red) {
  const auto k = static_cast<Eigen::Index>(red.dimension());
  // C commutes with every E_ij  <=>  (I (x) E - E^T (x) I) vec(C) = 0 for all E.
  std::vector<Mat> generators;
  for (std::size_t i = 0; i < red.dimension(); ++i)
    for (std::size_t j = 0; j < red.dimension(); ++j)
      generators.push_back(restrict_operator(theta(red.basis[i], red.basis[j]), red));
  Mat system(static_cast<Eigen::Index>(generators.size()) * k * k, k * k);
  Eigen::Index row = 0;
  for (const auto& e : generators) {
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b)
        for (Eigen::Index c = 0; c < k; ++c)
          for (Eigen::Index dd = 0; dd < k; ++dd)
            // row-major vec(C) index a*k + b; (E C - C E)_{ab} coefficient on C_cd
            system(row + a * k + b, c * k + dd) = (dd == b ? e(a, c) : Complex(0.0)) - (c == a ? e(dd, b) : Complex(0.0));
    row += k * k;
  }
  return static_cast<std::size_t>(k * k) - numerical_rank(system);
}

}  // namespace modweyl
