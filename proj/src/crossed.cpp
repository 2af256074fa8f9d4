#include "modweyl/crossed.hpp"

#include <algorithm>

#include "modweyl/random.hpp"

namespace modweyl {

CrossedElem CrossedElem::matrix_coeff(const Action& beta, FnTable values) {
  if (values.size() != beta.group().order()) throw StructuralError("crossed element needs one value per element");
  for (const auto& v : values)
    if (v.rows() != beta.dim() || v.cols() != beta.dim()) throw StructuralError("crossed element value has wrong size");
  return CrossedElem(beta, CoeffKind::Matrix, std::move(values));
}

CrossedElem CrossedElem::function_coeff(const Action& alpha, std::vector<FnTable> values) {
  const std::size_t n = alpha.group().order();
  if (values.size() != n) throw StructuralError("crossed element needs one function per element");
  std::vector<Mat> flat;
  flat.reserve(n * n);
  for (auto& fn : values) {
    if (fn.size() != n) throw StructuralError("coefficient function must be defined on the whole group");
    for (auto& v : fn) {
      if (v.rows() != alpha.dim() || v.cols() != alpha.dim())
        throw StructuralError("crossed element value has wrong size");
      flat.push_back(std::move(v));
    }
  }
  return CrossedElem(alpha, CoeffKind::Function, std::move(flat));
}

CrossedElem CrossedElem::zero(const Action& action, CoeffKind kind) {
  const std::size_t n = action.group().order();
  const std::size_t count = kind == CoeffKind::Matrix ? n : n * n;
  return CrossedElem(action, kind, std::vector<Mat>(count, Mat::Zero(action.dim(), action.dim())));
}

CrossedElem CrossedElem::unit(const Action& action, CoeffKind kind) {
  CrossedElem e = zero(action, kind);
  const Mat id = Mat::Identity(action.dim(), action.dim());
  if (kind == CoeffKind::Matrix) {
    e.values_[0] = id;
  } else {
    for (std::size_t y = 0; y < action.group().order(); ++y) e.values_[y] = id;
  }
  return e;
}

const Mat& CrossedElem::value(std::size_t x) const {
  if (kind_ != CoeffKind::Matrix) throw StructuralError("value(x) on a function-coefficient element");
  return values_.at(x);
}

const Mat& CrossedElem::value(std::size_t x, std::size_t y) const {
  if (kind_ != CoeffKind::Function) throw StructuralError("value(x, y) on a matrix-coefficient element");
  return values_.at(x * group().order() + y);
}

Mat& CrossedElem::value(std::size_t x, std::size_t y) {
  if (kind_ != CoeffKind::Function) throw StructuralError("value(x, y) on a matrix-coefficient element");
  return values_.at(x * group().order() + y);
}

FnTable CrossedElem::function_at(std::size_t x) const {
  const std::size_t n = group().order();
  FnTable out;
  out.reserve(n);
  for (std::size_t y = 0; y < n; ++y) out.push_back(value(x, y));
  return out;
}

void CrossedElem::require_compatible(const CrossedElem& other, const char* what) const {
  if (kind_ != other.kind_ || !action_.same_automorphisms(other.action_))
    throw StructuralError(std::string(what) + ": elements of different crossed products");
}

CrossedElem CrossedElem::operator+(const CrossedElem& other) const {
  require_compatible(other, "sum");
  CrossedElem out = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] += other.values_[k];
  return out;
}

CrossedElem CrossedElem::operator-(const CrossedElem& other) const {
  require_compatible(other, "difference");
  CrossedElem out = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] -= other.values_[k];
  return out;
}

CrossedElem CrossedElem::operator*(Complex c) const {
  CrossedElem out = *this;
  for (auto& v : out.values_) v *= c;
  return out;
}

CrossedElem convolve(const CrossedElem& f, const CrossedElem& g) {
  f.require_compatible(g, "convolve");
  const FiniteAbelianGroup& group = f.group();
  const Action& alpha = f.action();
  const std::size_t n = group.order();
  CrossedElem out = CrossedElem::zero(alpha, f.kind());

  if (f.kind() == CoeffKind::Matrix) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) out.values_[x] += f.values_[y] * alpha.apply(y, g.values_[group.sub(x, y)]);
    return out;
  }
  // (F * G)(x)(z) = sum_y F(y)(z) alpha_y(G(x - y)(z - y))
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = group.sub(x, y);
      for (std::size_t z = 0; z < n; ++z)
        out.values_[x * n + z] += f.values_[y * n + z] * alpha.apply(y, g.values_[xy * n + group.sub(z, y)]);
    }
  return out;
}

CrossedElem involute(const CrossedElem& f) {
  const FiniteAbelianGroup& group = f.group();
  const Action& alpha = f.action();
  const std::size_t n = group.order();
  CrossedElem out = CrossedElem::zero(alpha, f.kind());

  if (f.kind() == CoeffKind::Matrix) {
    for (std::size_t x = 0; x < n; ++x) out.values_[x] = alpha.apply(x, f.values_[group.neg(x)].adjoint());
    return out;
  }
  // F^*(x)(z) = alpha_x(F(-x)(z - x)^*)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z)
      out.values_[x * n + z] = alpha.apply(x, f.values_[group.neg(x) * n + group.sub(z, x)].adjoint());
  return out;
}

double sup_distance(const CrossedElem& f, const CrossedElem& g) {
  if (f.kind() != g.kind() || f.raw().size() != g.raw().size())
    throw StructuralError("sup_distance: elements of different crossed products");
  double worst = 0.0;
  for (std::size_t k = 0; k < f.raw().size(); ++k) worst = std::max(worst, op_norm(f.raw()[k] - g.raw()[k]));
  return worst;
}

CrossedElem green_left_inner(const ModuleVector& phi, const ModuleVector& psi) {
  require_same_home(phi.home(), psi.home(), "green_left_inner");
  if (!phi.home().twisted()) throw StructuralError("green_left_inner: vectors must live in L^2(G,A,alpha)");
  const Action& alpha = phi.home().twist();
  const FiniteAbelianGroup& group = alpha.group();
  const std::size_t n = group.order();
  const std::vector<Mat> a = phi.blocks();
  const std::vector<Mat> b = psi.blocks();

  std::vector<FnTable> values(n, FnTable(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) values[x][y] = a[y] * alpha.apply(x, b[group.sub(y, x)].adjoint());
  return CrossedElem::function_coeff(alpha, std::move(values));
}

ModuleOperator integrated_form(const CovariantRep& cov, const CrossedElem& F) {
  if (F.kind() != CoeffKind::Function) throw StructuralError("integrated form of (X, pi, R) needs C(G, M_d) coefficients");
  const std::size_t n = cov.alpha.group().order();
  if (F.group().order() != n) throw StructuralError("integrated form: group mismatch");
  Mat out = Mat::Zero(cov.module.stacked_rows(), cov.module.stacked_rows());
  for (std::size_t x = 0; x < n; ++x) out += cov.pi(F.function_at(x)).matrix() * cov.R[x].matrix();
  return ModuleOperator(cov.module, std::move(out));
}

ModuleOperator pi_full(const CrossedElem& F) {
  if (F.kind() != CoeffKind::Function) throw StructuralError("pi_full needs C(G, M_d) coefficients");
  const Action& alpha = F.action();
  const FiniteAbelianGroup& group = alpha.group();
  const std::size_t n = group.order();
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);

  // Xi(F(x)) U(x) has the single block alpha_{y^-1}(F(x)(y)) at (y, y - x).
  Mat out = Mat::Zero(l2.stacked_rows(), l2.stacked_rows());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Mat& u = alpha.unitary(y);
      out.block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(group.sub(y, x)) * d, d, d) +=
          u.adjoint() * F.value(x, y) * u;
    }
  return ModuleOperator(l2, std::move(out));
}

CrossedElem pi_full_inverse(const Action& alpha, const ModuleOperator& K) {
  const FiniteAbelianGroup& group = alpha.group();
  const std::size_t n = group.order();
  const int d = alpha.dim();
  if (K.matrix().rows() != static_cast<Eigen::Index>(n) * d)
    throw StructuralError("pi_full_inverse: operator is not on L^2(G, M_d, alpha)");
  std::vector<FnTable> values(n, FnTable(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      values[x][y] = alpha.apply(
          y, K.matrix().block(static_cast<Eigen::Index>(y) * d, static_cast<Eigen::Index>(group.sub(y, x)) * d, d, d));
  return CrossedElem::function_coeff(alpha, std::move(values));
}

Mat pi_full_matrix(const Action& alpha) {
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const auto rows = static_cast<Eigen::Index>(n * n) * d * d;
  Mat out(rows, rows);
  Eigen::Index col = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          CrossedElem F = CrossedElem::zero(alpha, CoeffKind::Function);
          F.value(x, y) = matrix_unit(d, i, j);
          out.col(col++) = flatten(pi_full(F).matrix());
        }
  return out;
}

namespace {

/// Omega on function coordinates: block x maps X -> u_x^* X u_x.
Mat omega_function_matrix(const Action& alpha) {
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const auto dim = static_cast<Eigen::Index>(n) * d * d;
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t x = 0; x < n; ++x) {
    const Mat& u = alpha.unitary(x);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Mat image = u.adjoint() * matrix_unit(d, i, j) * u;
        const Eigen::Index col = (static_cast<Eigen::Index>(x) * d + i) * d + j;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) out((static_cast<Eigen::Index>(x) * d + k) * d + l, col) = image(k, l);
      }
  }
  return out;
}

}  // namespace

Mat takai_map(const ModuleOperator& T, double* linearity_residual) {
  const HModule& home = T.home();
  if (!home.twisted()) throw StructuralError("takai_map: operator must act on L^2(G,A,alpha)");
  const Action& alpha = home.twist();
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();

  const Mat omega = omega_function_matrix(alpha);
  const Mat untwisted = omega * T.function_matrix() * omega.adjoint();

  // A right-M_d-linear map on functions G -> M_d acts as Z -> B Z on the
  // stacked rows (x, i); B is read off the j = 0 column slice.
  const auto nd = static_cast<Eigen::Index>(n) * d;
  Mat b(nd, nd);
  for (Eigen::Index r = 0; r < nd; ++r)
    for (Eigen::Index c = 0; c < nd; ++c) b(r, c) = untwisted(r * d, c * d);
  if (linearity_residual) {
    Mat rebuilt = Mat::Zero(untwisted.rows(), untwisted.cols());
    for (Eigen::Index r = 0; r < nd; ++r)
      for (Eigen::Index c = 0; c < nd; ++c)
        for (int j = 0; j < d; ++j) rebuilt(r * d + j, c * d + j) = b(r, c);
    *linearity_residual = op_norm(untwisted - rebuilt);
  }

  // K(L^2(G) (x) A_A) = M_|G| (x) M_d: sum_{x,y} E_xy (x) B_xy.
  Mat kron = Mat::Zero(nd, nd);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const Mat bxy = b.block(static_cast<Eigen::Index>(x) * d, static_cast<Eigen::Index>(y) * d, d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          kron(static_cast<Eigen::Index>(x) * d + i, static_cast<Eigen::Index>(y) * d + j) += bxy(i, j);
    }
  return kron;
}

double TakaiReport::worst_residual() const {
  double rank_gap = (map_rank == rhs_dimension && composite_rank == lhs_dimension && lhs_dimension == rhs_dimension)
                        ? 0.0
                        : 1.0;
  return std::max({multiplicativity, adjoint, unitality, linearity, rank_gap});
}

bool TakaiReport::pass(double tol) const { return worst_residual() <= tol; }

TakaiReport takai_iso(const Action& alpha, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = alpha.group().order();
  const int d = alpha.dim();
  const HModule l2 = HModule::l2(alpha);
  Rng rng(seed);
  TakaiReport report;
  report.lhs_dimension = n * n * static_cast<std::size_t>(d * d);
  report.rhs_dimension = report.lhs_dimension;

  auto tau = [&](const ModuleOperator& t) {
    double lin = 0.0;
    Mat out = takai_map(t, &lin);
    report.linearity = std::max(report.linearity, lin);
    return out;
  };

  const ModuleOperator id = ModuleOperator::identity(l2);
  report.unitality = op_norm(tau(id) - Mat::Identity(l2.stacked_rows(), l2.stacked_rows()));
  for (std::size_t s = 0; s < samples; ++s) {
    const ModuleOperator a = random_operator(l2, rng);
    const ModuleOperator b = random_operator(l2, rng);
    const Mat ta = tau(a);
    const Mat tb = tau(b);
    const double scale = std::max(1.0, op_norm(ta) * op_norm(tb));
    report.multiplicativity = std::max(report.multiplicativity, op_norm(tau(a * b) - ta * tb) / scale);
    report.adjoint = std::max(report.adjoint, op_norm(tau(a.adjoint()) - ta.adjoint()) / std::max(1.0, op_norm(ta)));
  }

  const auto nd = l2.stacked_rows();
  Mat images(nd * nd, nd * nd);
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < nd; ++r)
    for (Eigen::Index c = 0; c < nd; ++c) {
      Mat e = Mat::Zero(nd, nd);
      e(r, c) = 1.0;
      images.col(col++) = flatten(tau(ModuleOperator(l2, e)));
    }
  report.map_rank = numerical_rank(images);

  const Mat pf = pi_full_matrix(alpha);
  Mat composite(nd * nd, pf.cols());
  for (Eigen::Index k = 0; k < pf.cols(); ++k) {
    Mat op(nd, nd);
    for (Eigen::Index r = 0; r < nd; ++r)
      for (Eigen::Index c = 0; c < nd; ++c) op(r, c) = pf(r * nd + c, k);
    composite.col(k) = flatten(tau(ModuleOperator(l2, op)));
  }
  report.composite_rank = numerical_rank(composite);
  return report;
}

}  // namespace modweyl
