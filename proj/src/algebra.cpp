#include "modweyl/algebra.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/SVD>

namespace modweyl {

double op_norm(const Mat& t) {
  if (t.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(t);
  return svd.singularValues()(0);
}

Mat rank_one(const Vec& v, const Vec& w) {
  if (v.size() != w.size())
    throw StructuralError("rank_one: vectors of length " + std::to_string(v.size()) + " and " +
                          std::to_string(w.size()));
  return v * w.adjoint();
}

Mat matrix_unit(int d, int i, int j) {
  Mat e = Mat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

bool is_positive(const Mat& t, double tol) {
  if (t.rows() != t.cols()) return false;
  if (op_norm(t - t.adjoint()) > tol) return false;
  const Mat herm = 0.5 * (t + t.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> eig(herm, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

std::size_t numerical_rank(const Mat& m, double rel_cutoff) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) * rel_cutoff * s(0);
  return static_cast<std::size_t>((s.array() > cutoff).count());
}

Vec flatten(const Mat& m) {
  Vec out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

std::size_t ideal_dimension(const Mat& t) {
  const int d = static_cast<int>(t.rows());
  Mat span(d * d, d * d * d * d);
  Eigen::Index col = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) span.col(col++) = flatten(matrix_unit(d, i, j) * t * matrix_unit(d, k, l));
  return numerical_rank(span);
}

Action Action::trivial(const FiniteAbelianGroup& group, int d) {
  if (d < 1) throw StructuralError("matrix dimension must be >= 1");
  return Action(group, d, std::vector<Mat>(group.order(), Mat::Identity(d, d)));
}

Action Action::from_generators(const FiniteAbelianGroup& group, const std::vector<Mat>& generators, double tol) {
  if (generators.size() != group.num_factors()) {
    throw StructuralError("action needs one generator per cyclic factor: got " + std::to_string(generators.size()) +
                          ", group has " + std::to_string(group.num_factors()));
  }
  if (generators.empty()) throw StructuralError("no generators");
  const Eigen::Index d = generators.front().rows();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (generators[k].rows() != d || generators[k].cols() != d || d < 1)
      throw StructuralError("generator " + std::to_string(k) + " is " + std::to_string(generators[k].rows()) + "x" +
                            std::to_string(generators[k].cols()) + ", expected " + std::to_string(d) + "x" +
                            std::to_string(d));
  }
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const double res = op_norm(generators[k] * generators[k].adjoint() - Mat::Identity(d, d));
    if (res > tol) {
      std::ostringstream msg;
      msg << "action generator " << k << " is not unitary (residual " << res << ")";
      throw ValidationError(msg.str());
    }
  }

  std::vector<Mat> table(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) {
    const GroupElement x = group.element_at(i);
    Mat u = Mat::Identity(d, d);
    for (std::size_t k = 0; k < generators.size(); ++k)
      for (int p = 0; p < x.coords[k]; ++p) u = u * generators[k];
    table[i] = std::move(u);
  }
  auto result = validate_action(group, std::move(table), tol);
  if (auto* report = std::get_if<ActionReport>(&result)) throw ValidationError(report->message);
  return std::get<Action>(std::move(result));
}

bool Action::is_trivial(double tol) const { return same_automorphisms(trivial(group_, d_), tol); }

Mat Action::apply(std::size_t x, const Mat& t) const {
  if (t.rows() != d_ || t.cols() != d_)
    throw StructuralError("act: matrix is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                          ", action is on M_" + std::to_string(d_));
  return table_.at(x) * t * table_[x].adjoint();
}

bool Action::same_automorphisms(const Action& other, double tol) const {
  if (!(group_ == other.group_) || d_ != other.d_) return false;
  for (std::size_t x = 0; x < group_.order(); ++x)
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        const Mat e = matrix_unit(d_, i, j);
        if (op_norm(apply(x, e) - other.apply(x, e)) > tol) return false;
      }
  return true;
}

std::variant<Action, ActionReport> validate_action(const FiniteAbelianGroup& group, std::vector<Mat> table,
                                                   double tol) {
  ActionReport report;
  if (table.size() != group.order() || table.empty()) {
    report.failure = ActionReport::Failure::Shape;
    report.message = "unitary table has " + std::to_string(table.size()) + " entries, group has order " +
                     std::to_string(group.order());
    return report;
  }
  const Eigen::Index d = table.front().rows();
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x].rows() != d || table[x].cols() != d || d < 1) {
      report.failure = ActionReport::Failure::Shape;
      report.x = x;
      report.message = "unitary table entry " + to_string(group.element_at(x)) + " has the wrong shape";
      return report;
    }
  }
  const Mat id = Mat::Identity(d, d);

  auto fail = [&](ActionReport::Failure kind, std::size_t x, std::size_t y, double res, const std::string& what) {
    std::ostringstream msg;
    msg << what << " (residual " << res << ")";
    return ActionReport{kind, x, y, res, msg.str()};
  };

  const double at_identity = op_norm(table[0] - id);
  if (at_identity > tol)
    return fail(ActionReport::Failure::IdentityMismatch, 0, 0, at_identity, "u_e is not the identity");

  std::size_t worst_x = 0;
  double worst = 0.0;
  for (std::size_t x = 0; x < table.size(); ++x) {
    const double res = op_norm(table[x] * table[x].adjoint() - id);
    if (res > worst) worst = res, worst_x = x;
  }
  if (worst > tol)
    return fail(ActionReport::Failure::NonUnitary, worst_x, worst_x, worst,
                "u_" + to_string(group.element_at(worst_x)) + " is not unitary");

  std::size_t worst_y = 0;
  worst = 0.0;
  for (std::size_t x = 0; x < table.size(); ++x)
    for (std::size_t y = 0; y < table.size(); ++y) {
      const double res = op_norm(table[group.add(x, y)] - table[x] * table[y]);
      if (res > worst) worst = res, worst_x = x, worst_y = y;
    }
  if (worst > tol)
    return fail(ActionReport::Failure::NotHomomorphism, worst_x, worst_y, worst,
                "u is not a homomorphism at x=" + to_string(group.element_at(worst_x)) +
                    ", y=" + to_string(group.element_at(worst_y)));

  return Action(group, static_cast<int>(d), std::move(table));
}

Mat act(const Action& alpha, const GroupElement& x, const Mat& t) { return alpha.apply(x, t); }

}  // namespace modweyl
