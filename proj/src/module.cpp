#include "modweyl/module.hpp"

#include <cmath>

namespace modweyl {

HModule HModule::free(std::size_t rank, int d) {
  if (rank < 1) throw StructuralError("module rank must be >= 1");
  if (d < 1) throw StructuralError("matrix dimension must be >= 1");
  return HModule(rank, d, nullptr);
}

HModule HModule::l2(const Action& alpha) {
  return HModule(alpha.group().order(), alpha.dim(), std::make_shared<const Action>(alpha));
}

const Action& HModule::twist() const {
  if (!twist_) throw StructuralError("module carries no twist");
  return *twist_;
}

bool operator==(const HModule& a, const HModule& b) {
  if (a.rank_ != b.rank_ || a.d_ != b.d_) return false;
  if (a.twist_ == b.twist_) return true;
  if (!a.twist_ || !b.twist_) return false;
  return a.twist_->same_automorphisms(*b.twist_);
}

void require_same_home(const HModule& a, const HModule& b, const char* what) {
  if (!(a == b)) throw StructuralError(std::string(what) + ": vectors or operators live in different modules");
}

// ---------------------------------------------------------------------------

ModuleVector::ModuleVector(HModule home, Mat stacked) : home_(std::move(home)), stacked_(std::move(stacked)) {
  if (stacked_.rows() != home_.stacked_rows() || stacked_.cols() != home_.dim())
    throw StructuralError("module vector coordinates are " + std::to_string(stacked_.rows()) + "x" +
                          std::to_string(stacked_.cols()) + ", expected " + std::to_string(home_.stacked_rows()) +
                          "x" + std::to_string(home_.dim()));
}

ModuleVector ModuleVector::zero(const HModule& home) {
  return ModuleVector(home, Mat::Zero(home.stacked_rows(), home.dim()));
}

ModuleVector ModuleVector::from_blocks(const HModule& home, const std::vector<Mat>& blocks) {
  if (blocks.size() != home.rank())
    throw StructuralError("expected " + std::to_string(home.rank()) + " blocks, got " + std::to_string(blocks.size()));
  const int d = home.dim();
  Mat stacked(home.stacked_rows(), d);
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    if (blocks[x].rows() != d || blocks[x].cols() != d) throw StructuralError("block has the wrong size");
    stacked.block(static_cast<Eigen::Index>(x) * d, 0, d, d) =
        home.twisted() ? Mat(home.twist().unitary(x).adjoint() * blocks[x] * home.twist().unitary(x)) : blocks[x];
  }
  return ModuleVector(home, std::move(stacked));
}

ModuleVector ModuleVector::delta(const HModule& home, std::size_t x, const Mat& a) {
  std::vector<Mat> blocks(home.rank(), Mat::Zero(home.dim(), home.dim()));
  blocks.at(x) = a;
  return from_blocks(home, blocks);
}

Mat ModuleVector::untwisted_block(std::size_t x) const {
  const int d = home_.dim();
  return stacked_.block(static_cast<Eigen::Index>(x) * d, 0, d, d);
}

Mat ModuleVector::block(std::size_t x) const {
  Mat b = untwisted_block(x);
  if (!home_.twisted()) return b;
  const Mat& u = home_.twist().unitary(x);
  return u * b * u.adjoint();
}

std::vector<Mat> ModuleVector::blocks() const {
  std::vector<Mat> out;
  out.reserve(home_.rank());
  for (std::size_t x = 0; x < home_.rank(); ++x) out.push_back(block(x));
  return out;
}

ModuleVector ModuleVector::operator+(const ModuleVector& other) const {
  require_same_home(home_, other.home_, "vector sum");
  return ModuleVector(home_, stacked_ + other.stacked_);
}

ModuleVector ModuleVector::operator-(const ModuleVector& other) const {
  require_same_home(home_, other.home_, "vector difference");
  return ModuleVector(home_, stacked_ - other.stacked_);
}

ModuleVector ModuleVector::operator*(Complex c) const { return ModuleVector(home_, stacked_ * c); }

// ---------------------------------------------------------------------------

ModuleOperator::ModuleOperator(HModule home, Mat matrix) : home_(std::move(home)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != home_.stacked_rows() || matrix_.cols() != home_.stacked_rows())
    throw StructuralError("module operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                          std::to_string(matrix_.cols()) + ", expected square of size " +
                          std::to_string(home_.stacked_rows()));
}

ModuleOperator ModuleOperator::identity(const HModule& home) {
  return ModuleOperator(home, Mat::Identity(home.stacked_rows(), home.stacked_rows()));
}

ModuleOperator ModuleOperator::zero(const HModule& home) {
  return ModuleOperator(home, Mat::Zero(home.stacked_rows(), home.stacked_rows()));
}

ModuleVector ModuleOperator::apply(const ModuleVector& v) const {
  if (v.home().rank() != home_.rank() || v.home().dim() != home_.dim())
    throw StructuralError("operator applied to a vector of a module with different rank");
  return ModuleVector(home_, matrix_ * v.stacked());
}

ModuleOperator ModuleOperator::adjoint() const { return ModuleOperator(home_, matrix_.adjoint()); }

ModuleOperator ModuleOperator::operator*(const ModuleOperator& other) const {
  if (other.home_.stacked_rows() != home_.stacked_rows()) throw StructuralError("operator product: size mismatch");
  return ModuleOperator(home_, matrix_ * other.matrix_);
}

ModuleOperator ModuleOperator::operator+(const ModuleOperator& other) const {
  require_same_home(home_, other.home_, "operator sum");
  return ModuleOperator(home_, matrix_ + other.matrix_);
}

ModuleOperator ModuleOperator::operator-(const ModuleOperator& other) const {
  require_same_home(home_, other.home_, "operator difference");
  return ModuleOperator(home_, matrix_ - other.matrix_);
}

ModuleOperator ModuleOperator::operator*(Complex c) const { return ModuleOperator(home_, matrix_ * c); }

Mat ModuleOperator::function_matrix() const {
  const int d = home_.dim();
  const std::size_t n = home_.rank();
  const auto dim = static_cast<Eigen::Index>(home_.complex_dimension());
  Mat out(dim, dim);
  Eigen::Index col = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j, ++col) {
        const ModuleVector image = apply(ModuleVector::delta(home_, x, matrix_unit(d, i, j)));
        Eigen::Index row = 0;
        for (std::size_t y = 0; y < n; ++y) {
          const Mat b = image.block(y);
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) out(row++, col) = b(k, l);
        }
      }
  return out;
}

// ---------------------------------------------------------------------------

Mat inner(const ModuleVector& phi, const ModuleVector& psi) {
  require_same_home(phi.home(), psi.home(), "inner product");
  return phi.stacked().adjoint() * psi.stacked();
}

Mat inner_twisted(const ModuleVector& phi, const ModuleVector& psi) {
  if (!phi.home().twisted()) throw StructuralError("inner_twisted: module is not L^2(G,A,alpha)");
  return inner(phi, psi);
}

double norm(const ModuleVector& phi) { return std::sqrt(op_norm(inner(phi, phi))); }

ModuleVector right_act(const ModuleVector& phi, const Mat& a) {
  if (a.rows() != phi.home().dim() || a.cols() != phi.home().dim())
    throw StructuralError("right action by a matrix of the wrong size");
  return ModuleVector(phi.home(), phi.stacked() * a);
}

ModuleVector untwist(const ModuleVector& phi) {
  if (!phi.home().twisted()) throw StructuralError("untwist: input is not in a twisted module");
  const Action& alpha = phi.home().twist();
  return ModuleVector(HModule::l2(Action::trivial(alpha.group(), alpha.dim())), phi.stacked());
}

ModuleVector retwist(const ModuleVector& phi, const Action& alpha) {
  if (phi.home().twisted() && !phi.home().twist().is_trivial())
    throw StructuralError("retwist: input must live in an untwisted module");
  const HModule target = HModule::l2(alpha);
  if (phi.home().rank() != target.rank() || phi.home().dim() != target.dim())
    throw StructuralError("retwist: rank or dimension mismatch");
  return ModuleVector(target, phi.stacked());
}

ModuleOperator theta(const ModuleVector& zeta, const ModuleVector& eta) {
  if (zeta.home().rank() != eta.home().rank() || zeta.home().dim() != eta.home().dim())
    throw StructuralError("theta: vectors from modules of different rank");
  return ModuleOperator(zeta.home(), zeta.stacked() * eta.stacked().adjoint());
}

HModule direct_sum(std::span<const HModule> modules) {
  if (modules.empty()) throw StructuralError("direct sum of zero modules");
  if (modules.size() == 1) return modules.front();
  std::size_t rank = 0;
  for (const auto& m : modules) {
    if (m.dim() != modules.front().dim()) throw StructuralError("direct sum of modules over different M_d");
    rank += m.rank();
  }
  return HModule::free(rank, modules.front().dim());
}

ModuleVector direct_sum(std::span<const ModuleVector> vectors) {
  if (vectors.empty()) throw StructuralError("direct sum of zero vectors");
  std::vector<HModule> homes;
  Eigen::Index rows = 0;
  for (const auto& v : vectors) homes.push_back(v.home()), rows += v.stacked().rows();
  const HModule home = direct_sum(homes);
  Mat stacked(rows, home.dim());
  Eigen::Index at = 0;
  for (const auto& v : vectors) {
    stacked.middleRows(at, v.stacked().rows()) = v.stacked();
    at += v.stacked().rows();
  }
  return ModuleVector(home, std::move(stacked));
}

ModuleOperator direct_sum(std::span<const ModuleOperator> operators) {
  if (operators.empty()) throw StructuralError("direct sum of zero operators");
  std::vector<HModule> homes;
  Eigen::Index size = 0;
  for (const auto& t : operators) homes.push_back(t.home()), size += t.matrix().rows();
  const HModule home = direct_sum(homes);
  Mat m = Mat::Zero(size, size);
  Eigen::Index at = 0;
  for (const auto& t : operators) {
    m.block(at, at, t.matrix().rows(), t.matrix().rows()) = t.matrix();
    at += t.matrix().rows();
  }
  return ModuleOperator(home, std::move(m));
}

}  // namespace modweyl
