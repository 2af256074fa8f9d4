#include "doctest.h"
#include "modweyl/crossed.hpp"
#include "modweyl/random.hpp"
#include "support.hpp"

using namespace modweyl;
using namespace testing_support;

namespace {

std::vector<Action> sample_actions() {
  const FiniteAbelianGroup z2({2}), z3({3}), k4({2, 2});
  return {
      Action::trivial(z2, 1),
      Action::from_generators(z2, {hadamard()}),
      Action::from_generators(z3, {diag2(1.0, root_of_unity(3))}),
      Action::from_generators(k4, {pauli_x(), Mat(-pauli_x())}),
  };
}

CrossedElem random_matrix_elem(const Action& beta, Rng& rng) {
  return CrossedElem::matrix_coeff(beta, random_fn(beta.group().order(), beta.dim(), rng));
}

CrossedElem random_function_elem(const Action& alpha, Rng& rng) {
  std::vector<FnTable> v;
  for (std::size_t x = 0; x < alpha.group().order(); ++x) v.push_back(random_fn(alpha.group().order(), alpha.dim(), rng));
  return CrossedElem::function_coeff(alpha, std::move(v));
}

CrossedElem point(const Action& beta, std::size_t x, const Mat& a) {
  FnTable v(beta.group().order(), Mat::Zero(beta.dim(), beta.dim()));
  v[x] = a;
  return CrossedElem::matrix_coeff(beta, v);
}

}  // namespace

TEST_CASE("group algebra of Z2") {
  const FiniteAbelianGroup z2({2});
  const Action iota = Action::trivial(z2, 1);
  const CrossedElem d1 = point(iota, 1, Mat::Identity(1, 1));
  const CrossedElem sq = convolve(d1, d1);
  CHECK(sq.value(0)(0, 0) == Complex(1.0));
  CHECK(sq.value(1)(0, 0) == Complex(0.0));

  Rng rng(1);
  const CrossedElem f = random_matrix_elem(iota, rng);
  const CrossedElem fs = involute(f);
  for (std::size_t x = 0; x < 2; ++x) CHECK(fs.value(x)(0, 0) == std::conj(f.value(z2.neg(x))(0, 0)));
}

TEST_CASE("convolution and involution on point masses") {
  for (const Action& beta : sample_actions()) {
    const FiniteAbelianGroup& g = beta.group();
    const int d = beta.dim();
    Rng rng(2);
    const Mat a = random_ginibre(d, d, rng), b = random_ginibre(d, d, rng);
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t y = 0; y < g.order(); ++y) {
        const CrossedElem c = convolve(point(beta, x, a), point(beta, y, b));
        const CrossedElem expected = point(beta, g.add(x, y), a * beta.unitary(x) * b * beta.unitary(x).adjoint());
        CHECK(sup_distance(c, expected) < 1e-12);
      }
    for (std::size_t x = 0; x < g.order(); ++x) {
      const std::size_t mx = g.neg(x);
      const Mat expected = beta.unitary(mx) * a.adjoint() * beta.unitary(mx).adjoint();
      CHECK(sup_distance(involute(point(beta, x, a)), point(beta, mx, expected)) < 1e-12);
    }
    CHECK(sup_distance(involute(point(beta, 0, a)), point(beta, 0, a.adjoint())) == 0.0);
  }
}

TEST_CASE("crossed product laws for both coefficient kinds") {
  for (const Action& alpha : sample_actions()) {
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
      for (CoeffKind kind : {CoeffKind::Matrix, CoeffKind::Function}) {
        auto draw = [&] { return kind == CoeffKind::Matrix ? random_matrix_elem(alpha, rng) : random_function_elem(alpha, rng); };
        const CrossedElem f = draw(), g = draw(), h = draw();
        const CrossedElem one = CrossedElem::unit(alpha, kind);
        CHECK(sup_distance(convolve(convolve(f, g), h), convolve(f, convolve(g, h))) < 1e-10);
        CHECK(sup_distance(convolve(one, f), f) < 1e-12);
        CHECK(sup_distance(convolve(f, one), f) < 1e-12);
        CHECK(sup_distance(involute(involute(f)), f) < 1e-12);
        CHECK(sup_distance(involute(convolve(f, g)), convolve(involute(g), involute(f))) < 1e-10);
        CHECK(sup_distance(convolve(f + g, h), convolve(f, h) + convolve(g, h)) < 1e-10);
        CHECK(sup_distance(involute(f * Complex(0, 2)), involute(f) * Complex(0, -2)) < 1e-12);
      }
    }
  }
}

TEST_CASE("function-coefficient convolution matches the lt (x) alpha formula") {
  for (const Action& alpha : sample_actions()) {
    const FiniteAbelianGroup& g = alpha.group();
    const std::size_t n = g.order();
    Rng rng(4);
    const CrossedElem f = random_function_elem(alpha, rng), h = random_function_elem(alpha, rng);
    const CrossedElem c = convolve(f, h);
    const CrossedElem s = involute(f);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z) {
        Mat sum = Mat::Zero(alpha.dim(), alpha.dim());
        for (std::size_t y = 0; y < n; ++y)
          sum += f.value(y, z) * alpha.unitary(y) * h.value(g.sub(x, y), g.sub(z, y)) * alpha.unitary(y).adjoint();
        CHECK(max_abs(c.value(x, z), sum) < 1e-12);
        const Mat star = alpha.unitary(x) * f.value(g.neg(x), g.sub(z, x)).adjoint() * alpha.unitary(x).adjoint();
        CHECK(max_abs(s.value(x, z), star) < 1e-12);
      }
  }
}

TEST_CASE("mismatched crossed elements are rejected") {
  const FiniteAbelianGroup z2({2}), z3({3});
  Rng rng(5);
  const CrossedElem a = random_matrix_elem(Action::trivial(z2, 1), rng);
  const CrossedElem b = random_matrix_elem(Action::trivial(z3, 1), rng);
  CHECK_THROWS_AS(convolve(a, b), StructuralError);
  const CrossedElem c = random_function_elem(Action::trivial(z2, 1), rng);
  CHECK_THROWS_AS(convolve(a, c), StructuralError);
  const CrossedElem d = random_matrix_elem(Action::from_generators(z2, {diag2(1.0, -1.0)}), rng);
  const CrossedElem e = random_matrix_elem(Action::trivial(z2, 2), rng);
  CHECK_THROWS_AS(convolve(d, e), StructuralError);
}

TEST_CASE("Green's left inner product on point masses") {
  for (const Action& alpha : sample_actions()) {
    const FiniteAbelianGroup& g = alpha.group();
    const int d = alpha.dim();
    const HModule l2 = HModule::l2(alpha);
    Rng rng(6);
    const Mat a0 = random_ginibre(d, d, rng), b0 = random_ginibre(d, d, rng);
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b) {
        const CrossedElem e = green_left_inner(ModuleVector::delta(l2, a, a0), ModuleVector::delta(l2, b, b0));
        const std::size_t x0 = g.sub(a, b);
        for (std::size_t x = 0; x < g.order(); ++x)
          for (std::size_t y = 0; y < g.order(); ++y) {
            const Mat expected = (x == x0 && y == a) ? Mat(a0 * alpha.unitary(x0) * b0.adjoint() * alpha.unitary(x0).adjoint())
                                                     : Mat(Mat::Zero(d, d));
            CHECK(max_abs(e.value(x, y), expected) < 1e-12);
          }
      }
    const ModuleVector v = random_vector(l2, rng);
    CHECK(sup_distance(green_left_inner(v, ModuleVector::zero(l2)), CrossedElem::zero(alpha, CoeffKind::Function)) == 0.0);
  }
}

TEST_CASE("Green's left inner product is the classical kernel for d = 1") {
  const FiniteAbelianGroup z2({2});
  const HModule l2 = HModule::l2(Action::trivial(z2, 1));
  Rng rng(7);
  const ModuleVector phi = random_vector(l2, rng), psi = random_vector(l2, rng);
  const CrossedElem e = green_left_inner(phi, psi);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      CHECK(std::abs(e.value(x, y)(0, 0) - phi.stacked()(static_cast<Eigen::Index>(y), 0) *
                                                  std::conj(psi.stacked()(static_cast<Eigen::Index>(z2.sub(y, x)), 0))) < 1e-14);
}

TEST_CASE("pi_full is the integrated form of Green's pair") {
  for (const Action& alpha : sample_actions()) {
    const CovariantRep green = green_covariant(alpha);
    Rng rng(8);
    for (int k = 0; k < 5; ++k) {
      const CrossedElem f = random_function_elem(alpha, rng);
      CHECK(max_abs(pi_full(f).matrix(), integrated_form(green, f).matrix()) < 1e-12);
    }
    const HModule l2 = HModule::l2(alpha);
    CHECK(max_abs(pi_full(CrossedElem::unit(alpha, CoeffKind::Function)).matrix(),
                  Mat::Identity(l2.stacked_rows(), l2.stacked_rows())) < 1e-14);
  }
}

TEST_CASE("pi_full is a bijective *-homomorphism onto the compacts") {
  const FiniteAbelianGroup z2({2});
  CHECK(numerical_rank(pi_full_matrix(Action::trivial(z2, 1))) == 4);
  for (const Action& alpha : sample_actions()) {
    const auto nd = static_cast<std::size_t>(HModule::l2(alpha).stacked_rows());
    const Mat pf = pi_full_matrix(alpha);
    CHECK(static_cast<std::size_t>(pf.cols()) == nd * nd);
    CHECK(numerical_rank(pf) == nd * nd);
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
      const CrossedElem f = random_function_elem(alpha, rng), h = random_function_elem(alpha, rng);
      CHECK(max_abs(pi_full(convolve(f, h)).matrix(), pi_full(f).matrix() * pi_full(h).matrix()) < 1e-10);
      CHECK(max_abs(pi_full(involute(f)).matrix(), pi_full(f).matrix().adjoint()) < 1e-12);
      CHECK(sup_distance(pi_full_inverse(alpha, pi_full(f)), f) < 1e-12);
      const ModuleOperator t = random_operator(HModule::l2(alpha), rng);
      CHECK(max_abs(pi_full(pi_full_inverse(alpha, t)).matrix(), t.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("imprimitivity compatibility and positivity") {
  for (const Action& alpha : sample_actions()) {
    const HModule l2 = HModule::l2(alpha);
    Rng rng(10);
    for (int k = 0; k < 50; ++k) {
      const ModuleVector phi = random_vector(l2, rng), psi = random_vector(l2, rng), theta_v = random_vector(l2, rng);
      const ModuleVector lhs = pi_full(green_left_inner(phi, psi)).apply(theta_v);
      const ModuleVector rhs = right_act(phi, inner(psi, theta_v));
      CHECK(max_abs(lhs.stacked(), rhs.stacked()) < 1e-10);
      CHECK(is_positive(pi_full(green_left_inner(phi, phi)).matrix()));
      // The left inner product realizes Theta_{phi,psi}.
      CHECK(max_abs(pi_full(green_left_inner(phi, psi)).matrix(), theta(phi, psi).matrix()) < 1e-10);
    }
  }
}

TEST_CASE("left inner products span the crossed product") {
  const FiniteAbelianGroup z2({2});
  const Action alpha = Action::from_generators(z2, {hadamard()});
  const HModule l2 = HModule::l2(alpha);
  const Eigen::Index dim = 16;
  Rng rng(11);
  Mat span(dim, dim + 4);
  for (Eigen::Index k = 0; k < span.cols(); ++k) {
    const CrossedElem e = green_left_inner(random_vector(l2, rng), random_vector(l2, rng));
    Eigen::Index at = 0;
    for (const Mat& v : e.raw())
      for (Eigen::Index i = 0; i < v.rows(); ++i)
        for (Eigen::Index j = 0; j < v.cols(); ++j) span(at++, k) = v(i, j);
  }
  CHECK(numerical_rank(span) == static_cast<std::size_t>(dim));
}

TEST_CASE("Takai chain") {
  const FiniteAbelianGroup k4({2, 2});
  const Action alpha = Action::from_generators(k4, {pauli_x(), Mat(-pauli_x())});
  const TakaiReport r = takai_iso(alpha, 5, 1);
  CHECK(r.lhs_dimension == 64);
  CHECK(r.rhs_dimension == 64);
  CHECK(r.map_rank == 64);
  CHECK(r.composite_rank == 64);
  CHECK(r.pass(1e-10));

  const HModule l2 = HModule::l2(alpha);
  CHECK(max_abs(takai_map(ModuleOperator::identity(l2)), Mat::Identity(8, 8)) < 1e-14);
  CHECK_THROWS_AS(takai_map(ModuleOperator::identity(HModule::free(4, 2))), StructuralError);

  // Under the trivial action the chain is a pure reshuffle, which in the
  // Kronecker layout used here is the identity on matrices.
  const Action iota = Action::trivial(k4, 2);
  Rng rng(12);
  const ModuleOperator t = random_operator(HModule::l2(iota), rng);
  CHECK(max_abs(takai_map(t), t.matrix()) < 1e-13);

  // For a twisted module the image is Omega T Omega^-1 on function
  // coordinates: check it against conjugating a point mass by hand.
  const ModuleOperator s = random_operator(l2, rng);
  const Mat image = takai_map(s);
  for (std::size_t y = 0; y < 4; ++y)
    for (int j = 0; j < 2; ++j) {
      Mat a = Mat::Zero(2, 2);
      a(j, 0) = 1.0;
      // Omega^-1 of delta_y (x) a in the untwisted module, then T, then Omega.
      const ModuleVector twisted = retwist(ModuleVector::delta(HModule::l2(iota), y, a), alpha);
      const ModuleVector out = untwist(s.apply(twisted));
      for (std::size_t x = 0; x < 4; ++x)
        for (int i = 0; i < 2; ++i)
          CHECK(std::abs(image(static_cast<Eigen::Index>(x * 2 + i), static_cast<Eigen::Index>(y * 2 + j)) -
                         out.block(x)(i, 0)) < 1e-12);
    }
}
