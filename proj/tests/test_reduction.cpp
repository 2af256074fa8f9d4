#include "doctest.h"
#include "modweyl/random.hpp"
#include "modweyl/reduction.hpp"
#include "support.hpp"

using namespace modweyl;
using namespace testing_support;

namespace {

HModule sample_l2() {
  const FiniteAbelianGroup z3({3});
  return HModule::l2(Action::from_generators(z3, {diag2(1.0, root_of_unity(3))}));
}

}  // namespace

TEST_CASE("f_P") {
  const RankOneProj p = RankOneProj::basis(2, 0);
  CHECK(f_P(p, mat2(5.0, 2.0, 3.0, 7.0)) == Complex(5.0));
  CHECK(f_P(p, Mat::Identity(2, 2)) == Complex(1.0));
  CHECK(f_P(p, matrix_unit(2, 1, 1)) == Complex(0.0));
  CHECK_THROWS_AS(f_P(p, Mat::Identity(3, 3)), StructuralError);

  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const RankOneProj q(random_ginibre(3, 1, rng).col(0));
    const Mat pm = q.matrix();
    CHECK(max_abs(pm * pm, pm) < 1e-12);
    CHECK(max_abs(pm, pm.adjoint()) < 1e-12);
    CHECK(std::abs(pm.trace() - 1.0) < 1e-12);
    const Mat s = random_ginibre(3, 3, rng), t = random_ginibre(3, 3, rng);
    CHECK(max_abs(pm * s * pm, f_P(q, s) * pm) < 1e-12);
    CHECK(std::abs(f_P(q, s + Complex(0, 2) * t) - f_P(q, s) - Complex(0, 2) * f_P(q, t)) < 1e-12);
    CHECK(std::abs(f_P(q, pm) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(RankOneProj(Vec::Zero(2)), StructuralError);
}

TEST_CASE("reduce") {
  const RankOneProj p = RankOneProj::basis(3, 0);
  CHECK(reduce(HModule::free(1, 3), p).dimension() == 3);

  Rng rng(2);
  const HModule l2 = sample_l2();
  const RankOneProj q(random_ginibre(2, 1, rng).col(0));
  const ReducedSpace red = reduce(l2, q);
  CHECK(red.dimension() == 6);
  for (std::size_t i = 0; i < red.dimension(); ++i) {
    CHECK(max_abs(right_act(red.basis[i], q.matrix()).stacked(), red.basis[i].stacked()) < 1e-12);
    CHECK(std::abs(norm(red.basis[i]) - 1.0) < 1e-10);
    for (std::size_t j = 0; j < red.dimension(); ++j)
      CHECK(std::abs(reduced_inner(q, red.basis[i], red.basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
  }
  // With P = e_11 the vectors are exactly fixed: their second columns vanish.
  const ReducedSpace e = reduce(l2, RankOneProj::basis(2, 0));
  for (const auto& b : e.basis) CHECK(b.stacked().col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(reduce(l2, RankOneProj::basis(3, 0)), StructuralError);
}

TEST_CASE("reduced vectors regenerate the module") {
  const HModule l2 = sample_l2();
  const ReducedSpace red = reduce(l2, RankOneProj::basis(2, 1));
  Mat span(l2.stacked_rows() * 2, static_cast<Eigen::Index>(red.dimension() * 4));
  Eigen::Index col = 0;
  for (const auto& b : red.basis)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) span.col(col++) = flatten(right_act(b, matrix_unit(2, i, j)).stacked());
  CHECK(numerical_rank(span) == 3 * 4);
}

TEST_CASE("restriction is an isometric *-isomorphism") {
  const HModule l2 = sample_l2();
  Rng rng(3);
  const ReducedSpace red = reduce(l2, RankOneProj(random_ginibre(2, 1, rng).col(0)));
  const auto k = static_cast<Eigen::Index>(red.dimension());
  CHECK(max_abs(restrict_operator(ModuleOperator::identity(l2), red), Mat::Identity(k, k)) < 1e-10);
  for (int s = 0; s < 50; ++s) {
    const ModuleOperator a = random_operator(l2, rng), b = random_operator(l2, rng);
    const Mat ra = restrict_operator(a, red), rb = restrict_operator(b, red);
    CHECK(max_abs(restrict_operator(a * b, red), ra * rb) < 1e-10);
    CHECK(max_abs(restrict_operator(a.adjoint(), red), ra.adjoint()) < 1e-10);
    CHECK(std::abs(op_norm(a.matrix()) - op_norm(ra)) < 1e-8);
    CHECK(max_abs(extend_operator(ra, red).matrix(), a.matrix()) < 1e-10);
  }
  const ModuleOperator u(l2, haar_unitary(l2.stacked_rows(), rng));
  const Mat ru = restrict_operator(u, red);
  CHECK(max_abs(ru.adjoint() * ru, Mat::Identity(k, k)) < 1e-10);
}

TEST_CASE("theta restricts to a ket-bra") {
  const HModule l2 = sample_l2();
  const ReducedSpace red = reduce(l2, RankOneProj::basis(2, 0));
  Rng rng(4);
  const Vec cz = random_ginibre(6, 1, rng).col(0), ce = random_ginibre(6, 1, rng).col(0);
  ModuleVector z = ModuleVector::zero(l2), e = ModuleVector::zero(l2);
  for (std::size_t i = 0; i < 6; ++i) {
    z = z + red.basis[i] * cz(static_cast<Eigen::Index>(i));
    e = e + red.basis[i] * ce(static_cast<Eigen::Index>(i));
  }
  CHECK(max_abs(restrict_operator(theta(z, e), red), cz * ce.adjoint()) < 1e-10);
}

TEST_CASE("extend_operator") {
  const HModule l2 = sample_l2();
  const ReducedSpace red = reduce(l2, RankOneProj::basis(2, 0));
  const auto k = static_cast<Eigen::Index>(red.dimension());
  CHECK(max_abs(extend_operator(Mat::Identity(k, k), red).matrix(),
                Mat::Identity(l2.stacked_rows(), l2.stacked_rows())) < 1e-10);
  Mat e12 = Mat::Zero(k, k);
  e12(0, 1) = 1.0;
  CHECK(max_abs(extend_operator(e12, red).matrix(), theta(red.basis[0], red.basis[1]).matrix()) < 1e-14);
  Rng rng(5);
  for (int s = 0; s < 20; ++s) {
    const Mat l = random_ginibre(k, k, rng);
    CHECK(max_abs(restrict_operator(extend_operator(l, red), red), l) < 1e-10);
  }
  CHECK_THROWS_AS(extend_operator(Mat::Identity(k + 1, k + 1), red), StructuralError);
}

TEST_CASE("complement_projection") {
  SUBCASE("a generating span gives the identity") {
    const HModule x = HModule::free(2, 2);
    const ModuleVector span[] = {ModuleVector::delta(x, 0, Mat::Identity(2, 2)),
                                 ModuleVector::delta(x, 1, Mat::Identity(2, 2))};
    CHECK(max_abs(complement_projection(span, x).matrix(), Mat::Identity(4, 4)) < 1e-10);
  }
  SUBCASE("the first block") {
    const HModule x = HModule::free(2, 2);
    const ModuleVector span[] = {ModuleVector::delta(x, 0, Mat::Identity(2, 2))};
    Mat expected = Mat::Zero(4, 4);
    expected.topLeftCorner(2, 2) = Mat::Identity(2, 2);
    CHECK(max_abs(complement_projection(span, x).matrix(), expected) < 1e-10);
  }
  SUBCASE("degenerate spans are rejected") {
    const HModule x = HModule::free(2, 2);
    const ModuleVector zero[] = {ModuleVector::zero(x)};
    CHECK_THROWS_AS(complement_projection(zero, x), StructuralError);
    CHECK_THROWS_AS(complement_projection(std::span<const ModuleVector>(), x), StructuralError);
    const ModuleVector foreign[] = {ModuleVector::zero(HModule::free(3, 2))};
    CHECK_THROWS_AS(complement_projection(foreign, x), StructuralError);
  }
  SUBCASE("random spans") {
    const HModule l2 = sample_l2();
    Rng rng(6);
    const ModuleVector a = random_vector(l2, rng), b = right_act(random_vector(l2, rng), matrix_unit(2, 0, 0));
    const ModuleVector span[] = {a, b};
    const ModuleOperator q = complement_projection(span, l2);
    const Mat& qm = q.matrix();
    CHECK(max_abs(qm * qm, qm) < 1e-10);
    CHECK(max_abs(qm, qm.adjoint()) < 1e-10);
    // On stacked coordinates Q projects onto the column space of [a b]:
    // two columns from a and one from b = v e_11.
    CHECK(numerical_rank(qm) == 3);
    CHECK(max_abs(q.apply(a).stacked(), a.stacked()) < 1e-10);
    CHECK(max_abs(q.apply(b).stacked(), b.stacked()) < 1e-10);
    const ModuleVector xi = random_vector(l2, rng), eta = random_vector(l2, rng);
    const ModuleOperator comp = ModuleOperator::identity(l2) - q;
    CHECK(max_abs(inner(q.apply(xi), comp.apply(eta)), Mat::Zero(2, 2)) < 1e-10);
  }
}

TEST_CASE("unit_vector_for_P") {
  const HModule x = HModule::free(1, 2);
  const ModuleVector e11 = ModuleVector::delta(x, 0, matrix_unit(2, 0, 0));
  CHECK(max_abs(inner(e11, e11), matrix_unit(2, 0, 0)) == 0.0);

  Rng rng(7);
  const HModule l2 = sample_l2();
  for (int k = 0; k < 5; ++k) {
    const RankOneProj p(random_ginibre(2, 1, rng).col(0));
    const ModuleVector z = unit_vector_for_P(l2, p);
    CHECK(max_abs(inner(z, z), p.matrix()) < 1e-10);
    CHECK(max_abs(right_act(z, p.matrix()).stacked(), z.stacked()) < 1e-10);
    // Any nonzero eta in X.P, normalized, works too.
    const ModuleVector eta = right_act(random_vector(l2, rng), p.matrix());
    const ModuleVector zeta = eta * Complex(1.0 / std::sqrt(reduced_inner(p, eta, eta).real()));
    CHECK(max_abs(inner(zeta, zeta), p.matrix()) < 1e-10);
  }
}

TEST_CASE("compact operators act irreducibly") {
  const HModule l2 = sample_l2();
  CHECK(commutant_dimension(reduce(l2, RankOneProj::basis(2, 0))) == 1);
  CHECK(commutant_dimension(reduce(HModule::free(2, 1), RankOneProj::basis(1, 0))) == 1);
}
