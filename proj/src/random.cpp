#include "modweyl/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace modweyl {

Mat random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, M_SQRT1_2);
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Mat haar_unitary(Eigen::Index n, Rng& rng) {
  const Mat z = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return q;
}

FnTable random_fn(std::size_t n, int d, Rng& rng) {
  FnTable f;
  f.reserve(n);
  for (std::size_t k = 0; k < n; ++k) f.push_back(random_ginibre(d, d, rng));
  return f;
}

ModuleVector random_vector(const HModule& home, Rng& rng) {
  return ModuleVector(home, random_ginibre(home.stacked_rows(), home.dim(), rng));
}

ModuleOperator random_operator(const HModule& home, Rng& rng) {
  return ModuleOperator(home, random_ginibre(home.stacked_rows(), home.stacked_rows(), rng));
}

}  // namespace modweyl
