#pragma once

#include <cstdint>
#include <random>

#include "modweyl/heisenberg.hpp"

namespace modweyl {

/// Every seeded generator in the library; fixed so results reproduce per seed.
using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
Mat random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
Mat haar_unitary(Eigen::Index n, Rng& rng);

FnTable random_fn(std::size_t n, int d, Rng& rng);

ModuleVector random_vector(const HModule& home, Rng& rng);
ModuleOperator random_operator(const HModule& home, Rng& rng);

}  // namespace modweyl
