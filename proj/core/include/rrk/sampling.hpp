#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "rrk/core.hpp"
#include "rrk/kernels.hpp"

namespace rrk {

// Seeded generators shared by the verification suites, tests and benchmarks.

/// Entries with independent standard normal real and imaginary parts.
Eigen::VectorXcd random_complex_vector(std::size_t n, std::mt19937_64& rng);

/// Uniform in [lo, hi]^d.
Point random_point(std::size_t d, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);
std::vector<Point> random_points(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                 double lo = -1.0, double hi = 1.0);

/// B B^H / m for complex Gaussian B: Hermitian PSD, generically full rank.
OpMatrix random_psd_matrix(std::size_t m, std::mt19937_64& rng);

/// The built-in kernel families covered by the property suites.
enum class KernelFamily {
  gaussian_identity,
  laplacian_identity,
  linear_identity,
  polynomial_identity,
  separable_gaussian,
  separable_polynomial,
  sum,
  scaled,
  product_diagonal,
};

const std::vector<KernelFamily>& all_kernel_families();
std::string to_string(KernelFamily family);

/// A member of `family` with randomized hyperparameters and output dimension m.
KernelSpec random_kernel_spec(KernelFamily family, std::size_t m, std::mt19937_64& rng);

/// Uniform integer in [lo, hi].
std::size_t random_size(std::size_t lo, std::size_t hi, std::mt19937_64& rng);

}  // namespace rrk
