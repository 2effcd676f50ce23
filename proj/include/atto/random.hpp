#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "atto/linalg.hpp"

namespace atto {

/// Deterministic random source. Gaussians come from a hand-rolled
/// Box-Muller so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53-bit mantissa uniform in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Cx normal_cx() {
    const double re = normal();
    const double im = normal();
    return Cx(re, im) / std::sqrt(2.0);
  }

  std::uint64_t next_seed() { return gen_(); }

  CMatrix gaussian_matrix(int rows, int cols) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal_cx();
    return m;
  }

  /// (A + A^t)/2 with standard complex normal entries.
  CMatrix symmetric_gaussian(int n) {
    CMatrix a = gaussian_matrix(n, n);
    CMatrix s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
  }

  /// Haar-distributed unitary via QR of a Ginibre matrix with the
  /// R-diagonal phase fix.
  CMatrix haar_unitary(int n);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace atto
