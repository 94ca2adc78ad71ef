#ifndef TENSORALG_RANDOM_HPP
#define TENSORALG_RANDOM_HPP

#include <cstdint>

#include "tensoralg/matrix.hpp"

namespace tensoralg {

/// Deterministic random source.  Only the engine state sequence is taken from
/// the standard library (mt19937_64 is specified exactly); the distributions
/// are implemented here so that a (seed, draw sequence) pair produces
/// identical doubles on every build, which the byte-identical report
/// requirement relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Deterministic sub-seed for trial `index` under master seed `seed`
  /// (splitmix64 step), so concurrent trials are order-independent.
  static std::uint64_t subseed(std::uint64_t seed, std::uint64_t index);

  std::uint64_t bits();
  double uniform();                       ///< [0, 1)
  double uniform(double lo, double hi);   ///< [lo, hi)
  int uniform_int(int lo, int hi);        ///< inclusive range
  double normal();                        ///< standard normal (Box-Muller)
  Complex complex_normal();               ///< complex standard normal
  Matrix gaussian_matrix(int rows, int cols);
  Vector gaussian_vector(int n);
  /// Haar-distributed unitary (QR of a Gaussian matrix with phase fixing).
  Matrix haar_unitary(int n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tensoralg

#endif  // TENSORALG_RANDOM_HPP
