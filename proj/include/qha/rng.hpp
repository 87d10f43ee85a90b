#pragma once

#include "qha/matrix.hpp"

#include <cstdint>
#include <random>

namespace qha {

/// Seeded generator with platform-independent value mapping (the standard
/// distributions are implementation-defined, so they are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  bool coin(unsigned percent = 50) { return below(100) < percent; }

  Scalar scalar(const FieldSpec& f, long magnitude = 3) {
    if (f.is_prime_field())
      return f.from_int(range(0, static_cast<long>(f.characteristic()) - 1));
    return Scalar(range(-magnitude, magnitude));
  }

  /// Random matrix with entries from a small range; `density` percent nonzero.
  Mat matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, unsigned density = 70) {
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (coin(density))
          m.set(i, j, scalar(f));
    return m;
  }

  Rng fork() { return Rng(next()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qha
