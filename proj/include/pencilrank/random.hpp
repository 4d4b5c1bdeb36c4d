#pragma once

#include <cstdint>
#include <random>

#include "pencilrank/field.hpp"

namespace pencilrank {

// Seeded generator. std::mt19937_64 is fully specified by the standard and
// the range reductions below are our own, so streams are reproducible
// across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Derives an independent child seed.
  std::uint64_t fork() { return engine_() ^ 0x9e3779b97f4a7c15ULL; }

 private:
  std::mt19937_64 engine_;
};

// Small random scalar: integer in [-bound, bound] over Q, real and imaginary
// parts in that range over Q[i], uniform residue over F_p.
inline Scalar random_scalar(const Field& field, Rng& rng, std::int64_t bound) {
  switch (field.kind()) {
    case Field::Kind::PrimeField:
      return Scalar::residue(static_cast<std::int64_t>(rng.below(field.characteristic())),
                             field.characteristic());
    case Field::Kind::GaussianRationals: {
      std::int64_t re = rng.uniform(-bound, bound);
      std::int64_t im = rng.uniform(-bound, bound);
      return Scalar::gaussian(mpq_class(static_cast<long>(re)), mpq_class(static_cast<long>(im)));
    }
    case Field::Kind::Rationals:
      break;
  }
  return field.from_int(rng.uniform(-bound, bound));
}

}  // namespace pencilrank
