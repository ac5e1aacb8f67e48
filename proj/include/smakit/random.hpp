#pragma once

// Seeded generators for scalars. mt19937_64 output is fixed by the standard,
// and the reductions below avoid the implementation-defined distributions, so
// a seed reproduces the same values on every platform.

#include <smakit/scalar.hpp>

#include <cstdint>
#include <random>

namespace smakit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t r = span == 0 ? engine_() : engine_() % span;
    return static_cast<long>(static_cast<std::uint64_t>(lo) + r);
  }

  bool coin() { return (engine_() >> 17) & 1; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with work-item coordinates (splitmix64 finalizer), so
/// independent items get unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t z = base;
  for (std::uint64_t v : {a, b, c}) {
    z += 0x9e3779b97f4a7c15ULL + v;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

/// Numerators in [-bound, bound], denominators in [1, bound]; on Qi both
/// parts are drawn that way; on F_p a uniform residue.
inline Scalar random_scalar(Rng& rng, const FieldDescriptor& f, long bound) {
  auto rational = [&] {
    const long num = rng.uniform(-bound, bound);
    const long den = rng.uniform(1, bound);
    return Rational(num, den);
  };
  switch (f.kind()) {
    case FieldKind::Rational: return Scalar::rational(rational());
    case FieldKind::GaussianRational: {
      Rational re = rational();
      return Scalar::gaussian(std::move(re), rational());
    }
    case FieldKind::Prime:
      return Scalar::residue(f, static_cast<std::uint64_t>(rng.uniform(0, static_cast<long>(f.modulus()) - 1)));
  }
  throw FieldError("unknown field");
}

/// Integers in [-bound, bound] (Gaussian integers on Qi).
inline Scalar random_integer_scalar(Rng& rng, const FieldDescriptor& f, long bound) {
  switch (f.kind()) {
    case FieldKind::Rational: return Scalar::from_int(f, rng.uniform(-bound, bound));
    case FieldKind::GaussianRational: {
      const long re = rng.uniform(-bound, bound);
      return Scalar::gaussian(Rational(re), Rational(rng.uniform(-bound, bound)));
    }
    case FieldKind::Prime: return random_scalar(rng, f, bound);
  }
  throw FieldError("unknown field");
}

inline Scalar random_nonzero_scalar(Rng& rng, const FieldDescriptor& f, long bound) {
  for (;;) {
    Scalar s = random_scalar(rng, f, bound);
    if (!s.is_zero()) return s;
  }
}

}  // namespace smakit
