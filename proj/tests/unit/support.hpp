// Shared fixtures and a minimal property-test driver.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <doctest.h>

#include "adelent/elliptic.hpp"
#include "adelent/places.hpp"

namespace adelent::test {

// Deterministic generator; every property fixes its own seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Integer nonzero(long bound) {
    long v = 0;
    while (v == 0) v = integer(-bound, bound);
    return v;
  }

  ExactRational rational(long bound) {
    ExactRational q(nonzero(bound), abs(nonzero(bound)));
    q.canonicalize();
    return q;
  }

  unsigned long prime(unsigned long below = 60) {
    while (true) {
      const auto p = static_cast<unsigned long>(integer(2, static_cast<long>(below)));
      if (is_prime(Integer(p))) return p;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Runs `property(gen, case_index)` for `count` cases drawn from one seed.
template <class Property>
void for_all(std::uint64_t seed, int count, Property property) {
  Gen gen(seed);
  for (int i = 0; i < count; ++i) {
    CAPTURE(seed);
    CAPTURE(i);
    property(gen, i);
  }
}

// y^2 + y = x^3 - x, conductor 37, Q = (0,0) generates E(Q).
inline WeierstrassCurve curve_37a() { return WeierstrassCurve(0, 0, 1, -1, 0); }
// y^2 - y = x^3 - x.
inline WeierstrassCurve curve_minus() { return WeierstrassCurve(0, 0, -1, -1, 0); }
// y^2 - 5y = x^3 + x^2; (0,0) reduces to the node at 5.
inline WeierstrassCurve curve_split5() { return WeierstrassCurve(0, 1, -5, 0, 0); }
// y^2 = x^3 - 4x + 4.
inline WeierstrassCurve curve_short() { return WeierstrassCurve::short_form(-4, 4); }

inline CurvePoint origin(const WeierstrassCurve& e) { return CurvePoint::affine(e, 0, 0); }

inline ExactRational q(const char* text) { return parse_rational(text); }

}  // namespace adelent::test
