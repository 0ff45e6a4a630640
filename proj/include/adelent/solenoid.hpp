// Genus-0 baseline: the map x -> (a/b)x on the solenoid dual to Z[1/ab].
#pragma once

#include <cstddef>
#include <span>

#include "adelent/places.hpp"

namespace adelent {

struct ProjectiveHeight {
  double height = 0.0;       // log max(|a|, |b|)
  double archimedean = 0.0;  // log+|a/b|
  double finite = 0.0;       // sum over p < inf of log+|a/b|_p
};

// Requires gcd(a, b) = 1 and (a, b) != (0, 0). The place sum is recomputed
// from the factorizations of a and b and must agree with log max(|a|,|b|).
ProjectiveHeight projective_height(const Integer& a, const Integer& b);

// Composite trapezoid rule for the integral over [0,1) of
// log|b exp(2 pi i t) - a|. Spectrally accurate since the integrand is smooth
// and periodic when |a| != |b|.
double jensen_quadrature(const Integer& a, const Integer& b, std::size_t panels);

// |a^n - b^n|, the number of points of period n.
Integer periodic_count(const Integer& a, const Integer& b, unsigned n);

struct CongruenceResult {
  Integer sum;      // sum over d | n of mu(n/d) seq[d]
  Integer residue;  // sum mod n, in [0, n)
  int sign = 0;     // sign of the unreduced sum
  bool realizable() const { return sign >= 0 && residue == 0; }
};

// seq[0] holds the count for period 1. Requires 1 <= n <= seq.size().
CongruenceResult mobius_congruence(std::span<const Integer> seq, std::size_t n);

}  // namespace adelent
