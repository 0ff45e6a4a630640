#include "adelent/solenoid.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "adelent/errors.hpp"

namespace adelent {

ProjectiveHeight projective_height(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) throw DomainError("projective_height: (0,0) is not a point");
  if (gcd(a, b) != 1) throw DomainError("projective_height: inputs must be coprime");
  ProjectiveHeight out;
  out.height = log_abs(Integer(std::max(abs(a), abs(b))));
  if (a == 0 || b == 0) {
    // [0,1] and [1,0]: the one nonzero coordinate is a unit.
    return out;
  }
  ExactRational q(a, b);
  q.canonicalize();
  for (const Place& v : relevant_places(std::span(&q, 1)))
    (v.is_infinite() ? out.archimedean : out.finite) += log_plus(q, v);
  const double sum = out.archimedean + out.finite;
  if (std::fabs(sum - out.height) > 1e-12 * std::max(1.0, out.height))
    throw ComputationError("projective_height: place sum disagrees with log max(|a|,|b|)");
  return out;
}

double jensen_quadrature(const Integer& a, const Integer& b, std::size_t panels) {
  if (abs(a) == abs(b)) throw DomainError("logarithmic singularity on contour");
  if (panels < 16) throw DomainError("jensen_quadrature needs at least 16 panels");
  // Scale out max(|a|,|b|) so huge inputs stay in double range.
  const Integer scale = std::max(abs(a), abs(b));
  const double log_scale = log_abs(scale);
  const double ar = ExactRational(a, scale).get_d();
  const double br = ExactRational(b, scale).get_d();
  double total = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(panels);
    total += std::log(std::abs(br * std::polar(1.0, t) - ar));
  }
  return log_scale + total / static_cast<double>(panels);
}

Integer periodic_count(const Integer& a, const Integer& b, unsigned n) {
  if (abs(a) == abs(b)) throw DomainError("periodic_count: |a| = |b| is degenerate");
  if (n == 0) throw DomainError("periodic_count: n must be positive");
  if (gcd(a, b) != 1) throw DomainError("periodic_count: inputs must be coprime");
  Integer an, bn;
  mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), n);
  mpz_pow_ui(bn.get_mpz_t(), b.get_mpz_t(), n);
  return abs(Integer(an - bn));
}

CongruenceResult mobius_congruence(std::span<const Integer> seq, std::size_t n) {
  if (n == 0 || n > seq.size()) throw DomainError("mobius_congruence: index out of range");
  CongruenceResult out;
  out.sum = 0;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(n / d);
    if (mu > 0) out.sum += seq[d - 1];
    if (mu < 0) out.sum -= seq[d - 1];
  }
  out.sign = sgn(out.sum);
  const Integer modulus(static_cast<unsigned long>(n));
  mpz_fdiv_r(out.residue.get_mpz_t(), out.sum.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

}  // namespace adelent
