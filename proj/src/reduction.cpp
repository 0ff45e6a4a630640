#include <vector>

#include "adelent/elliptic.hpp"
#include "adelent/errors.hpp"

namespace adelent {

namespace {

// Polynomials over F_p, coefficients low to high, reduced into [0, p).
using PolyModP = std::vector<Integer>;

Integer mod_p(const Integer& v, const Integer& p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& v, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw ComputationError("no inverse mod " + p.get_str());
  return r;
}

void trim(PolyModP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyModP rem(PolyModP f, const PolyModP& g, const Integer& p) {
  const Integer lead_inv = inverse_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const Integer factor = mod_p(f.back() * lead_inv, p);
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = mod_p(f[shift + i] - factor * g[i], p);
    trim(f);
  }
  return f;
}

PolyModP gcd_mod(PolyModP f, PolyModP g, const Integer& p) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    PolyModP r = rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

// x-coordinate of the singular point of the reduction mod an odd prime p,
// where 4x^3 + b2 x^2 + 2 b4 x + b6 has a repeated root.
Integer singular_x_odd(const WeierstrassCurve& e, const Integer& p) {
  PolyModP g{mod_p(e.b6(), p), mod_p(2 * e.b4(), p), mod_p(e.b2(), p), mod_p(Integer(4), p)};
  PolyModP dg{mod_p(2 * e.b4(), p), mod_p(2 * e.b2(), p), mod_p(Integer(12), p)};
  const PolyModP common = gcd_mod(g, dg, p);
  if (common.size() < 2) throw ComputationError("reduction has no repeated root mod " + p.get_str());
  if (common.size() == 2) return mod_p(-common[0] * inverse_mod(common[1], p), p);
  // Triple root (cusp): x0 = -b2/12, or from 4 x0^3 = -b6 with x0^3 = x0 in F_3.
  if (p == 3) return mod_p(-e.b6(), p);
  return mod_p(-e.b2() * inverse_mod(Integer(12), p), p);
}

// Brute-force search of F_p^2; used at p = 2 and by tests at small primes.
std::pair<Integer, Integer> singular_point_search(const WeierstrassCurve& e, const Integer& p) {
  for (Integer x = 0; x < p; ++x) {
    for (Integer y = 0; y < p; ++y) {
      const Integer f = y * y + e.c1() * x * y + e.c3() * y - x * x * x - e.c2() * x * x - e.c4() * x - e.c6();
      const Integer fx = e.c1() * y - 3 * x * x - 2 * e.c2() * x - e.c4();
      const Integer fy = 2 * y + e.c1() * x + e.c3();
      if (mod_p(f, p) == 0 && mod_p(fx, p) == 0 && mod_p(fy, p) == 0) return {x, y};
    }
  }
  throw ComputationError("no singular point found mod " + p.get_str());
}

// Whether T^2 + c1 T - (3 x0 + c2) splits over F_p.
bool tangents_split(const WeierstrassCurve& e, const Integer& x0, const Integer& p) {
  if (p == 2) {
    for (int t = 0; t < 2; ++t)
      if (mod_p(t * t + e.c1() * t - 3 * x0 - e.c2(), p) == 0) return true;
    return false;
  }
  const Integer disc = mod_p(e.b2() + 12 * x0, p);
  return mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) == 1;
}

bool p_integral(const ExactRational& v, const Integer& p) {
  return v == 0 || valuation(v, p) >= 0;
}

bool vanishes_mod_p(const ExactRational& v, const Integer& p) {
  return v == 0 || valuation(v, p) > 0;
}

}  // namespace

std::string to_string(CurveReduction r) {
  switch (r) {
    case CurveReduction::good: return "good";
    case CurveReduction::split_multiplicative: return "multiplicative-split";
    case CurveReduction::nonsplit_multiplicative: return "multiplicative-nonsplit";
    case CurveReduction::additive: return "additive";
  }
  return "?";
}

std::string to_string(PointReduction r) {
  return r == PointReduction::singular ? "singular" : "nonsingular";
}

ReductionInfo reduction_analysis(const WeierstrassCurve& e, const CurvePoint& q, const Integer& p) {
  if (!is_prime(p)) throw DomainError("reduction_analysis: " + p.get_str() + " is not prime");
  ReductionInfo info;
  info.p = p;
  if (valuation(e.discriminant(), p) == 0) return info;

  if (e.c4_invariant() != 0 && valuation(e.c4_invariant(), p) == 0) {
    const Integer x0 = p == 2 ? singular_point_search(e, p).first : singular_x_odd(e, p);
    info.curve = tangents_split(e, x0, p) ? CurveReduction::split_multiplicative
                                          : CurveReduction::nonsplit_multiplicative;
  } else {
    info.curve = CurveReduction::additive;
    info.model_sensitive = p == 2 || p == 3;
  }

  if (q.is_identity() || !p_integral(q.x(), p)) return info;
  const ExactRational &x = q.x(), &y = q.y();
  const ExactRational fx = e.c1() * y - 3 * x * x - 2 * e.c2() * x - e.c4();
  const ExactRational fy = 2 * y + e.c1() * x + e.c3();
  if (vanishes_mod_p(fx, p) && vanishes_mod_p(fy, p)) info.point = PointReduction::singular;
  return info;
}

namespace detail {

// Exposed for tests: brute-force singular point of the reduction mod p.
std::pair<Integer, Integer> singular_point_by_search(const WeierstrassCurve& e, const Integer& p) {
  return singular_point_search(e, p);
}

Integer singular_x_by_gcd(const WeierstrassCurve& e, const Integer& p) { return singular_x_odd(e, p); }

}  // namespace detail

}  // namespace adelent
