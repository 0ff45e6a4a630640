#include "adelent/elliptic.hpp"

#include <cmath>
#include <sstream>

#include "adelent/errors.hpp"

namespace adelent {

WeierstrassCurve::WeierstrassCurve(Integer c1, Integer c2, Integer c3, Integer c4, Integer c6)
    : c1_(std::move(c1)), c2_(std::move(c2)), c3_(std::move(c3)), c4_(std::move(c4)),
      c6_(std::move(c6)) {
  b2_ = c1_ * c1_ + 4 * c2_;
  b4_ = 2 * c4_ + c1_ * c3_;
  b6_ = c3_ * c3_ + 4 * c6_;
  b8_ = c1_ * c1_ * c6_ + 4 * c2_ * c6_ - c1_ * c3_ * c4_ + c2_ * c3_ * c3_ - c4_ * c4_;
  c4_invariant_ = b2_ * b2_ - 24 * b4_;
  discriminant_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (discriminant_ == 0) throw DomainError("singular Weierstrass model: " + to_string());
}

WeierstrassCurve WeierstrassCurve::parse(std::string_view text) {
  std::vector<Integer> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto field = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    const ExactRational value = parse_rational(field);
    if (value.get_den() != 1) throw ParseError("curve coefficients must be integers");
    coeffs.emplace_back(value.get_num());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coeffs.size() != 5)
    throw ParseError("curve needs five coefficients c1,c2,c3,c4,c6");
  return WeierstrassCurve(coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]);
}

ExactRational WeierstrassCurve::j_invariant() const {
  ExactRational j(c4_invariant_ * c4_invariant_ * c4_invariant_, discriminant_);
  j.canonicalize();
  return j;
}

bool WeierstrassCurve::contains(const ExactRational& x, const ExactRational& y) const {
  const ExactRational lhs = y * y + c1_ * x * y + c3_ * y;
  const ExactRational rhs = x * x * x + c2_ * x * x + c4_ * x + c6_;
  return lhs == rhs;
}

std::string WeierstrassCurve::to_string() const {
  std::ostringstream out;
  out << c1_ << ',' << c2_ << ',' << c3_ << ',' << c4_ << ',' << c6_;
  return out.str();
}

CurvePoint CurvePoint::affine(const WeierstrassCurve& curve, ExactRational x, ExactRational y) {
  x.canonicalize();
  y.canonicalize();
  if (!curve.contains(x, y))
    throw DomainError("point (" + x.get_str() + ", " + y.get_str() + ") is not on the curve");
  return CurvePoint(std::move(x), std::move(y));
}

CurvePoint CurvePoint::parse(const WeierstrassCurve& curve, std::string_view text) {
  if (text == "O" || text == "identity" || text == "0") return identity();
  const auto sep = text.find(';');
  if (sep == std::string_view::npos) throw ParseError("point must be 'x;y'");
  return affine(curve, parse_rational(text.substr(0, sep)), parse_rational(text.substr(sep + 1)));
}

const ExactRational& CurvePoint::x() const {
  if (identity_) throw DomainError("identity has no affine coordinates");
  return x_;
}

const ExactRational& CurvePoint::y() const {
  if (identity_) throw DomainError("identity has no affine coordinates");
  return y_;
}

std::string CurvePoint::to_string() const {
  return identity_ ? "O" : x_.get_str() + ";" + y_.get_str();
}

CurvePoint negate(const CurvePoint& p, const WeierstrassCurve& curve) {
  if (p.is_identity()) return p;
  return CurvePoint::affine(curve, p.x(), -p.y() - curve.c1() * p.x() - curve.c3());
}

namespace {

// Chord-tangent sum of two affine points already known to lie on the curve.
CurvePoint add_unchecked(const CurvePoint& p, const CurvePoint& q, const WeierstrassCurve& e) {
  if (p.is_identity()) return q;
  if (q.is_identity()) return p;
  const ExactRational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  ExactRational slope;
  if (x1 != x2) {
    slope = (y2 - y1) / (x2 - x1);
  } else {
    const ExactRational denom = y1 + y2 + e.c1() * x2 + e.c3();
    if (denom == 0) return CurvePoint::identity();
    slope = (3 * x1 * x1 + 2 * e.c2() * x1 + e.c4() - e.c1() * y1) / (2 * y1 + e.c1() * x1 + e.c3());
  }
  const ExactRational intercept = y1 - slope * x1;
  ExactRational x3 = slope * slope + e.c1() * slope - e.c2() - x1 - x2;
  ExactRational y3 = -(slope + e.c1()) * x3 - intercept - e.c3();
  return CurvePoint::affine(e, std::move(x3), std::move(y3));
}

void require_on_curve(const CurvePoint& p, const WeierstrassCurve& e) {
  if (!p.is_identity() && !e.contains(p.x(), p.y()))
    throw DomainError("point " + p.to_string() + " is not on the curve");
}

}  // namespace

CurvePoint add(const CurvePoint& p, const CurvePoint& q, const WeierstrassCurve& curve) {
  require_on_curve(p, curve);
  require_on_curve(q, curve);
  return add_unchecked(p, q, curve);
}

CurvePoint multiply(const CurvePoint& p, long m, const WeierstrassCurve& curve) {
  require_on_curve(p, curve);
  CurvePoint base = m < 0 ? negate(p, curve) : p;
  unsigned long k = m < 0 ? static_cast<unsigned long>(-m) : static_cast<unsigned long>(m);
  CurvePoint acc = CurvePoint::identity();
  while (k != 0) {
    if (k & 1u) acc = add_unchecked(acc, base, curve);
    k >>= 1;
    if (k != 0) base = add_unchecked(base, base, curve);
  }
  return acc;
}

bool is_torsion(const WeierstrassCurve& curve, const CurvePoint& q, int bound) {
  require_on_curve(q, curve);
  CurvePoint acc = CurvePoint::identity();
  for (int m = 1; m <= bound; ++m) {
    acc = add_unchecked(acc, q, curve);
    if (acc.is_identity()) return true;
  }
  return false;
}

DoublingIterates double_iterates(const WeierstrassCurve& curve, const CurvePoint& q,
                                 std::size_t count, const WorkBound& bound) {
  if (static_cast<double>(count) * std::pow(4.0, static_cast<double>(count)) >
      bound.max_doubling_work)
    throw DomainError("doubling depth " + std::to_string(count) + " exceeds the work bound");
  if (is_torsion(curve, q)) throw DomainError("torsion point; sequence degenerates");
  DoublingIterates out;
  CurvePoint current = q;
  for (std::size_t n = 1; n <= count; ++n) {
    current = add_unchecked(current, current, curve);
    const ExactRational& theta = current.x();
    Integer root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), theta.get_den_mpz_t());
    if (rem != 0) throw ComputationError("x-denominator is not a square; model not integral?");
    out.theta.push_back(theta);
    out.a.emplace_back(theta.get_num());
    out.b.push_back(std::move(root));
    out.points.push_back(current);
  }
  return out;
}

std::vector<Integer> bad_primes(const WeierstrassCurve& curve) {
  std::vector<Integer> primes;
  for (const auto& [p, e] : factorize(curve.discriminant())) primes.push_back(p);
  return primes;
}

}  // namespace adelent
