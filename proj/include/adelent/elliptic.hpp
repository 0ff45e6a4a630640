// Elliptic curves over Q in generalized Weierstrass form
//
//   y^2 + c1 xy + c3 y = x^3 + c2 x^2 + c4 x + c6,   c_i in Z,
//
// with the exact chord-tangent group law, doubling iterates, division
// sequences and reduction types. The model is used exactly as given; nothing
// is minimalized, so every height computed from it is model-relative.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adelent/places.hpp"

namespace adelent {

class WeierstrassCurve {
 public:
  // Throws DomainError when the discriminant vanishes.
  WeierstrassCurve(Integer c1, Integer c2, Integer c3, Integer c4, Integer c6);
  // "c1,c2,c3,c4,c6".
  static WeierstrassCurve parse(std::string_view text);
  // y^2 = x^3 + a x + b.
  static WeierstrassCurve short_form(const Integer& a, const Integer& b) {
    return WeierstrassCurve(0, 0, 0, a, b);
  }

  const Integer& c1() const { return c1_; }
  const Integer& c2() const { return c2_; }
  const Integer& c3() const { return c3_; }
  const Integer& c4() const { return c4_; }
  const Integer& c6() const { return c6_; }

  const Integer& b2() const { return b2_; }
  const Integer& b4() const { return b4_; }
  const Integer& b6() const { return b6_; }
  const Integer& b8() const { return b8_; }
  // The standard invariant b2^2 - 24 b4 (not the coefficient c4).
  const Integer& c4_invariant() const { return c4_invariant_; }
  const Integer& discriminant() const { return discriminant_; }
  ExactRational j_invariant() const;

  bool contains(const ExactRational& x, const ExactRational& y) const;
  std::string to_string() const;

  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;

 private:
  Integer c1_, c2_, c3_, c4_, c6_;
  Integer b2_, b4_, b6_, b8_, c4_invariant_, discriminant_;
};

class CurvePoint {
 public:
  static CurvePoint identity() { return CurvePoint(); }
  // Throws DomainError if (x, y) is not on the curve.
  static CurvePoint affine(const WeierstrassCurve& curve, ExactRational x, ExactRational y);
  // "x;y" with rationals "a/b", or "O" / "identity".
  static CurvePoint parse(const WeierstrassCurve& curve, std::string_view text);

  bool is_identity() const { return identity_; }
  // Throw DomainError on the identity.
  const ExactRational& x() const;
  const ExactRational& y() const;
  std::string to_string() const;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

 private:
  CurvePoint() = default;
  CurvePoint(ExactRational x, ExactRational y)
      : identity_(false), x_(std::move(x)), y_(std::move(y)) {}
  bool identity_ = true;
  ExactRational x_ = 0, y_ = 0;
};

CurvePoint negate(const CurvePoint& p, const WeierstrassCurve& curve);
// Throws DomainError if either input is off the curve.
CurvePoint add(const CurvePoint& p, const CurvePoint& q, const WeierstrassCurve& curve);
CurvePoint multiply(const CurvePoint& p, long m, const WeierstrassCurve& curve);

// True iff mQ = O for some 1 <= m <= bound. Over Q every torsion point has
// order at most 12 (Mazur), so the default bound decides torsion exactly.
bool is_torsion(const WeierstrassCurve& curve, const CurvePoint& q, int bound = 12);

// x(2^n Q) = a_n / b_n^2 in lowest terms with b_n > 0, for n = 1..count.
struct DoublingIterates {
  std::vector<ExactRational> theta;
  std::vector<Integer> a;
  std::vector<Integer> b;
  std::vector<CurvePoint> points;
};

struct WorkBound {
  // Upper bound on N * 4^N for doubling depth N.
  double max_doubling_work = 1u << 30;
};

// Throws DomainError for torsion Q or when the work bound is exceeded.
DoublingIterates double_iterates(const WeierstrassCurve& curve, const CurvePoint& q,
                                 std::size_t count, const WorkBound& bound = {});

// Values of the division polynomials W_n at a point, stored in the integral
// normalization h_n = d^(n^2-1) W_n(Q), where x(Q) = A/d^2 and y(Q) = B/d^3.
// The h_n satisfy the same duplication recurrences as the W_n and are exact
// integers. The squared value W_n^2 is the division polynomial of degree
// n^2 - 1 and leading coefficient n^2.
class DivisionSequence {
 public:
  DivisionSequence(WeierstrassCurve curve, CurvePoint point, Integer d, std::vector<Integer> h);

  const WeierstrassCurve& curve() const { return curve_; }
  const CurvePoint& point() const { return point_; }
  std::size_t max_index() const { return h_.size() - 1; }
  // sqrt of the denominator of x(Q).
  const Integer& d() const { return d_; }
  const Integer& h(std::size_t n) const;
  // Exact W_n(Q) = h_n / d^(n^2-1).
  ExactRational w(std::size_t n) const;
  // q_n = |b^(n^2-1) W_n(Q)^2| = h_n^2 with b = d^2.
  Integer q(std::size_t n) const;
  // Smallest n >= 1 with W_n(Q) = 0, i.e. the order of Q, if within range.
  std::optional<std::size_t> first_zero() const;
  // log|W_n(Q)|_v.
  double log_abs_w(std::size_t n, const Place& v) const;

 private:
  WeierstrassCurve curve_;
  CurvePoint point_;
  Integer d_;
  std::vector<Integer> h_;
};

// W_1..W_maxIndex by the value-level recurrences from W_1..W_4. Throws
// DomainError for the identity.
DivisionSequence division_poly_values(const WeierstrassCurve& curve, const CurvePoint& q,
                                      std::size_t max_index);

struct EdsSequences {
  std::vector<Integer> q;  // q[n-1] = q_n, n = 1..N
  std::vector<Integer> u;  // u[m-1] = u_m, 2^m <= N
  bool divisibility_ok = false;
  bool square_ok = false;
};

// Integer sequences q_n and u_m with u_m^2 = q_{2^m}; the square roots are
// exact and a non-square raises ComputationError.
EdsSequences eds_sequences(const WeierstrassCurve& curve, const CurvePoint& q, std::size_t n);
EdsSequences eds_sequences(const DivisionSequence& seq);

// u_m = sqrt(q_{2^m}) for m = 1..count; needs the division sequence up to
// index 2^count.
std::vector<Integer> eds_u_sequence(const DivisionSequence& seq, std::size_t count);

enum class CurveReduction { good, split_multiplicative, nonsplit_multiplicative, additive };
enum class PointReduction { nonsingular, singular };

struct ReductionInfo {
  Integer p;
  CurveReduction curve = CurveReduction::good;
  PointReduction point = PointReduction::nonsingular;
  // Additive reduction at 2 or 3 depends on the chosen model.
  bool model_sensitive = false;
};

std::string to_string(CurveReduction r);
std::string to_string(PointReduction r);

ReductionInfo reduction_analysis(const WeierstrassCurve& curve, const CurvePoint& q,
                                 const Integer& p);

// Primes dividing the discriminant.
std::vector<Integer> bad_primes(const WeierstrassCurve& curve);

namespace detail {
// Singular point of the reduction mod p by exhaustive search of F_p^2.
std::pair<Integer, Integer> singular_point_by_search(const WeierstrassCurve& e, const Integer& p);
// x-coordinate of the singular point via gcd(g, g') over F_p, p odd.
Integer singular_x_by_gcd(const WeierstrassCurve& e, const Integer& p);
}  // namespace detail

}  // namespace adelent
