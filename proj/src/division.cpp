#include <algorithm>

#include "adelent/elliptic.hpp"
#include "adelent/errors.hpp"

namespace adelent {

DivisionSequence::DivisionSequence(WeierstrassCurve curve, CurvePoint point, Integer d,
                                   std::vector<Integer> h)
    : curve_(std::move(curve)), point_(std::move(point)), d_(std::move(d)), h_(std::move(h)) {}

const Integer& DivisionSequence::h(std::size_t n) const {
  if (n >= h_.size()) throw DomainError("division sequence index out of range");
  return h_[n];
}

ExactRational DivisionSequence::w(std::size_t n) const {
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), d_.get_mpz_t(), n * n - 1);
  ExactRational value(h(n), scale);
  value.canonicalize();
  return value;
}

Integer DivisionSequence::q(std::size_t n) const { return h(n) * h(n); }

std::optional<std::size_t> DivisionSequence::first_zero() const {
  for (std::size_t n = 1; n < h_.size(); ++n)
    if (h_[n] == 0) return n;
  return std::nullopt;
}

double DivisionSequence::log_abs_w(std::size_t n, const Place& v) const {
  const Integer& value = h(n);
  if (value == 0) throw DomainError("W_" + std::to_string(n) + "(Q) = 0: torsion point");
  const double exponent = static_cast<double>(n * n - 1);
  if (v.is_infinite()) return log_abs(value) - (d_ == 1 ? 0.0 : exponent * log_abs(d_));
  const long vd = d_ == 1 ? 0 : valuation(d_, v.p());
  const double val = static_cast<double>(valuation(value, v.p())) - exponent * static_cast<double>(vd);
  return -val * v.log_p();
}

DivisionSequence division_poly_values(const WeierstrassCurve& e, const CurvePoint& q,
                                      std::size_t max_index) {
  if (q.is_identity()) throw DomainError("division_poly_values: identity point");
  if (max_index < 1) throw DomainError("division_poly_values: max index must be >= 1");

  // x = A/d^2, y = B/d^3 on an integral model.
  Integer d, rem;
  mpz_sqrtrem(d.get_mpz_t(), rem.get_mpz_t(), q.x().get_den_mpz_t());
  if (rem != 0) throw ComputationError("x-denominator is not a square; model not integral?");
  const Integer d2 = d * d, d3 = d2 * d;
  if (!mpz_divisible_p(d3.get_mpz_t(), q.y().get_den_mpz_t()))
    throw ComputationError("y-denominator does not divide d^3");
  const Integer A = q.x().get_num() * (d2 / q.x().get_den());
  const Integer B = q.y().get_num() * (d3 / q.y().get_den());

  std::vector<Integer> h(std::max<std::size_t>(max_index, 4) + 1);
  h[0] = 0;
  h[1] = 1;
  h[2] = 2 * B + e.c1() * A * d + e.c3() * d3;

  // Powers of A and d used by W_3 and W_4.
  std::vector<Integer> ap(7), dp(13);
  ap[0] = 1;
  dp[0] = 1;
  for (int i = 1; i < 7; ++i) ap[i] = ap[i - 1] * A;
  for (int i = 1; i < 13; ++i) dp[i] = dp[i - 1] * d;

  h[3] = 3 * ap[4] + e.b2() * ap[3] * dp[2] + 3 * e.b4() * ap[2] * dp[4] + 3 * e.b6() * ap[1] * dp[6] +
         e.b8() * dp[8];
  h[4] = h[2] * (2 * ap[6] + e.b2() * ap[5] * dp[2] + 5 * e.b4() * ap[4] * dp[4] +
                 10 * e.b6() * ap[3] * dp[6] + 10 * e.b8() * ap[2] * dp[8] +
                 (e.b2() * e.b8() - e.b4() * e.b6()) * ap[1] * dp[10] +
                 (e.b4() * e.b8() - e.b6() * e.b6()) * dp[12]);

  const bool two_torsion = h[2] == 0;
  for (std::size_t n = 5; n < h.size(); ++n) {
    const std::size_t m = n / 2;
    if (n % 2 == 1) {
      // W_{2m+1} = W_{m+2} W_m^3 - W_{m-1} W_{m+1}^3
      h[n] = h[m + 2] * h[m] * h[m] * h[m] - h[m - 1] * h[m + 1] * h[m + 1] * h[m + 1];
    } else if (two_torsion) {
      h[n] = 0;
    } else {
      // W_2 W_{2m} = W_m (W_{m+2} W_{m-1}^2 - W_{m-2} W_{m+1}^2)
      Integer t = h[m] * (h[m + 2] * h[m - 1] * h[m - 1] - h[m - 2] * h[m + 1] * h[m + 1]);
      mpz_divexact(h[n].get_mpz_t(), t.get_mpz_t(), h[2].get_mpz_t());
    }
  }
  h.resize(max_index + 1);
  return DivisionSequence(e, q, d, std::move(h));
}

namespace {

Integer exact_sqrt(const Integer& n) {
  Integer root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem != 0) throw ComputationError("expected a perfect square in the EDS");
  return root;
}

}  // namespace

EdsSequences eds_sequences(const DivisionSequence& seq) {
  EdsSequences out;
  const std::size_t n_max = seq.max_index();
  out.square_ok = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.q.push_back(seq.q(n));
    if (mpz_perfect_square_p(out.q.back().get_mpz_t()) == 0) out.square_ok = false;
  }
  out.divisibility_ok = true;
  for (std::size_t m = 1; m <= n_max && out.divisibility_ok; ++m) {
    const Integer& qm = out.q[m - 1];
    for (std::size_t n = 2 * m; n <= n_max; n += m) {
      const Integer& qn = out.q[n - 1];
      const bool divides = qm == 0 ? qn == 0 : mpz_divisible_p(qn.get_mpz_t(), qm.get_mpz_t()) != 0;
      if (!divides) {
        out.divisibility_ok = false;
        break;
      }
    }
  }
  for (std::size_t m = 1; (std::size_t{1} << m) <= n_max; ++m)
    out.u.push_back(exact_sqrt(out.q[(std::size_t{1} << m) - 1]));
  return out;
}

EdsSequences eds_sequences(const WeierstrassCurve& curve, const CurvePoint& q, std::size_t n) {
  return eds_sequences(division_poly_values(curve, q, n));
}

std::vector<Integer> eds_u_sequence(const DivisionSequence& seq, std::size_t count) {
  if ((std::size_t{1} << count) > seq.max_index())
    throw DomainError("division sequence too short for u_" + std::to_string(count));
  std::vector<Integer> u;
  for (std::size_t m = 1; m <= count; ++m) {
    const Integer root = exact_sqrt(seq.q(std::size_t{1} << m));
    if (root == 0) throw DomainError("u_" + std::to_string(m) + " = 0: torsion point");
    u.push_back(root);
  }
  return u;
}

}  // namespace adelent
