// Exact rationals, p-adic valuations and logarithms at every place of Q.
//
// All logarithms are natural logarithms. Archimedean logarithms of large
// integers are taken from the binary exponent plus a 53-bit mantissa, so they
// are accurate to roughly 1e-16 relative to the size of the log itself and
// never overflow, whatever the number of digits.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace adelent {

using Integer = mpz_class;
using ExactRational = mpq_class;

// Parses "a/b" or "a" in base 10 and returns the reduced fraction.
ExactRational parse_rational(std::string_view text);
std::string to_string(const ExactRational& q);
std::string to_string(const Integer& n);

// log|n| for n != 0.
double log_abs(const Integer& n);

// A place of Q: a finite prime p or the archimedean place. Ordered with the
// finite primes ascending and infinity last.
class Place {
 public:
  static Place infinity() { return Place(); }
  // Throws ParseError unless p is prime.
  static Place finite(const Integer& p);
  static Place finite(unsigned long p) { return finite(Integer(p)); }
  // "p" or "inf".
  static Place parse(std::string_view text);

  bool is_infinite() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  // Throws DomainError at infinity.
  const Integer& p() const;
  double log_p() const;
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  Place() = default;
  explicit Place(Integer p) : p_(std::move(p)) {}
  Integer p_ = 0;
};

// v_p(q), with q = p^v * u/w and p not dividing u*w. Throws DomainError for
// q = 0.
long valuation(const ExactRational& q, const Integer& p);
long valuation(const Integer& n, const Integer& p);

// log|q|_v. Finite p: -v_p(q) log p. Throws DomainError for q = 0.
double log_abs(const ExactRational& q, const Place& v);

// max(0, log|q|_v); 0 for q = 0.
double log_plus(const ExactRational& q, const Place& v);

struct FactorOptions {
  std::uint64_t trial_bound = 1'000'000;
  // Iteration budget per Pollard-rho attempt.
  std::uint64_t rho_iterations = 2'000'000;
};

// Prime factorization of |n| (n != 0): trial division, then Pollard rho on the
// cofactor. A composite cofactor that rho cannot split raises
// ComputationError instead of being reported as prime.
std::map<Integer, int> factorize(const Integer& n, const FactorOptions& options = {});

bool is_prime(const Integer& n);

// Infinity plus every prime dividing a numerator or denominator.
std::set<Place> relevant_places(std::span<const ExactRational> qs,
                                const FactorOptions& options = {});

// Möbius function by trial division. Throws DomainError for n = 0.
int mobius(std::uint64_t n);

// Growth rate r(n) for volume-growth entropy.
class RateFunction {
 public:
  enum class Kind { linear, n_log_n, square, log, exponential };

  static RateFunction linear() { return RateFunction(Kind::linear); }
  static RateFunction n_log_n() { return RateFunction(Kind::n_log_n); }
  static RateFunction square() { return RateFunction(Kind::square); }
  static RateFunction log() { return RateFunction(Kind::log); }
  // c^n with rational c > 1.
  static RateFunction exponential(const ExactRational& base);
  // "n", "nlogn", "n2", "logn", "exp:<c>" (also "<c>^n").
  static RateFunction parse(std::string_view text);

  double operator()(std::uint64_t n) const;
  Kind kind() const { return kind_; }
  const ExactRational& base() const { return base_; }
  std::string to_string() const;

  friend bool operator==(const RateFunction& a, const RateFunction& b) {
    return a.kind_ == b.kind_ && a.base_ == b.base_;
  }

 private:
  explicit RateFunction(Kind kind) : kind_(kind) {}
  Kind kind_;
  ExactRational base_ = 0;
  double log_base_ = 0.0;
};

}  // namespace adelent
