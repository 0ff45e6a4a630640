#include "adelent/places.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) throw ParseError("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

ExactRational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  ExactRational q;
  if (slash == std::string_view::npos) {
    q = ExactRational(parse_integer(text));
  } else {
    Integer num = parse_integer(trim(text.substr(0, slash)));
    Integer den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = ExactRational(num, den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const ExactRational& q) { return q.get_str(10); }
std::string to_string(const Integer& n) { return n.get_str(10); }

double log_abs(const Integer& n) {
  if (n == 0) throw DomainError("log of zero");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

Place Place::finite(const Integer& p) {
  if (p < 2 || !is_prime(p)) throw ParseError("not a prime: " + p.get_str());
  return Place(p);
}

Place Place::parse(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  return finite(parse_integer(text));
}

const Integer& Place::p() const {
  if (is_infinite()) throw DomainError("archimedean place has no prime");
  return p_;
}

double Place::log_p() const { return log_abs(p()); }

std::string Place::to_string() const { return is_infinite() ? "inf" : p_.get_str(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const int c = cmp(a.p_, b.p_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (p < 2) throw DomainError("valuation at non-prime " + p.get_str());
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const ExactRational& q, const Integer& p) {
  if (q == 0) throw DomainError("valuation of zero");
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

double log_abs(const ExactRational& q, const Place& v) {
  if (q == 0) throw DomainError("log of zero");
  if (v.is_finite()) return -static_cast<double>(valuation(q, v.p())) * v.log_p();
  const double coarse = log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
  // Away from the overflow range the direct ratio avoids cancellation between
  // two large logs.
  if (std::fabs(coarse) < 600.0) return std::log(std::fabs(q.get_d()));
  return coarse;
}

double log_plus(const ExactRational& q, const Place& v) {
  if (q == 0) return 0.0;
  return std::max(0.0, log_abs(q, v));
}

std::set<Place> relevant_places(std::span<const ExactRational> qs, const FactorOptions& options) {
  std::set<Place> places{Place::infinity()};
  for (const auto& q : qs) {
    if (q == 0) throw DomainError("relevant_places: zero entry");
    for (const Integer& part : {Integer(q.get_num()), Integer(q.get_den())}) {
      if (abs(part) == 1) continue;
      for (const auto& [prime, exponent] : factorize(part, options)) places.insert(Place::finite(prime));
    }
  }
  return places;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius(0)");
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

RateFunction RateFunction::exponential(const ExactRational& base) {
  if (base <= 1) throw ParseError("exponential rate needs base > 1, got " + base.get_str());
  RateFunction r(Kind::exponential);
  r.base_ = base;
  r.log_base_ = log_abs(base, Place::infinity());
  return r;
}

RateFunction RateFunction::parse(std::string_view text) {
  text = trim(text);
  if (text == "n" || text == "linear") return linear();
  if (text == "nlogn" || text == "n*log(n)") return n_log_n();
  if (text == "n2" || text == "n^2" || text == "square") return square();
  if (text == "logn" || text == "log(n)" || text == "log") return log();
  if (text.starts_with("exp:")) return exponential(parse_rational(text.substr(4)));
  if (text.ends_with("^n")) return exponential(parse_rational(text.substr(0, text.size() - 2)));
  throw ParseError("unknown rate '" + std::string(text) + "'");
}

double RateFunction::operator()(std::uint64_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case Kind::linear: return x;
    case Kind::n_log_n: return x * std::log(x);
    case Kind::square: return x * x;
    case Kind::log: return std::log(x);
    case Kind::exponential: return std::exp(x * log_base_);
  }
  return 0.0;
}

std::string RateFunction::to_string() const {
  switch (kind_) {
    case Kind::linear: return "n";
    case Kind::n_log_n: return "nlogn";
    case Kind::square: return "n2";
    case Kind::log: return "logn";
    case Kind::exponential: return "exp:" + base_.get_str();
  }
  return "?";
}

}  // namespace adelent
