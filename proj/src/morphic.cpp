#include "adelent/morphic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

ExactRational horner(const std::vector<ExactRational>& coeffs, const ExactRational& z) {
  ExactRational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::size_t bit_size(const ExactRational& z) {
  return std::max(mpz_sizeinbase(z.get_num_mpz_t(), 2), mpz_sizeinbase(z.get_den_mpz_t(), 2));
}

// Certificates that |f^n(z)|_v increases without bound once |z|_v is large.
class EscapeTest {
 public:
  EscapeTest(const PolyMap& f, std::vector<Place> places) : f_(f), places_(std::move(places)) {
    ExactRational lower = 1;
    const auto& c = f.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) lower += abs(c[i]);
    radius_ = lower / abs(f.leading());
    if (radius_ < 1) radius_ = 1;
  }

  std::optional<Place> escapes(const ExactRational& z) const {
    if (abs(z) > radius_) return Place::infinity();
    if (z == 0) return std::nullopt;
    for (const Place& v : places_) {
      if (v.is_infinite()) continue;
      const long w = valuation(z, v.p());
      if (w >= 0) continue;
      if (p_adic_escape(w, v.p())) return v;
    }
    return std::nullopt;
  }

 private:
  // |a|_p |z|_p^d exceeds every other term and |z|_p itself.
  bool p_adic_escape(long w, const Integer& p) const {
    const auto& c = f_.coefficients();
    const long d = static_cast<long>(f_.degree());
    const long lead = valuation(f_.leading(), p) + d * w;
    if (lead >= w) return false;
    for (long i = 0; i < d; ++i) {
      if (c[static_cast<std::size_t>(i)] == 0) continue;
      if (lead >= valuation(c[static_cast<std::size_t>(i)], p) + i * w) return false;
    }
    return true;
  }

  const PolyMap& f_;
  std::vector<Place> places_;
  ExactRational radius_;
};

}  // namespace

PolyMap::PolyMap(std::vector<ExactRational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 3) throw ParseError("polynomial map must have degree >= 2");
  if (coeffs_.back() == 0) throw ParseError("leading coefficient must be nonzero");
  for (auto& c : coeffs_) c.canonicalize();
}

PolyMap PolyMap::parse(std::string_view text) {
  std::vector<ExactRational> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    coeffs.push_back(
        parse_rational(text.substr(start, comma == text.npos ? text.npos : comma - start)));
    if (comma == text.npos) break;
    start = comma + 1;
  }
  std::reverse(coeffs.begin(), coeffs.end());
  return PolyMap(std::move(coeffs));
}

ExactRational PolyMap::operator()(const ExactRational& z) const { return horner(coeffs_, z); }

std::string PolyMap::to_string() const {
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    out += (out.empty() ? "" : ",") + adelent::to_string(*it);
  return out;
}

std::vector<Place> morphic_places(const PolyMap& f, const ExactRational& q) {
  std::set<Place> places{Place::infinity()};
  auto add_primes = [&](const ExactRational& value) {
    if (value.get_den() == 1) return;
    for (const auto& [p, e] : factorize(value.get_den())) places.insert(Place::finite(p));
  };
  add_primes(q);
  for (const auto& c : f.coefficients()) add_primes(c);
  return {places.begin(), places.end()};
}

OrbitRecord orbit(const PolyMap& f, const ExactRational& q, std::size_t n,
                  const OrbitOptions& options) {
  OrbitRecord out;
  out.base = q;
  out.base.canonicalize();
  out.values.push_back(out.base);
  const EscapeTest escape(f, morphic_places(f, out.base));
  std::map<ExactRational, std::size_t> seen{{out.base, 0}};
  if (auto v = escape.escapes(out.base)) {
    out.escape_index = 0;
    out.escape_place = *v;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    ExactRational next = f(out.values.back());
    if (bit_size(next) > options.max_bits) {
      out.truncated = true;
      break;
    }
    out.values.push_back(std::move(next));
    if (out.escape_index) continue;
    const ExactRational& z = out.values.back();
    if (auto v = escape.escapes(z)) {
      out.escape_index = i;
      out.escape_place = *v;
      seen.clear();
      continue;
    }
    auto [it, inserted] = seen.emplace(z, i);
    if (!inserted) {
      out.preperiod = it->second;
      out.period = i - it->second;
      while (out.values.size() <= n) out.values.push_back(out.values[out.values.size() - *out.period]);
      break;
    }
  }
  return out;
}

HeightEstimate morphic_local_height(const PolyMap& f, const ExactRational& q, const Place& v,
                                    std::size_t n, const OrbitOptions& options) {
  const OrbitRecord orb = orbit(f, q, n, options);
  const double d = static_cast<double>(f.degree());
  HeightEstimate out;
  double scale = 1.0;
  for (const ExactRational& z : orb.values) {
    out.trace.push_back(scale * log_plus(z, v));
    scale /= d;
  }
  out.estimate = orb.preperiodic() ? 0.0 : out.trace.back();
  return out;
}

MorphicHeightReport morphic_global_height(const PolyMap& f, const ExactRational& q, std::size_t n,
                                          const OrbitOptions& options) {
  const OrbitRecord orb = orbit(f, q, n, options);
  MorphicHeightReport out;
  out.depth = orb.depth();
  out.preperiodic = orb.preperiodic();
  out.truncated = orb.truncated;
  const double scale = std::pow(static_cast<double>(f.degree()), -static_cast<double>(out.depth));
  for (const Place& v : morphic_places(f, orb.base)) {
    const double value = out.preperiodic ? 0.0 : scale * log_plus(orb.values.back(), v);
    out.locals.emplace(v, value);
    out.global += value;
  }
  return out;
}

EntropyTrace morphic_entropy(const PolyMap& f, const ExactRational& q, std::size_t n,
                             const PlaceFilter& filter, const OrbitOptions& options) {
  const OrbitRecord orb = orbit(f, q, n, options);
  if (orb.depth() < 1) throw DomainError("orbit too short for an entropy trace");
  bool zero_seen = false;
  std::vector<ExactRational> thetas;
  for (std::size_t i = 1; i < orb.values.size(); ++i) {
    // A zero multiplier imposes no condition on the box, exactly like 1.
    zero_seen = zero_seen || orb.values[i] == 0;
    thetas.push_back(orb.values[i] == 0 ? ExactRational(1) : orb.values[i]);
  }
  DiagonalAction action = explicit_action(
      std::move(thetas), RateFunction::exponential(ExactRational(Integer(f.degree()))), filter);
  action.name = "morphic-orbit";
  const MorphicHeightReport heights = morphic_global_height(f, q, n, options);
  double target = 0.0;
  for (const auto& [v, value] : heights.locals)
    if (filter.includes(v)) target += value;
  action.target = target;
  EntropyTrace out = entropy_trace(action, orb.depth());
  if (zero_seen) out.notes.push_back("orbit passes through 0; those steps impose no condition");
  if (orb.truncated) out.notes.push_back("orbit truncated by the size guard");
  return out;
}

std::size_t RationalMap::degree() const {
  return std::max(numerator.size(), denominator.size()) - 1;
}

std::optional<ExactRational> RationalMap::operator()(const ExactRational& z) const {
  const ExactRational den = horner(denominator, z);
  if (den == 0) return std::nullopt;
  return horner(numerator, z) / den;
}

RationalMap duplication_morphism(const Integer& a, const Integer& b) {
  if (4 * a * a * a + 27 * b * b == 0) throw DomainError("singular curve: 4a^3 + 27b^2 = 0");
  RationalMap f;
  f.numerator = {ExactRational(a * a), ExactRational(-8 * b), ExactRational(-2 * a), 0, 1};
  f.denominator = {ExactRational(4 * b), ExactRational(4 * a), 0, 4};
  return f;
}

HeightEstimate rational_map_height(const RationalMap& f, const ExactRational& z, std::size_t n) {
  const double d = static_cast<double>(f.degree());
  if (f.degree() < 2) throw DomainError("rational map must have degree >= 2");
  HeightEstimate out;
  ExactRational current = z;
  current.canonicalize();
  double scale = 1.0;
  for (std::size_t k = 0;; ++k) {
    const double h = current == 0 ? 0.0
                                  : std::max(log_abs(Integer(current.get_num())),
                                             log_abs(Integer(current.get_den())));
    out.trace.push_back(scale * h);
    if (k == n) break;
    const auto next = f(current);
    if (!next) throw DomainError("orbit reaches a pole after " + std::to_string(k + 1) + " steps");
    current = *next;
    scale /= d;
  }
  out.estimate = out.trace.back();
  return out;
}

}  // namespace adelent
