// Canonical heights of polynomial maps of the projective line over Q, from
// exact orbits.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adelent/adelic.hpp"
#include "adelent/heights.hpp"
#include "adelent/places.hpp"

namespace adelent {

class PolyMap {
 public:
  // Coefficients low to high; degree >= 2 with nonzero leading coefficient.
  explicit PolyMap(std::vector<ExactRational> coefficients);
  // "c_d,...,c_0", highest degree first.
  static PolyMap parse(std::string_view text);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const ExactRational& leading() const { return coeffs_.back(); }
  const std::vector<ExactRational>& coefficients() const { return coeffs_; }
  ExactRational operator()(const ExactRational& z) const;
  std::string to_string() const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::vector<ExactRational> coeffs_;
};

struct OrbitOptions {
  // Bound on the bit size of any numerator or denominator.
  std::size_t max_bits = std::size_t{1} << 20;
};

struct OrbitRecord {
  ExactRational base;
  // values[n] = f^n(q). After a repetition the cycle is continued up to N.
  std::vector<ExactRational> values;
  std::optional<std::size_t> preperiod;
  std::optional<std::size_t> period;
  // The size guard stopped the orbit before N.
  bool truncated = false;
  // First index and place at which the orbit left the escape radius.
  std::optional<std::size_t> escape_index;
  std::optional<Place> escape_place;

  bool preperiodic() const { return period.has_value(); }
  std::size_t depth() const { return values.size() - 1; }
};

OrbitRecord orbit(const PolyMap& f, const ExactRational& q, std::size_t n,
                  const OrbitOptions& options = {});

// Places at which some f^n(q) can be non-integral: infinity and the primes of
// the denominators of q and of the coefficients.
std::vector<Place> morphic_places(const PolyMap& f, const ExactRational& q);

// d^-n log+|f^n(q)|_v for n = 0..N; the estimate is the last term, or exactly
// 0 for a pre-periodic point.
HeightEstimate morphic_local_height(const PolyMap& f, const ExactRational& q, const Place& v,
                                    std::size_t n, const OrbitOptions& options = {});

struct MorphicHeightReport {
  double global = 0.0;
  std::map<Place, double> locals;
  std::size_t depth = 0;
  bool preperiodic = false;
  bool truncated = false;
};

MorphicHeightReport morphic_global_height(const PolyMap& f, const ExactRational& q, std::size_t n,
                                          const OrbitOptions& options = {});

// T_n(x) = f^n(q) x with r(n) = d^n under the given place filter.
EntropyTrace morphic_entropy(const PolyMap& f, const ExactRational& q, std::size_t n,
                             const PlaceFilter& filter, const OrbitOptions& options = {});

// A rational map num/den on the projective line; the value at a pole is
// infinity (nullopt).
struct RationalMap {
  std::vector<ExactRational> numerator;    // low to high
  std::vector<ExactRational> denominator;  // low to high
  std::size_t degree() const;
  std::optional<ExactRational> operator()(const ExactRational& z) const;
};

// x(2P) as a function of x(P) on y^2 = x^3 + a x + b:
// (z^4 - 2a z^2 - 8b z + a^2) / (4 (z^3 + a z + b)).
RationalMap duplication_morphism(const Integer& a, const Integer& b);

// d^-n log max(|num|, |den|) of f^n(z) in lowest terms, n = 0..N, for a
// rational map of degree d >= 2. Throws DomainError if the orbit hits a pole.
HeightEstimate rational_map_height(const RationalMap& f, const ExactRational& z, std::size_t n);

}  // namespace adelent
