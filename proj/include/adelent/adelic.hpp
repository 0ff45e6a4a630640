// Diagonal sequential actions x -> theta_n x on the adeles and their
// volume-growth entropy, computed exactly one place at a time.
//
// The box is (-eps, eps) x prod Z_p. Its common preimage under the first N
// maps has log-measure
//
//   finite p:  -max(0, max_n log|theta_n|_p)   (an integer multiple of log p)
//   infinity:  log(2 eps) - max(0, max_n log|theta_n|)
//
// and the entropy quotient is e_N = -(log-volume at N) / r(N). The log(2 eps)
// term is bounded and is dropped from every trace.
//
// Degenerate compact cases (maps on a circle or solenoid with zero or
// infinite entropy) are not modelled.
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adelent/elliptic.hpp"
#include "adelent/heights.hpp"
#include "adelent/places.hpp"

namespace adelent {

class PlaceFilter {
 public:
  enum class Kind { all, single, subset, complement };

  static PlaceFilter all() { return PlaceFilter(Kind::all, {}); }
  static PlaceFilter single(const Place& v) { return PlaceFilter(Kind::single, {v}); }
  static PlaceFilter subset(std::set<Place> s) { return PlaceFilter(Kind::subset, std::move(s)); }
  static PlaceFilter complement(std::set<Place> s) {
    return PlaceFilter(Kind::complement, std::move(s));
  }
  // "all", "inf", "p", "S:p,q,inf", "not:p,q".
  static PlaceFilter parse(std::string_view text);

  Kind kind() const { return kind_; }
  const std::set<Place>& places() const { return places_; }
  bool includes(const Place& v) const;
  bool includes_infinity() const { return includes(Place::infinity()); }
  std::string to_string() const;

 private:
  PlaceFilter(Kind kind, std::set<Place> places) : kind_(kind), places_(std::move(places)) {}
  Kind kind_;
  std::set<Place> places_;
};

// Yields theta_1, theta_2, ... on successive calls.
using ThetaStream = std::function<ExactRational()>;

struct DiagonalAction {
  std::string name;
  // Returns a fresh stream starting at theta_1.
  std::function<ThetaStream()> generator;
  RateFunction rate = RateFunction::linear();
  PlaceFilter filter = PlaceFilter::all();
  std::optional<double> target;
  // Explicit lists are finite.
  std::optional<std::size_t> length;
};

DiagonalAction explicit_action(std::vector<ExactRational> thetas, RateFunction rate,
                               PlaceFilter filter);

// Names: primorial, inverse-primorial, primes-up-to-j, identity-index,
// factorial. The rate defaults to the one under which the action has a known
// entropy (also recorded as target).
DiagonalAction builtin_action(std::string_view name, std::optional<RateFunction> rate,
                              PlaceFilter filter);

std::vector<std::string> builtin_action_names();

// Whitespace- or comma-separated rationals.
std::vector<ExactRational> parse_theta_list(std::string_view text);

// Log-measure of the common preimage of the box at one place, eps term
// included at infinity.
double local_log_volume(std::span<const ExactRational> thetas, const Place& v, double eps = 0.5);

struct PlaceVolumes {
  Place place;
  // log-volume at each traced index; for finite places -max_valuation * log p.
  std::vector<double> log_volume;
  // Exponent k with log-volume -k log p at the horizon.
  long exponent = 0;
};

struct EntropyTrace {
  std::string action;
  std::string rate;
  std::string filter;
  std::size_t horizon = 0;
  std::vector<std::size_t> n;
  std::vector<double> quotient;
  std::vector<double> finite_log_volume;
  std::vector<double> archimedean_log_volume;
  // Explicitly listed places in single and subset filters, and the removed
  // places of a complement filter.
  std::vector<PlaceVolumes> places;
  double estimate = 0.0;
  std::optional<double> target;
  // D with finite log-volume -log D at the horizon.
  Integer finite_denominator = 1;
  std::map<std::string, bool> checks;
  std::vector<std::string> notes;
};

struct TraceOptions {
  // Every index is traced up to this horizon; beyond it a geometric sample
  // plus the horizon itself.
  std::size_t dense_limit = 2000;
  std::size_t samples = 400;
};

EntropyTrace entropy_trace(const DiagonalAction& action, std::size_t horizon,
                           const TraceOptions& options = {});

// T_n(x) = b_n x on the reals with r(n) = 4^n, x(2^n Q) = a_n / b_n^2.
// Target: hhat(Q).
EntropyTrace elliptic_real_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                   std::size_t horizon);

// T_n(x) = x(2^n Q) x on the adeles with r(n) = 4^n. Target: 2 hhat(Q). The
// finite log-volume at each N is checked to be exactly -2 log b_N.
EntropyTrace elliptic_adelic_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                     std::size_t horizon);

enum class EdsPart { all, singular, quotient };

std::string to_string(EdsPart part);
EdsPart parse_eds_part(std::string_view text);

struct EdsEntropyOptions {
  // Depth of the reference heights behind the targets.
  std::size_t reference_depth = 10;
  std::size_t psi_n = 200;
  std::map<Integer, double> supplied;
};

// U_n(x) = u_n^-1 x with u_n = |W_{2^n}(Q)| d^(4^n - 1), r(n) = 4^n. The part
// selects all places, the primes S of singular reduction, or the complement
// of S. Targets: lambda_inf + (1/2) log b, -sum_S lambda_p, hhat.
EntropyTrace eds_entropy(const WeierstrassCurve& curve, const CurvePoint& q, std::size_t horizon,
                         EdsPart part, const EdsEntropyOptions& options = {});

// T_j(x) = |W_j(Q)|^eps x at the single place v, r(n) = n^2, where eps is the
// sign of lambda_v(Q). Target: eps lambda_v(Q) >= 0.
EntropyTrace local_flip_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                const Place& v, std::size_t horizon,
                                const EdsEntropyOptions& options = {});

}  // namespace adelent
