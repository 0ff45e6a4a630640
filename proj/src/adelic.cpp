#include "adelent/adelic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == text.npos ? text.npos : pos - start));
    if (pos == text.npos) break;
    start = pos + 1;
  }
  return out;
}

std::set<Place> parse_place_list(std::string_view text) {
  std::set<Place> out;
  if (text.empty()) throw ParseError("empty place list");
  for (std::string_view item : split(text, ',')) out.insert(Place::parse(item));
  return out;
}

std::string join_places(const std::set<Place>& places) {
  std::string out;
  for (const Place& v : places) out += (out.empty() ? "" : ",") + v.to_string();
  return out;
}

// Exponent of p in the reduced denominator minus the numerator, floored at 0.
long negative_valuation(const ExactRational& theta, const Integer& p) {
  return std::max(0L, -valuation(theta, p));
}

double log_abs_archimedean(const ExactRational& theta) {
  return log_abs(Integer(theta.get_num())) - log_abs(Integer(theta.get_den()));
}

std::vector<std::size_t> traced_indices(std::size_t horizon, const TraceOptions& options) {
  std::vector<std::size_t> out;
  if (horizon <= options.dense_limit) {
    for (std::size_t n = 1; n <= horizon; ++n) out.push_back(n);
    return out;
  }
  std::set<std::size_t> picks;
  for (std::size_t n = 1; n <= std::min<std::size_t>(horizon, 100); ++n) picks.insert(n);
  const double top = std::log(static_cast<double>(horizon));
  for (std::size_t i = 0; i < options.samples; ++i) {
    const double t = top * static_cast<double>(i) / static_cast<double>(options.samples - 1);
    picks.insert(std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(std::exp(t))), 1,
                                         horizon));
  }
  picks.insert(horizon);
  return {picks.begin(), picks.end()};
}

ThetaStream list_stream(std::shared_ptr<const std::vector<ExactRational>> values) {
  auto index = std::make_shared<std::size_t>(0);
  return [values, index]() {
    if (*index >= values->size()) throw DomainError("explicit action exhausted");
    return (*values)[(*index)++];
  };
}

}  // namespace

PlaceFilter PlaceFilter::parse(std::string_view text) {
  if (text == "all") return all();
  if (text.rfind("S:", 0) == 0) return subset(parse_place_list(text.substr(2)));
  if (text.rfind("not:", 0) == 0) return complement(parse_place_list(text.substr(4)));
  return single(Place::parse(text));
}

bool PlaceFilter::includes(const Place& v) const {
  switch (kind_) {
    case Kind::all: return true;
    case Kind::single:
    case Kind::subset: return places_.contains(v);
    case Kind::complement: return !places_.contains(v);
  }
  return false;
}

std::string PlaceFilter::to_string() const {
  switch (kind_) {
    case Kind::all: return "all";
    case Kind::single: return places_.begin()->to_string();
    case Kind::subset: return "S:" + join_places(places_);
    case Kind::complement: return "not:" + join_places(places_);
  }
  return "?";
}

DiagonalAction explicit_action(std::vector<ExactRational> thetas, RateFunction rate,
                               PlaceFilter filter) {
  for (const ExactRational& t : thetas)
    if (t == 0) throw DomainError("diagonal action multipliers must be nonzero");
  auto values = std::make_shared<const std::vector<ExactRational>>(std::move(thetas));
  DiagonalAction action;
  action.name = "explicit";
  action.length = values->size();
  action.generator = [values]() { return list_stream(values); };
  action.rate = rate;
  action.filter = std::move(filter);
  return action;
}

std::vector<std::string> builtin_action_names() {
  return {"primorial", "inverse-primorial", "primes-up-to-j", "identity-index", "factorial"};
}

DiagonalAction builtin_action(std::string_view name, std::optional<RateFunction> rate,
                              PlaceFilter filter) {
  DiagonalAction action;
  action.name = std::string(name);
  action.filter = std::move(filter);
  const bool all_places = action.filter.kind() == PlaceFilter::Kind::all;

  if (name == "primorial" || name == "inverse-primorial") {
    const bool inverse = name == "inverse-primorial";
    action.generator = [inverse]() -> ThetaStream {
      auto state = std::make_shared<std::pair<Integer, Integer>>(1, 1);
      return [state, inverse]() {
        mpz_nextprime(state->first.get_mpz_t(), state->first.get_mpz_t());
        state->second *= state->first;
        return inverse ? ExactRational(Integer(1), state->second) : ExactRational(state->second);
      };
    };
    action.rate = rate.value_or(RateFunction::n_log_n());
    if (all_places) action.target = 1.0;
    if (inverse && action.filter.kind() == PlaceFilter::Kind::single) action.target = 0.0;
  } else if (name == "primes-up-to-j") {
    action.generator = []() -> ThetaStream {
      auto state = std::make_shared<std::pair<unsigned long, Integer>>(0, 1);
      return [state]() {
        const unsigned long j = ++state->first;
        if (j >= 2 && is_prime(Integer(j))) state->second *= j;
        return ExactRational(state->second);
      };
    };
    action.rate = rate.value_or(RateFunction::linear());
  } else if (name == "identity-index") {
    action.generator = []() -> ThetaStream {
      auto j = std::make_shared<unsigned long>(0);
      return [j]() { return ExactRational(Integer(++*j)); };
    };
    action.rate = rate.value_or(RateFunction::log());
    if (all_places) action.target = 1.0;
  } else if (name == "factorial") {
    action.generator = []() -> ThetaStream {
      auto state = std::make_shared<std::pair<unsigned long, Integer>>(0, 1);
      return [state]() {
        state->second *= ++state->first;
        return ExactRational(state->second);
      };
    };
    action.rate = rate.value_or(RateFunction::n_log_n());
    if (all_places) action.target = 1.0;
  } else {
    throw ParseError("unknown builtin action '" + std::string(name) + "'");
  }
  if (rate && !(action.rate == *rate)) action.rate = *rate;
  return action;
}

std::vector<ExactRational> parse_theta_list(std::string_view text) {
  std::vector<ExactRational> out;
  std::string token;
  auto flush = [&]() {
    if (!token.empty()) out.push_back(parse_rational(token));
    if (!token.empty() && out.back() == 0) throw ParseError("multiplier must be nonzero: " + token);
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r')
      flush();
    else
      token += c;
  }
  flush();
  return out;
}

double local_log_volume(std::span<const ExactRational> thetas, const Place& v, double eps) {
  if (v.is_finite()) {
    long k = 0;
    for (const ExactRational& t : thetas) {
      if (t == 0) throw DomainError("diagonal action multipliers must be nonzero");
      k = std::max(k, negative_valuation(t, v.p()));
    }
    return -static_cast<double>(k) * v.log_p();
  }
  if (!(eps > 0.0)) throw DomainError("archimedean radius must be positive");
  double m = 0.0;
  for (const ExactRational& t : thetas) {
    if (t == 0) throw DomainError("diagonal action multipliers must be nonzero");
    m = std::max(m, log_abs_archimedean(t));
  }
  return std::log(2.0 * eps) - m;
}

EntropyTrace entropy_trace(const DiagonalAction& action, std::size_t horizon,
                           const TraceOptions& options) {
  if (horizon < 1) throw DomainError("entropy horizon must be at least 1");
  if (action.length && horizon > *action.length)
    throw DomainError("horizon " + std::to_string(horizon) + " exceeds the " +
                      std::to_string(*action.length) + " listed multipliers");
  const PlaceFilter& filter = action.filter;
  const bool use_lcm =
      filter.kind() == PlaceFilter::Kind::all || filter.kind() == PlaceFilter::Kind::complement;
  const bool arch = filter.includes_infinity();
  // Finite places followed individually: the included ones for single and
  // subset filters, the removed ones for a complement filter.
  std::vector<Integer> listed;
  for (const Place& v : filter.places())
    if (v.is_finite() && filter.kind() != PlaceFilter::Kind::all) listed.push_back(v.p());

  EntropyTrace out;
  out.action = action.name;
  out.rate = action.rate.to_string();
  out.filter = filter.to_string();
  out.horizon = horizon;
  out.target = action.target;
  for (const Integer& p : listed) out.places.push_back(PlaceVolumes{Place::finite(p), {}, 0});

  const std::vector<std::size_t> traced = traced_indices(horizon, options);
  std::size_t next = 0;
  ThetaStream stream = action.generator();
  Integer lcm = 1;
  double arch_max = 0.0;
  std::vector<long> exponents(listed.size(), 0);

  for (std::size_t n = 1; n <= horizon; ++n) {
    const ExactRational theta = stream();
    if (theta == 0) throw DomainError("diagonal action multiplier theta_" + std::to_string(n) + " = 0");
    if (use_lcm && theta.get_den() != 1) {
      const Integer den = theta.get_den();
      if (mpz_divisible_p(den.get_mpz_t(), lcm.get_mpz_t()))
        lcm = den;
      else if (!mpz_divisible_p(lcm.get_mpz_t(), den.get_mpz_t()))
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t i = 0; i < listed.size(); ++i)
      exponents[i] = std::max(exponents[i], negative_valuation(theta, listed[i]));
    if (arch) arch_max = std::max(arch_max, log_abs_archimedean(theta));

    if (next >= traced.size() || traced[next] != n) continue;
    ++next;
    const double r = action.rate(n);
    if (!(r > 0.0)) continue;
    double listed_sum = 0.0;
    for (std::size_t i = 0; i < listed.size(); ++i) {
      const double lv = -static_cast<double>(exponents[i]) * out.places[i].place.log_p();
      out.places[i].log_volume.push_back(lv);
      listed_sum += lv;
    }
    double finite = 0.0;
    switch (filter.kind()) {
      case PlaceFilter::Kind::all: finite = lcm == 1 ? 0.0 : -log_abs(lcm); break;
      case PlaceFilter::Kind::single:
      case PlaceFilter::Kind::subset: finite = listed_sum; break;
      case PlaceFilter::Kind::complement:
        finite = (lcm == 1 ? 0.0 : -log_abs(lcm)) - listed_sum;
        break;
    }
    const double archimedean = arch ? -arch_max : 0.0;
    out.n.push_back(n);
    out.finite_log_volume.push_back(finite);
    out.archimedean_log_volume.push_back(archimedean);
    out.quotient.push_back(-(finite + archimedean) / r);
  }
  if (out.n.empty() || out.n.back() != horizon)
    throw DomainError("rate vanishes at the horizon " + std::to_string(horizon));
  out.estimate = out.quotient.back();

  Integer listed_part = 1;
  for (std::size_t i = 0; i < listed.size(); ++i) {
    out.places[i].exponent = exponents[i];
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), listed[i].get_mpz_t(), static_cast<unsigned long>(exponents[i]));
    listed_part *= pk;
  }
  switch (filter.kind()) {
    case PlaceFilter::Kind::all: out.finite_denominator = lcm; break;
    case PlaceFilter::Kind::single:
    case PlaceFilter::Kind::subset: out.finite_denominator = listed_part; break;
    case PlaceFilter::Kind::complement:
      mpz_divexact(out.finite_denominator.get_mpz_t(), lcm.get_mpz_t(), listed_part.get_mpz_t());
      break;
  }
  out.notes.push_back("archimedean log(2 eps) term omitted");
  if (action.name == "primes-up-to-j")
    out.checks["estimate_in_(0,2log2]"] = out.estimate > 0.0 && out.estimate <= 2.0 * std::log(2.0);
  return out;
}

namespace {

void require_non_torsion(const WeierstrassCurve& curve, const CurvePoint& q) {
  if (q.is_identity() || is_torsion(curve, q))
    throw DomainError("torsion point: the entropy sequence degenerates");
}

double lambda_reference(const WeierstrassCurve& curve, const CurvePoint& q, const Place& v,
                        const DivisionSequence& seq, const EdsEntropyOptions& options) {
  if (v.is_infinite()) return archimedean_duplication_series(curve, q, options.reference_depth).estimate;
  if (reduction_analysis(curve, q, v.p()).point == PointReduction::nonsingular)
    return local_height_nonsingular(curve, q, v.p()).value;
  if (auto it = options.supplied.find(v.p()); it != options.supplied.end()) return it->second;
  return local_height_psi_limit(seq, v).estimate;
}

}  // namespace

EntropyTrace elliptic_real_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                   std::size_t horizon) {
  if (horizon < 1 || horizon > 12) throw DomainError("elliptic entropy horizon must lie in [1, 12]");
  require_non_torsion(curve, q);
  const DoublingIterates it = double_iterates(curve, q, horizon);
  std::vector<ExactRational> thetas;
  for (const Integer& b : it.b) thetas.emplace_back(b);
  DiagonalAction action = explicit_action(std::move(thetas), RateFunction::exponential(4),
                                          PlaceFilter::single(Place::infinity()));
  action.name = "elliptic-b";
  action.target = canonical_height(curve, q, horizon).estimate;
  return entropy_trace(action, horizon);
}

EntropyTrace elliptic_adelic_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                     std::size_t horizon) {
  if (horizon > 12) throw DomainError("elliptic entropy horizon must be <= 12");
  require_non_torsion(curve, q);
  const DoublingIterates it = double_iterates(curve, q, horizon);
  DiagonalAction action =
      explicit_action(it.theta, RateFunction::exponential(4), PlaceFilter::all());
  action.name = "elliptic-theta";
  action.target = 2.0 * canonical_height(curve, q, horizon).estimate;
  EntropyTrace out = entropy_trace(action, horizon);

  bool exact = true;
  Integer lcm = 1;
  for (std::size_t n = 0; n < horizon; ++n) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), it.theta[n].get_den_mpz_t());
    if (lcm != it.b[n] * it.b[n]) exact = false;
  }
  out.checks["finite_volume_equals_minus_2_log_bN"] = exact && out.finite_denominator == lcm;
  return out;
}

std::string to_string(EdsPart part) {
  switch (part) {
    case EdsPart::all: return "all";
    case EdsPart::singular: return "S";
    case EdsPart::quotient: return "complement";
  }
  return "?";
}

EdsPart parse_eds_part(std::string_view text) {
  if (text == "all") return EdsPart::all;
  if (text == "S") return EdsPart::singular;
  if (text == "complement" || text == "quotient") return EdsPart::quotient;
  throw ParseError("EDS part must be all, S or complement");
}

EntropyTrace eds_entropy(const WeierstrassCurve& curve, const CurvePoint& q, std::size_t horizon,
                         EdsPart part, const EdsEntropyOptions& options) {
  if (horizon < 2 || horizon > 12) throw DomainError("EDS entropy horizon must lie in [2, 12]");
  require_non_torsion(curve, q);
  const std::size_t top = std::size_t{1} << horizon;
  const DivisionSequence seq =
      division_poly_values(curve, q, std::max(top, options.psi_n));
  const std::vector<Integer> u = eds_u_sequence(seq, horizon);

  std::set<Place> s;
  for (const Integer& p : singular_primes(curve, q)) s.insert(Place::finite(p));

  PlaceFilter filter = part == EdsPart::all        ? PlaceFilter::all()
                       : part == EdsPart::singular ? PlaceFilter::subset(s)
                                                   : PlaceFilter::complement(s);
  std::vector<ExactRational> thetas;
  for (const Integer& un : u) thetas.emplace_back(Integer(1), un);
  DiagonalAction action = explicit_action(std::move(thetas), RateFunction::exponential(4), filter);
  action.name = "eds-u-inverse";

  switch (part) {
    case EdsPart::all:
      action.target = lambda_reference(curve, q, Place::infinity(), seq, options) +
                      0.5 * log_abs(Integer(q.x().get_den()));
      break;
    case EdsPart::singular: {
      double sum = 0.0;
      for (const Place& v : s) sum += lambda_reference(curve, q, v, seq, options);
      action.target = -sum;
      break;
    }
    case EdsPart::quotient:
      action.target = canonical_height(curve, q, options.reference_depth).estimate;
      break;
  }
  EntropyTrace out = entropy_trace(action, horizon);
  out.checks["u_integral"] = true;
  if (s.empty()) out.notes.push_back("no primes of singular reduction");
  return out;
}

EntropyTrace local_flip_entropy(const WeierstrassCurve& curve, const CurvePoint& q,
                                const Place& v, std::size_t horizon,
                                const EdsEntropyOptions& options) {
  if (horizon < 2) throw DomainError("entropy horizon must be at least 2");
  require_non_torsion(curve, q);
  const DivisionSequence seq = division_poly_values(curve, q, horizon);
  if (seq.first_zero()) throw DomainError("W_n(Q) = 0 within the horizon");
  const double lambda = lambda_reference(
      curve, q, v,
      v.is_finite() && options.psi_n > horizon ? division_poly_values(curve, q, options.psi_n) : seq,
      options);
  const int eps = height_sign(lambda);

  std::vector<ExactRational> thetas;
  thetas.reserve(horizon);
  for (std::size_t j = 1; j <= horizon; ++j) {
    ExactRational w = abs(seq.w(j));
    thetas.push_back(eps > 0 ? w : ExactRational(1) / w);
  }
  DiagonalAction action =
      explicit_action(std::move(thetas), RateFunction::square(), PlaceFilter::single(v));
  action.name = "flip-local";
  action.target = eps * lambda;
  EntropyTrace out = entropy_trace(action, horizon);
  out.notes.push_back(std::string("sign eps = ") + (eps > 0 ? "+1" : "-1"));
  if (q.x().get_den() != 1)
    out.notes.push_back("q_j is taken as |W_j(Q)|, not the integral EDS term, since b > 1");
  return out;
}

}  // namespace adelent
