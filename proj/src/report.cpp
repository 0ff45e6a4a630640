#include "adelent/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

Json reals(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(real(x));
  return out;
}

std::vector<double> reals_from(const Json& j) {
  std::vector<double> out;
  for (const Json& x : j) out.push_back(real_from(x));
  return out;
}

Json integers(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const Integer& x : xs) out.push_back(x.get_str());
  return out;
}

std::vector<Integer> integers_from(const Json& j) {
  std::vector<Integer> out;
  for (const Json& x : j) out.emplace_back(x.get<std::string>());
  return out;
}

HeightMethod parse_method(const std::string& s) {
  for (HeightMethod m : {HeightMethod::closed_form, HeightMethod::psi_limit,
                         HeightMethod::tate_formula, HeightMethod::subtraction,
                         HeightMethod::duplication_series})
    if (to_string(m) == s) return m;
  throw ParseError("unknown height method '" + s + "'");
}

CurveReduction parse_curve_reduction(const std::string& s) {
  for (CurveReduction r : {CurveReduction::good, CurveReduction::split_multiplicative,
                           CurveReduction::nonsplit_multiplicative, CurveReduction::additive})
    if (to_string(r) == s) return r;
  throw ParseError("unknown reduction type '" + s + "'");
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  if (x == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

double real_from(const Json& j) {
  if (j.is_null()) return NAN;
  return j.get<double>();
}

Json to_json(const ProjectiveHeight& h) {
  return {{"height", real(h.height)}, {"archimedean", real(h.archimedean)},
          {"finite", real(h.finite)}};
}

template <>
ProjectiveHeight from_json<ProjectiveHeight>(const Json& j) {
  return {real_from(j.at("height")), real_from(j.at("archimedean")), real_from(j.at("finite"))};
}

Json to_json(const CongruenceResult& c) {
  return {{"sum", c.sum.get_str()},
          {"residue", c.residue.get_str()},
          {"sign", c.sign},
          {"realizable", c.realizable()}};
}

template <>
CongruenceResult from_json<CongruenceResult>(const Json& j) {
  CongruenceResult c;
  c.sum = Integer(j.at("sum").get<std::string>());
  c.residue = Integer(j.at("residue").get<std::string>());
  c.sign = j.at("sign").get<int>();
  return c;
}

Json to_json(const ReductionInfo& r) {
  return {{"p", r.p.get_str()},
          {"curve", to_string(r.curve)},
          {"point", to_string(r.point)},
          {"model_sensitive", r.model_sensitive}};
}

template <>
ReductionInfo from_json<ReductionInfo>(const Json& j) {
  ReductionInfo r;
  r.p = Integer(j.at("p").get<std::string>());
  r.curve = parse_curve_reduction(j.at("curve").get<std::string>());
  r.point = j.at("point").get<std::string>() == "singular" ? PointReduction::singular
                                                           : PointReduction::nonsingular;
  r.model_sensitive = j.at("model_sensitive").get<bool>();
  return r;
}

Json to_json(const HeightEstimate& e) {
  return {{"estimate", real(e.estimate)}, {"trace", reals(e.trace)}, {"torsion", e.torsion}};
}

template <>
HeightEstimate from_json<HeightEstimate>(const Json& j) {
  HeightEstimate e;
  e.estimate = real_from(j.at("estimate"));
  e.trace = reals_from(j.at("trace"));
  e.torsion = j.at("torsion").get<bool>();
  return e;
}

Json to_json(const LocalHeightReport& r) {
  Json j = {{"place", r.place.to_string()},
            {"value", real(r.value)},
            {"method", to_string(r.method)},
            {"sign", r.sign},
            {"trace", reals(r.trace)}};
  j["reduction"] = r.reduction ? to_json(*r.reduction) : Json(nullptr);
  j["log_p_multiple"] = r.log_p_multiple ? Json(to_string(*r.log_p_multiple)) : Json(nullptr);
  return j;
}

template <>
LocalHeightReport from_json<LocalHeightReport>(const Json& j) {
  LocalHeightReport r{Place::parse(j.at("place").get<std::string>())};
  r.value = real_from(j.at("value"));
  r.method = parse_method(j.at("method").get<std::string>());
  r.sign = j.at("sign").get<int>();
  r.trace = reals_from(j.at("trace"));
  if (!j.at("reduction").is_null()) r.reduction = from_json<ReductionInfo>(j.at("reduction"));
  if (!j.at("log_p_multiple").is_null())
    r.log_p_multiple = parse_rational(j.at("log_p_multiple").get<std::string>());
  return r;
}

Json to_json(const GlobalHeightReport& r) {
  Json locals = Json::array();
  for (const auto& l : r.locals) locals.push_back(to_json(l));
  return {{"hhat", real(r.hhat)},
          {"hhat_trace", reals(r.hhat_trace)},
          {"torsion", r.torsion},
          {"locals", locals},
          {"local_sum", real(r.local_sum)},
          {"residual", real(r.residual)},
          {"archimedean",
           {{"duplication_series", real(r.archimedean.duplication_series)},
            {"psi_limit", real(r.archimedean.psi_limit)},
            {"subtraction", real(r.archimedean.subtraction)},
            {"gap", real(r.archimedean.gap)}}},
          {"depth", r.depth},
          {"psi_n", r.psi_n},
          {"notes", r.notes}};
}

template <>
GlobalHeightReport from_json<GlobalHeightReport>(const Json& j) {
  GlobalHeightReport r;
  r.hhat = real_from(j.at("hhat"));
  r.hhat_trace = reals_from(j.at("hhat_trace"));
  r.torsion = j.at("torsion").get<bool>();
  for (const Json& l : j.at("locals")) r.locals.push_back(from_json<LocalHeightReport>(l));
  r.local_sum = real_from(j.at("local_sum"));
  r.residual = real_from(j.at("residual"));
  const Json& a = j.at("archimedean");
  r.archimedean.duplication_series = real_from(a.at("duplication_series"));
  r.archimedean.psi_limit = real_from(a.at("psi_limit"));
  r.archimedean.subtraction = real_from(a.at("subtraction"));
  r.archimedean.gap = real_from(a.at("gap"));
  r.depth = j.at("depth").get<std::size_t>();
  r.psi_n = j.at("psi_n").get<std::size_t>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json to_json(const PlaceVolumes& v) {
  return {{"place", v.place.to_string()},
          {"log_volume", reals(v.log_volume)},
          {"exponent", v.exponent}};
}

template <>
PlaceVolumes from_json<PlaceVolumes>(const Json& j) {
  PlaceVolumes v{Place::parse(j.at("place").get<std::string>()), {}, 0};
  v.log_volume = reals_from(j.at("log_volume"));
  v.exponent = j.at("exponent").get<long>();
  return v;
}

Json to_json(const EntropyTrace& t) {
  Json places = Json::array();
  for (const auto& p : t.places) places.push_back(to_json(p));
  return {{"action", t.action},
          {"rate", t.rate},
          {"filter", t.filter},
          {"horizon", t.horizon},
          {"n", t.n},
          {"quotient", reals(t.quotient)},
          {"finite_log_volume", reals(t.finite_log_volume)},
          {"archimedean_log_volume", reals(t.archimedean_log_volume)},
          {"places", places},
          {"estimate", real(t.estimate)},
          {"target", t.target ? real(*t.target) : Json(nullptr)},
          {"finite_denominator", t.finite_denominator.get_str()},
          {"checks", t.checks},
          {"notes", t.notes}};
}

template <>
EntropyTrace from_json<EntropyTrace>(const Json& j) {
  EntropyTrace t;
  t.action = j.at("action").get<std::string>();
  t.rate = j.at("rate").get<std::string>();
  t.filter = j.at("filter").get<std::string>();
  t.horizon = j.at("horizon").get<std::size_t>();
  t.n = j.at("n").get<std::vector<std::size_t>>();
  t.quotient = reals_from(j.at("quotient"));
  t.finite_log_volume = reals_from(j.at("finite_log_volume"));
  t.archimedean_log_volume = reals_from(j.at("archimedean_log_volume"));
  for (const Json& p : j.at("places")) t.places.push_back(from_json<PlaceVolumes>(p));
  t.estimate = real_from(j.at("estimate"));
  if (!j.at("target").is_null()) t.target = real_from(j.at("target"));
  t.finite_denominator = Integer(j.at("finite_denominator").get<std::string>());
  t.checks = j.at("checks").get<std::map<std::string, bool>>();
  t.notes = j.at("notes").get<std::vector<std::string>>();
  return t;
}

Json to_json(const MorphicHeightReport& r) {
  Json locals = Json::object();
  for (const auto& [v, value] : r.locals) locals[v.to_string()] = real(value);
  return {{"global", real(r.global)},
          {"locals", locals},
          {"depth", r.depth},
          {"preperiodic", r.preperiodic},
          {"truncated", r.truncated}};
}

template <>
MorphicHeightReport from_json<MorphicHeightReport>(const Json& j) {
  MorphicHeightReport r;
  r.global = real_from(j.at("global"));
  for (const auto& [key, value] : j.at("locals").items())
    r.locals.emplace(Place::parse(key), real_from(value));
  r.depth = j.at("depth").get<std::size_t>();
  r.preperiodic = j.at("preperiodic").get<bool>();
  r.truncated = j.at("truncated").get<bool>();
  return r;
}

Json to_json(const JuliaHeight& h) {
  return {{"level", h.level},
          {"root_sum", real(h.root_sum)},
          {"direct", h.direct ? real(*h.direct) : Json(nullptr)},
          {"escape_rate", real(h.escape_rate)},
          {"leading_term", real(h.leading_term)},
          {"principal_value", h.principal_value},
          {"excluded", h.excluded},
          {"residual_max", real(h.max_residual)},
          {"trace", reals(h.trace)}};
}

template <>
JuliaHeight from_json<JuliaHeight>(const Json& j) {
  JuliaHeight h;
  h.level = j.at("level").get<std::size_t>();
  h.root_sum = real_from(j.at("root_sum"));
  if (!j.at("direct").is_null()) h.direct = real_from(j.at("direct"));
  h.escape_rate = real_from(j.at("escape_rate"));
  h.leading_term = real_from(j.at("leading_term"));
  h.principal_value = j.at("principal_value").get<bool>();
  h.excluded = j.at("excluded").get<std::size_t>();
  h.max_residual = real_from(j.at("residual_max"));
  h.trace = reals_from(j.at("trace"));
  return h;
}

Json to_json(const EdsSequences& s) {
  return {{"q", integers(s.q)},
          {"u", integers(s.u)},
          {"divisibility_ok", s.divisibility_ok},
          {"square_ok", s.square_ok}};
}

template <>
EdsSequences from_json<EdsSequences>(const Json& j) {
  EdsSequences s;
  s.q = integers_from(j.at("q"));
  s.u = integers_from(j.at("u"));
  s.divisibility_ok = j.at("divisibility_ok").get<bool>();
  s.square_ok = j.at("square_ok").get<bool>();
  return s;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace adelent
