#include "adelent/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

Json row(std::size_t n, const std::string& quantity, Json value) {
  return {{"n", n}, {"quantity", quantity}, {"value", std::move(value)}};
}

void append_rows(Json& trace, const std::string& quantity, const std::vector<double>& values,
                 std::size_t first_n) {
  for (std::size_t i = 0; i < values.size(); ++i) trace.push_back(row(first_n + i, quantity, real(values[i])));
}

Integer parse_integer(const std::string& text, const char* what) {
  const ExactRational v = parse_rational(text);
  if (v.get_den() != 1) throw ParseError(std::string(what) + " must be an integer");
  return v.get_num();
}

WeierstrassCurve require_curve(const RunConfig& c) {
  if (c.curve.empty()) throw ParseError("--curve is required");
  return WeierstrassCurve::parse(c.curve);
}

CurvePoint require_point(const RunConfig& c, const WeierstrassCurve& e) {
  if (c.point.empty()) throw ParseError("--point is required");
  return CurvePoint::parse(e, c.point);
}

std::map<Integer, double> parse_supplied(const std::vector<std::string>& items) {
  std::map<Integer, double> out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("--tate expects p=value");
    const Integer p = parse_integer(item.substr(0, eq), "prime");
    if (!is_prime(p)) throw ParseError("--tate: " + p.get_str() + " is not prime");
    try {
      out[p] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("--tate: bad value in '" + item + "'");
    }
  }
  return out;
}

Json solenoid_report(const RunConfig& c) {
  if (c.a.empty() || c.b.empty()) throw ParseError("--a and --b are required");
  const Integer a = parse_integer(c.a, "--a"), b = parse_integer(c.b, "--b");
  Json doc = {{"command", "solenoid"}, {"a", a.get_str()}, {"b", b.get_str()}, {"n", c.n},
              {"panels", c.panels}};
  doc["height"] = to_json(projective_height(a, b));
  if (abs(a) != abs(b)) {
    const double jensen = jensen_quadrature(a, b, c.panels);
    doc["jensen"] = real(jensen);
    doc["jensen_error"] = real(jensen - projective_height(a, b).height);
  } else {
    doc["jensen"] = nullptr;
    doc["jensen_error"] = nullptr;
  }
  std::vector<Integer> counts;
  Json trace = Json::array(), congruence = Json::array();
  for (unsigned k = 1; k <= c.n; ++k) {
    counts.push_back(periodic_count(a, b, k));
    trace.push_back(row(k, "periodic_count", counts.back().get_str()));
    trace.push_back(row(k, "log_count_over_n",
                        counts.back() == 0 ? Json(nullptr) : real(log_abs(counts.back()) / k)));
  }
  for (std::size_t k = 1; k <= c.n; ++k) {
    Json entry = to_json(mobius_congruence(counts, k));
    entry["n"] = k;
    congruence.push_back(entry);
  }
  Json count_strings = Json::array();
  for (const Integer& v : counts) count_strings.push_back(v.get_str());
  doc["counts"] = count_strings;
  doc["congruence"] = congruence;
  doc["trace"] = trace;
  return doc;
}

Json eds_report(const RunConfig& c) {
  const WeierstrassCurve e = require_curve(c);
  const CurvePoint q = require_point(c, e);
  const DivisionSequence seq = division_poly_values(e, q, c.n);
  Json doc = {{"command", "eds"}, {"curve", e.to_string()}, {"point", q.to_string()}, {"N", c.n}};
  Json w = Json::array(), trace = Json::array();
  std::vector<Integer> abs_w;
  bool integral = true;
  for (std::size_t k = 1; k <= c.n; ++k) {
    const ExactRational wk = seq.w(k);
    w.push_back(to_string(wk));
    if (wk.get_den() != 1) integral = false;
    abs_w.push_back(abs(wk.get_num()));
    trace.push_back(row(k, "log_abs_W_over_n2",
                        wk == 0 ? Json(nullptr)
                                : real(seq.log_abs_w(k, Place::infinity()) /
                                       static_cast<double>(k * k))));
  }
  doc["W"] = w;
  const EdsSequences s = eds_sequences(seq);
  Json eds = to_json(s);
  for (auto& [key, value] : eds.items()) doc[key] = value;
  if (const auto zero = seq.first_zero()) doc["first_zero"] = *zero;
  else doc["first_zero"] = nullptr;
  Json congruence = Json::array();
  if (integral) {
    for (std::size_t k = 1; k <= c.n; ++k) {
      Json entry = to_json(mobius_congruence(abs_w, k));
      entry["n"] = k;
      congruence.push_back(entry);
    }
  }
  doc["congruence"] = congruence;
  doc["notes"] = Json::array({"W lists the standard division values W_n(Q); psi_n is W_n^2",
                              "congruence is tested on |W_n| when every W_n is an integer"});
  doc["trace"] = trace;
  return doc;
}

Json height_report(const RunConfig& c) {
  const WeierstrassCurve e = require_curve(c);
  const CurvePoint q = require_point(c, e);
  DecompositionOptions options;
  options.depth = c.depth;
  options.psi_n = c.psi_n;
  options.supplied = parse_supplied(c.supplied);
  const GlobalHeightReport report = height_decomposition(e, q, options);
  Json doc = to_json(report);
  doc["command"] = "height";
  doc["curve"] = e.to_string();
  doc["point"] = q.to_string();
  Json trace = Json::array();
  append_rows(trace, "hhat", report.hhat_trace, 0);
  for (const auto& local : report.locals) {
    const bool arch = local.place.is_infinite();
    append_rows(trace, "lambda_" + local.place.to_string(), local.trace, arch ? 0 : 1);
  }
  doc["trace"] = trace;
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read action file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Json entropy_report(const RunConfig& c) {
  if (c.action.empty()) throw ParseError("--action is required");
  const std::optional<RateFunction> rate =
      c.rate.empty() ? std::nullopt : std::optional<RateFunction>(RateFunction::parse(c.rate));
  EdsEntropyOptions eds_options;
  eds_options.psi_n = c.psi_n;
  eds_options.supplied = parse_supplied(c.supplied);

  const auto names = builtin_action_names();
  EntropyTrace trace;
  Json extra = Json::object();
  if (std::find(names.begin(), names.end(), c.action) != names.end()) {
    const PlaceFilter filter = PlaceFilter::parse(c.place_filter.empty() ? "all" : c.place_filter);
    trace = entropy_trace(builtin_action(c.action, rate, filter), c.horizon);
  } else if (c.action == "elliptic-b" || c.action == "elliptic-theta" ||
             c.action == "eds-u-inverse" || c.action == "flip-local") {
    const WeierstrassCurve e = require_curve(c);
    const CurvePoint q = require_point(c, e);
    extra["curve"] = e.to_string();
    extra["point"] = q.to_string();
    if (c.action == "elliptic-b") {
      trace = elliptic_real_entropy(e, q, c.horizon);
    } else if (c.action == "elliptic-theta") {
      trace = elliptic_adelic_entropy(e, q, c.horizon);
    } else if (c.action == "eds-u-inverse") {
      trace = eds_entropy(e, q, c.horizon, parse_eds_part(c.place_filter.empty() ? "all" : c.place_filter),
                          eds_options);
    } else {
      trace = local_flip_entropy(e, q, Place::parse(c.place_filter.empty() ? "inf" : c.place_filter),
                                 c.horizon, eds_options);
    }
  } else {
    const std::string path = c.action.front() == '@' ? c.action.substr(1) : c.action;
    const PlaceFilter filter = PlaceFilter::parse(c.place_filter.empty() ? "all" : c.place_filter);
    trace = entropy_trace(
        explicit_action(parse_theta_list(read_file(path)), rate.value_or(RateFunction::linear()), filter),
        c.horizon);
  }
  Json doc = to_json(trace);
  for (auto& [key, value] : extra.items()) doc[key] = value;
  doc["command"] = "entropy";
  Json rows = Json::array();
  for (std::size_t i = 0; i < trace.n.size(); ++i) {
    rows.push_back(row(trace.n[i], "quotient", real(trace.quotient[i])));
    rows.push_back(row(trace.n[i], "finite_log_volume", real(trace.finite_log_volume[i])));
    rows.push_back(row(trace.n[i], "archimedean_log_volume", real(trace.archimedean_log_volume[i])));
  }
  doc["trace"] = rows;
  return doc;
}

Json morphic_report(const RunConfig& c) {
  if (c.poly.empty() || c.q.empty()) throw ParseError("--poly and --q are required");
  const PolyMap f = PolyMap::parse(c.poly);
  const ExactRational q = parse_rational(c.q);
  const std::optional<Place> place =
      c.place.empty() ? std::nullopt : std::optional<Place>(Place::parse(c.place));

  const OrbitRecord orb = orbit(f, q, c.depth);
  Json head = Json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(orb.values.size(), 8); ++i) {
    const std::string s = to_string(orb.values[i]);
    head.push_back(s.size() <= 80 ? s : "<" + std::to_string(s.size()) + " chars>");
  }
  Json doc = {{"command", "morphic"}, {"poly", f.to_string()}, {"q", to_string(q)}, {"depth", c.depth}};
  doc["orbit"] = {{"head", head},
                  {"depth", orb.depth()},
                  {"preperiod", orb.preperiod ? Json(*orb.preperiod) : Json(nullptr)},
                  {"period", orb.period ? Json(*orb.period) : Json(nullptr)},
                  {"truncated", orb.truncated},
                  {"escape_index", orb.escape_index ? Json(*orb.escape_index) : Json(nullptr)},
                  {"escape_place", orb.escape_place ? Json(orb.escape_place->to_string()) : Json(nullptr)}};

  Json rows = Json::array();
  std::vector<Place> places = place ? std::vector<Place>{*place} : morphic_places(f, q);
  if (place) {
    const HeightEstimate local = morphic_local_height(f, q, *place, c.depth);
    doc["place"] = place->to_string();
    doc["local"] = to_json(local);
  } else {
    doc["heights"] = to_json(morphic_global_height(f, q, c.depth));
  }
  for (const Place& v : places)
    append_rows(rows, "lambda_" + v.to_string(), morphic_local_height(f, q, v, c.depth).trace, 0);

  const PlaceFilter filter = place ? PlaceFilter::single(*place) : PlaceFilter::all();
  if (orb.depth() >= 1) {
    const EntropyTrace entropy = morphic_entropy(f, q, c.depth, filter);
    doc["entropy"] = {{"estimate", real(entropy.estimate)},
                      {"target", entropy.target ? real(*entropy.target) : Json(nullptr)},
                      {"filter", entropy.filter},
                      {"notes", entropy.notes}};
    for (std::size_t i = 0; i < entropy.n.size(); ++i)
      rows.push_back(row(entropy.n[i], "entropy_quotient", real(entropy.quotient[i])));
  }
  doc["trace"] = rows;
  return doc;
}

Json julia_report(const RunConfig& c) {
  if (c.poly.empty() || c.q.empty()) throw ParseError("--poly and --q are required");
  const ComplexPoly f = ComplexPoly::parse(c.poly);
  const Complex q = parse_complex(c.q);
  RootOptions options;
  options.tol = c.tol;
  const JuliaHeight h = julia_local_height(f, q, c.level, options);
  Json doc = to_json(h);
  doc["command"] = "julia";
  doc["poly"] = f.to_string();
  doc["q"] = {real(q.real()), real(q.imag())};
  doc["tol"] = real(c.tol);
  doc["closed_form"] = is_chebyshev(f) ? real(chebyshev_closed_form(q)) : Json(nullptr);
  Json rows = Json::array();
  append_rows(rows, "direct", h.trace, 1);
  doc["trace"] = rows;
  return doc;
}

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw ParseError("cannot write '" + c.output + "'");
  file << text;
}

}  // namespace

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig config;
  CLI::App app{"Canonical heights and adelic entropy", "adelent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "adelent 0.3.0");
  std::string format = "json";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", config.output, "write the report to this file");
  };

  auto* solenoid = app.add_subcommand("solenoid", "projective height, Jensen quadrature, periodic counts");
  solenoid->add_option("--a", config.a)->required();
  solenoid->add_option("--b", config.b)->required();
  solenoid->add_option("--n", config.n)->check(CLI::PositiveNumber);
  solenoid->add_option("--panels", config.panels)->check(CLI::Range(16, 1 << 26));
  add_common(solenoid);

  auto* eds = app.add_subcommand("eds", "division values and elliptic divisibility sequences");
  eds->add_option("--curve", config.curve, "c1,c2,c3,c4,c6")->required();
  eds->add_option("--point", config.point, "x;y")->required();
  eds->add_option("--N", config.n)->check(CLI::PositiveNumber);
  add_common(eds);

  auto* height = app.add_subcommand("height", "local and global canonical heights");
  height->add_option("--curve", config.curve, "c1,c2,c3,c4,c6")->required();
  height->add_option("--point", config.point, "x;y")->required();
  height->add_option("--depth", config.depth)->check(CLI::Range(1, 12));
  height->add_option("--psi-N", config.psi_n)->check(CLI::Range(2, 5000));
  height->add_option("--tate", config.supplied, "p=value local height at a singular prime");
  add_common(height);

  auto* entropy = app.add_subcommand("entropy", "volume-growth entropy of a diagonal action");
  entropy->add_option("--action", config.action, "builtin name or file of rationals")->required();
  entropy->add_option("--rate", config.rate, "n, nlogn, n2, logn, exp:c");
  entropy->add_option("--curve", config.curve);
  entropy->add_option("--point", config.point);
  entropy->add_option("--place-filter", config.place_filter, "all, p, inf, S:p,..., not:p,...");
  entropy->add_option("--horizon", config.horizon)->check(CLI::PositiveNumber);
  entropy->add_option("--psi-N", config.psi_n)->check(CLI::Range(2, 5000));
  entropy->add_option("--tate", config.supplied, "p=value local height at a singular prime");
  add_common(entropy);

  auto* morphic = app.add_subcommand("morphic", "canonical heights of polynomial maps");
  morphic->add_option("--poly", config.poly, "c_d,...,c_0")->required();
  morphic->add_option("--q", config.q)->required();
  morphic->add_option("--depth", config.depth)->check(CLI::Range(1, 64));
  morphic->add_option("--place", config.place);
  add_common(morphic);

  auto* julia = app.add_subcommand("julia", "archimedean heights from periodic points");
  julia->add_option("--poly", config.poly, "c_d,...,c_0")->required();
  julia->add_option("--q", config.q)->required();
  julia->add_option("--level", config.level)->check(CLI::PositiveNumber);
  julia->add_option("--tol", config.tol)->check(CLI::PositiveNumber);
  add_common(julia);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }
  for (auto* sub : app.get_subcommands()) config.subcommand = sub->get_name();
  config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return config;
}

Json execute(const RunConfig& c) {
  if (c.subcommand == "solenoid") return solenoid_report(c);
  if (c.subcommand == "eds") return eds_report(c);
  if (c.subcommand == "height") return height_report(c);
  if (c.subcommand == "entropy") return entropy_report(c);
  if (c.subcommand == "morphic") return morphic_report(c);
  if (c.subcommand == "julia") return julia_report(c);
  throw ParseError("unknown subcommand '" + c.subcommand + "'");
}

std::string render_csv(const Json& report) {
  std::string out = "n,quantity,value\n";
  for (const Json& r : report.at("trace")) {
    const Json& v = r.at("value");
    out += std::to_string(r.at("n").get<std::size_t>()) + "," + r.at("quantity").get<std::string>() +
           "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Json doc = execute(config);
    write_output(config, config.format == OutputFormat::csv ? render_csv(doc) : dump(doc), out);
    return 0;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(args, out);
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace adelent
