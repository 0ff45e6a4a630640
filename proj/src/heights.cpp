#include "adelent/heights.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adelent/errors.hpp"

namespace adelent {

std::string to_string(HeightMethod m) {
  switch (m) {
    case HeightMethod::closed_form: return "closed-form";
    case HeightMethod::psi_limit: return "psi-limit";
    case HeightMethod::tate_formula: return "tate-formula";
    case HeightMethod::subtraction: return "subtraction";
    case HeightMethod::duplication_series: return "duplication-series";
  }
  return "?";
}

int height_sign(double value) { return value >= 0.0 ? 1 : -1; }

double naive_height(const CurvePoint& q) {
  if (q.is_identity()) return 0.0;
  const ExactRational& x = q.x();
  if (x == 0) return 0.0;
  return 0.5 * std::max(log_abs(Integer(x.get_num())), log_abs(Integer(x.get_den())));
}

HeightEstimate canonical_height(const WeierstrassCurve& curve, const CurvePoint& q,
                                std::size_t depth) {
  if (depth > 12) throw DomainError("canonical_height: depth " + std::to_string(depth) + " > 12");
  HeightEstimate out;
  if (q.is_identity() || is_torsion(curve, q)) {
    out.torsion = true;
    return out;
  }
  out.trace.push_back(naive_height(q));
  const DoublingIterates it = double_iterates(curve, q, depth);
  double scale = 1.0;
  for (const CurvePoint& p : it.points) {
    scale *= 0.25;
    out.trace.push_back(scale * naive_height(p));
  }
  out.estimate = out.trace.back();
  return out;
}

LocalHeightReport local_height_nonsingular(const WeierstrassCurve& curve, const CurvePoint& q,
                                           const Integer& p) {
  if (q.is_identity()) throw DomainError("local height undefined at the identity");
  ReductionInfo info = reduction_analysis(curve, q, p);
  if (info.point == PointReduction::singular)
    throw DomainError("Q has singular reduction at " + p.get_str() +
                      "; use the Tate formula or the psi-limit");
  const long v = q.x() == 0 ? 0 : std::max(0L, -valuation(q.x(), p));
  LocalHeightReport r{Place::finite(p)};
  r.method = HeightMethod::closed_form;
  r.log_p_multiple = ExactRational(v, 2);
  r.log_p_multiple->canonicalize();
  r.value = 0.5 * static_cast<double>(v) * r.place.log_p();
  r.sign = height_sign(r.value);
  r.reduction = std::move(info);
  return r;
}

double tate_local_height(const Integer& p, unsigned long k, unsigned long r,
                         std::optional<double> unit_dist) {
  if (!is_prime(p)) throw DomainError("tate_local_height: " + p.get_str() + " is not prime");
  if (k == 0) throw DomainError("tate_local_height: k must be positive");
  if (r >= k) throw DomainError("tate_local_height: need 0 <= r < k");
  if (r == 0) {
    if (!unit_dist) throw DomainError("tate_local_height: r = 0 needs |1-u|_p");
    if (!(*unit_dist > 0.0) || *unit_dist > 1.0)
      throw DomainError("tate_local_height: |1-u|_p must lie in (0, 1]");
    return -std::log(*unit_dist);
  }
  const double t = static_cast<double>(r) / static_cast<double>(k);
  return -(static_cast<double>(k) / 2.0) * (t - t * t) * log_abs(p);
}

HeightEstimate local_height_psi_limit(const DivisionSequence& seq, const Place& v) {
  if (const auto zero = seq.first_zero())
    throw DomainError("W_" + std::to_string(*zero) + "(Q) = 0: torsion point");
  HeightEstimate out;
  for (std::size_t n = 1; n <= seq.max_index(); ++n) {
    const double nn = static_cast<double>(n);
    out.trace.push_back(seq.log_abs_w(n, v) / (nn * nn));
  }
  out.estimate = out.trace.back();
  return out;
}

HeightEstimate local_height_psi_limit(const WeierstrassCurve& curve, const CurvePoint& q,
                                      const Place& v, std::size_t n) {
  if (n < 1) throw DomainError("psi-limit index must be >= 1");
  return local_height_psi_limit(division_poly_values(curve, q, n), v);
}

HeightEstimate archimedean_duplication_series(const WeierstrassCurve& curve, const CurvePoint& q,
                                              std::size_t depth) {
  if (q.is_identity()) throw DomainError("local height undefined at the identity");
  const DoublingIterates it = double_iterates(curve, q, depth);
  const Place inf = Place::infinity();
  HeightEstimate out;
  double partial = 0.0, weight = 1.0;
  CurvePoint current = q;
  for (std::size_t k = 0;; ++k) {
    out.trace.push_back(partial + weight * 0.5 * log_plus(current.x(), inf));
    if (k == depth) break;
    weight *= 0.25;
    const ExactRational w2 = 2 * current.y() + curve.c1() * current.x() + curve.c3();
    partial += weight * log_abs(w2, inf);
    current = it.points[k];
  }
  out.estimate = out.trace.back();
  return out;
}

std::vector<Integer> singular_primes(const WeierstrassCurve& curve, const CurvePoint& q) {
  std::vector<Integer> out;
  for (const Integer& p : bad_primes(curve))
    if (reduction_analysis(curve, q, p).point == PointReduction::singular) out.push_back(p);
  return out;
}

std::vector<Integer> height_support(const WeierstrassCurve& curve, const CurvePoint& q) {
  if (q.is_identity()) throw DomainError("local height undefined at the identity");
  std::set<Integer> primes;
  const Integer den = q.x().get_den();
  if (den != 1)
    for (const auto& [p, e] : factorize(den)) primes.insert(p);
  for (const Integer& p : singular_primes(curve, q)) primes.insert(p);
  return {primes.begin(), primes.end()};
}

double archimedean_by_subtraction(const WeierstrassCurve& curve, const CurvePoint& q,
                                  std::size_t depth, const std::map<Integer, double>& supplied) {
  const HeightEstimate hhat = canonical_height(curve, q, depth);
  if (hhat.torsion) throw DomainError("torsion point: local heights are not finite");
  double finite = 0.0;
  std::string blocking;
  for (const Integer& p : height_support(curve, q)) {
    if (reduction_analysis(curve, q, p).point == PointReduction::nonsingular) {
      finite += local_height_nonsingular(curve, q, p).value;
    } else if (auto it = supplied.find(p); it != supplied.end()) {
      finite += it->second;
    } else {
      blocking += (blocking.empty() ? "" : ",") + p.get_str();
    }
  }
  if (!blocking.empty())
    throw DomainError("singular reduction without a supplied local height at p = " + blocking);
  return hhat.estimate - finite;
}

GlobalHeightReport height_decomposition(const WeierstrassCurve& curve, const CurvePoint& q,
                                        const DecompositionOptions& options) {
  GlobalHeightReport report;
  report.depth = options.depth;
  report.psi_n = options.psi_n;
  const HeightEstimate hhat = canonical_height(curve, q, options.depth);
  if (hhat.torsion) {
    report.torsion = true;
    report.notes.push_back("torsion point: every height is zero");
    return report;
  }
  report.hhat = hhat.estimate;
  report.hhat_trace = hhat.trace;

  const DivisionSequence seq = division_poly_values(curve, q, std::max<std::size_t>(options.psi_n, 2));

  std::set<Integer> primes;
  for (const Integer& p : bad_primes(curve)) primes.insert(p);
  for (const Integer& p : height_support(curve, q)) primes.insert(p);

  double finite = 0.0;
  for (const Integer& p : primes) {
    ReductionInfo info = reduction_analysis(curve, q, p);
    if (info.model_sensitive)
      report.notes.push_back("additive reduction at " + p.get_str() + " depends on the model");
    if (info.point == PointReduction::nonsingular) {
      report.locals.push_back(local_height_nonsingular(curve, q, p));
    } else {
      LocalHeightReport r{Place::finite(p)};
      if (auto it = options.supplied.find(p); it != options.supplied.end()) {
        r.method = HeightMethod::tate_formula;
        r.value = it->second;
      } else {
        HeightEstimate est = local_height_psi_limit(seq, r.place);
        r.method = HeightMethod::psi_limit;
        r.value = est.estimate;
        r.trace = std::move(est.trace);
        if (info.curve == CurveReduction::additive)
          report.notes.push_back("singular reduction at " + p.get_str() +
                                 " is additive; only the psi-limit applies");
      }
      r.sign = height_sign(r.value);
      r.reduction = std::move(info);
      report.locals.push_back(std::move(r));
    }
    finite += report.locals.back().value;
  }

  const Place inf = Place::infinity();
  HeightEstimate dup = archimedean_duplication_series(curve, q, options.depth);
  report.archimedean.duplication_series = dup.estimate;
  report.archimedean.psi_limit = local_height_psi_limit(seq, inf).estimate;
  report.archimedean.subtraction = report.hhat - finite;
  report.archimedean.gap = report.archimedean.psi_limit - report.archimedean.subtraction;

  LocalHeightReport arch{inf};
  arch.method = HeightMethod::duplication_series;
  arch.value = dup.estimate;
  arch.sign = height_sign(arch.value);
  arch.trace = std::move(dup.trace);
  report.locals.push_back(std::move(arch));

  report.local_sum = finite + report.archimedean.duplication_series;
  report.residual = report.hhat - report.local_sum;
  return report;
}

}  // namespace adelent
