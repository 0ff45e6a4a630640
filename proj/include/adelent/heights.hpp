// Local and global canonical heights on E(Q).
//
// Local heights use the normalization in which lambda_v(Q) - (1/2) log|x(Q)|_v
// stays bounded as Q approaches the identity, with no discriminant term, so
// that the global height is the plain sum over places:
//
//   hhat(Q) = sum over v <= inf of lambda_v(Q).
//
// In this normalization lambda_v(mQ) = m^2 lambda_v(Q) - log|W_m(Q)|_v at
// every place, which gives both the psi-limit estimator (m -> inf) and the
// duplication series for the archimedean height (m = 2, iterated).
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelent/elliptic.hpp"
#include "adelent/places.hpp"

namespace adelent {

enum class HeightMethod { closed_form, psi_limit, tate_formula, subtraction, duplication_series };

std::string to_string(HeightMethod m);

// A limit estimate together with the sequence it was read from.
struct HeightEstimate {
  double estimate = 0.0;
  std::vector<double> trace;
  bool torsion = false;
};

struct LocalHeightReport {
  explicit LocalHeightReport(Place v) : place(std::move(v)) {}

  Place place;
  double value = 0.0;
  HeightMethod method = HeightMethod::closed_form;
  std::optional<ReductionInfo> reduction;
  // +1 iff value >= 0.
  int sign = 1;
  // Closed form only: value = log_p_multiple * log p, exactly.
  std::optional<ExactRational> log_p_multiple;
  std::vector<double> trace;
};

struct ArchimedeanEstimates {
  double duplication_series = 0.0;
  double psi_limit = 0.0;
  double subtraction = 0.0;
  // psi_limit - subtraction
  double gap = 0.0;
};

struct GlobalHeightReport {
  double hhat = 0.0;
  std::vector<double> hhat_trace;
  bool torsion = false;
  // Finite places ascending, then the archimedean place.
  std::vector<LocalHeightReport> locals;
  double local_sum = 0.0;
  // hhat - local_sum, with lambda_inf taken from the duplication series.
  double residual = 0.0;
  ArchimedeanEstimates archimedean;
  std::size_t depth = 0;
  std::size_t psi_n = 0;
  std::vector<std::string> notes;
};

int height_sign(double value);

// (1/2) log max(|a|, |b|) for x(Q) = a/b; zero at the identity.
double naive_height(const CurvePoint& q);

// 4^-n h_E(2^n Q) for n = 0..depth; the estimate is the last term. Torsion
// points give exactly 0 with the torsion flag set. depth <= 12.
HeightEstimate canonical_height(const WeierstrassCurve& curve, const CurvePoint& q,
                                std::size_t depth);

// (1/2) log+|x(Q)|_p, valid where Q has nonsingular reduction at p. Throws
// DomainError at singular reduction.
LocalHeightReport local_height_nonsingular(const WeierstrassCurve& curve, const CurvePoint& q,
                                           const Integer& p);

// Local height on a split multiplicative Tate curve for a point whose
// parameter u has |u|_p = p^-r inside the fundamental domain p^-k < |u|_p <= 1.
// For r = 0 the value is -log|1-u|_p, passed in as unit_dist = |1-u|_p.
double tate_local_height(const Integer& p, unsigned long k, unsigned long r,
                         std::optional<double> unit_dist);

// log|W_n(Q)|_v / n^2 for n = 1..N, converging to lambda_v(Q). Throws
// DomainError if some W_n(Q) vanishes.
HeightEstimate local_height_psi_limit(const DivisionSequence& seq, const Place& v);
HeightEstimate local_height_psi_limit(const WeierstrassCurve& curve, const CurvePoint& q,
                                      const Place& v, std::size_t n);

// lambda_inf(Q) = sum_{k<n} 4^-(k+1) log|W_2(2^k Q)| + 4^-n lambda_inf(2^n Q),
// with the tail replaced by (1/2) log+|x(2^n Q)|. The error is O(4^-n).
HeightEstimate archimedean_duplication_series(const WeierstrassCurve& curve, const CurvePoint& q,
                                              std::size_t depth);

// hhat(Q) at the given depth minus the finite local heights. Singular primes
// need a value in `supplied`; otherwise DomainError lists the blocking primes.
double archimedean_by_subtraction(const WeierstrassCurve& curve, const CurvePoint& q,
                                  std::size_t depth,
                                  const std::map<Integer, double>& supplied = {});

// Finite primes where lambda_p(Q) can be nonzero: primes of the x-denominator
// and primes of singular reduction, ascending.
std::vector<Integer> height_support(const WeierstrassCurve& curve, const CurvePoint& q);

// Primes where Q has singular reduction.
std::vector<Integer> singular_primes(const WeierstrassCurve& curve, const CurvePoint& q);

struct DecompositionOptions {
  std::size_t depth = 10;
  std::size_t psi_n = 200;
  // Local heights supplied at singular primes (for example from
  // tate_local_height); other singular primes use the psi-limit.
  std::map<Integer, double> supplied;
};

GlobalHeightReport height_decomposition(const WeierstrassCurve& curve, const CurvePoint& q,
                                        const DecompositionOptions& options = {});

}  // namespace adelent
