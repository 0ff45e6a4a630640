// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adelent/adelic.hpp"
#include "adelent/elliptic.hpp"
#include "adelent/heights.hpp"
#include "adelent/julia.hpp"
#include "adelent/morphic.hpp"
#include "adelent/places.hpp"
#include "adelent/solenoid.hpp"

using namespace adelent;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "failed: " << what;
    }
  }
  void note(const std::string& text) { detail << (detail.tellp() > 0 ? "; " : "") << text; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

WeierstrassCurve curve_37a() { return WeierstrassCurve(0, 0, 1, -1, 0); }
WeierstrassCurve curve_minus() { return WeierstrassCurve(0, 0, -1, -1, 0); }
WeierstrassCurve curve_split5() { return WeierstrassCurve(0, 1, -5, 0, 0); }
CurvePoint origin(const WeierstrassCurve& e) { return CurvePoint::affine(e, 0, 0); }

Integer x_denominator_root(const CurvePoint& p) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), p.x().get_den_mpz_t());
  return r;
}

void jensen_baseline(Outcome& out) {
  std::mt19937_64 rng(1101);
  std::uniform_int_distribution<long> dist(-500, 500);
  std::vector<std::pair<Integer, Integer>> pairs{{3, 2}};
  while (pairs.size() < 21) {
    const long a = dist(rng), b = dist(rng);
    if (a == 0 || b == 0 || std::abs(a) == std::abs(b) || std::gcd(a, b) != 1) continue;
    pairs.emplace_back(a, b);
  }
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    const auto h = projective_height(a, b);
    const double exact = std::log(std::max(Integer(abs(a)), Integer(abs(b))).get_d());
    worst = std::max(worst, std::abs(jensen_quadrature(a, b, 1 << 16) - exact));
    // log+|a/b|_p summed over p is log|b|; recompute it from the factorization.
    double finite = 0.0;
    for (const auto& [p, k] : factorize(abs(b)))
      if (p > 1) finite += k * std::log(p.get_d());
    out.require(std::abs(h.finite - finite) <= 1e-12 * std::max(1.0, finite), "finite place sum");
    out.require(std::abs(h.archimedean + h.finite - h.height) <= 1e-12 * std::max(1.0, h.height),
                "place sum identity");
  }
  out.require(worst < 1e-6, "Jensen error " + fmt(worst));
  out.note("21 pairs, max Jensen error " + fmt(worst));
}

void eds_values(Outcome& out) {
  const auto e = curve_minus();
  const auto seq = division_poly_values(e, origin(e), 5);
  std::vector<Integer> w;
  std::string shown;
  for (std::size_t n = 1; n <= 5; ++n) {
    w.push_back(abs(seq.h(n)));
    shown += (n > 1 ? "," : "") + w.back().get_str();
  }
  const std::vector<Integer> expected{1, 1, 1, 1, 5};
  out.require(w == expected, "|W_1..5| = " + shown + ", expected 1,1,1,1,5");
  const auto c = mobius_congruence(w, 5);
  out.require(c.residue == 4, "congruence residue at n = 5 is " + c.residue.get_str() + ", expected 4");
  out.note("|W_1..5| = " + shown + ", residue " + c.residue.get_str());
}

void exact_structure(Outcome& out) {
  const std::vector<std::pair<WeierstrassCurve, CurvePoint>> cases{
      {curve_37a(), origin(curve_37a())},
      {WeierstrassCurve::short_form(0, -2), CurvePoint::affine(WeierstrassCurve::short_form(0, -2), 3, 5)},
      {WeierstrassCurve::short_form(-4, 4), CurvePoint::affine(WeierstrassCurve::short_form(-4, 4), 0, 2)}};
  for (const auto& [e, p] : cases) {
    std::vector<Integer> b(9);
    for (long n = 1; n <= 8; ++n) b[n] = x_denominator_root(multiply(p, n, e));
    for (long m = 1; m <= 8; ++m)
      for (long n = 1; n <= 8; ++n)
        out.require(gcd(b[m], b[n]) == b[std::gcd(m, n)], "strong divisibility");
    const auto s = eds_sequences(e, p, 12);
    out.require(s.square_ok && s.divisibility_ok, "q_n squares and divisibility flags");
    for (std::size_t n = 1; n <= 12; ++n) {
      out.require(mpz_perfect_square_p(s.q[n - 1].get_mpz_t()) != 0, "q_n square");
      for (std::size_t m = 1; m <= n; ++m)
        if (n % m == 0) out.require(s.q[m - 1] == 0 ? s.q[n - 1] == 0 : s.q[n - 1] % s.q[m - 1] == 0,
                                    "q_m | q_n");
    }
  }
  out.note("3 curves");
}

void height_agreement(Outcome& out) {
  const auto e = curve_37a();
  const auto q = origin(e);
  const auto g = height_decomposition(e, q);
  const double h = canonical_height(e, q, 10).estimate;
  const double h2 = canonical_height(e, add(q, q, e), 10).estimate;
  out.require(std::abs(h - g.local_sum) < 1e-4, "hhat vs local sum " + fmt(h - g.local_sum));
  out.require(std::abs(h2 - 4 * h) < 1e-4, "hhat(2Q) - 4 hhat(Q) = " + fmt(h2 - 4 * h));
  out.note("hhat " + fmt(h) + ", local sum " + fmt(g.local_sum) + ", hhat(2Q)/hhat " + fmt(h2 / h));
}

void psi_limit(Outcome& out) {
  const auto e = curve_37a();
  const auto p8 = multiply(origin(e), 8, e);
  const auto singular = singular_primes(e, p8);
  std::size_t checked = 0;
  for (const Integer& p : height_support(e, p8)) {
    if (std::find(singular.begin(), singular.end(), p) != singular.end()) continue;
    const auto closed = local_height_nonsingular(e, p8, p);
    const double psi = local_height_psi_limit(e, p8, Place::finite(p), 200).estimate;
    const double bound = 3.0 / 200 * std::log(p.get_d());
    out.require(std::abs(psi - closed.value) < bound, "psi limit at " + p.get_str() + " off by " +
                                                         fmt(psi - closed.value));
    ++checked;
  }
  out.require(checked > 0, "no nonsingular relevant place");
  out.note("8Q, " + std::to_string(checked) + " places");
}

void example_entropies(Outcome& out) {
  const auto run = [](const char* name, std::size_t n) {
    return entropy_trace(builtin_action(name, std::nullopt, PlaceFilter::all()), n).estimate;
  };
  const double prim = run("primorial", 10000), fact = run("factorial", 10000),
               ident = run("identity-index", 1000000);
  out.require(std::abs(prim - 1) < 0.05, "primorial " + fmt(prim));
  out.require(std::abs(fact - 1) < 0.05, "factorial " + fmt(fact));
  out.require(std::abs(ident - 1) < 0.05, "identity-index " + fmt(ident));
  // Archimedean place: the quotient is exactly 0 at every N. Finite place p:
  // the local volume is exactly -log p from the index of p on, so the
  // contribution log p / r(N) vanishes.
  const auto arch =
      entropy_trace(builtin_action("inverse-primorial", std::nullopt, PlaceFilter::single(Place::infinity())), 10000);
  bool zero = arch.estimate == 0.0;
  for (double v : arch.quotient) zero = zero && v == 0.0;
  out.require(zero, "inverse-primorial at inf nonzero");
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 101ul, 997ul}) {
    const auto t = entropy_trace(
        builtin_action("inverse-primorial", std::nullopt, PlaceFilter::single(Place::finite(p))), 10000);
    std::size_t index = 0;
    for (unsigned long m = 2; m <= p; ++m) index += is_prime(Integer(m)) ? 1 : 0;
    bool bounded = t.places.size() == 1 && t.places[0].exponent == 1;
    for (std::size_t i = 0; bounded && i < t.n.size(); ++i)
      bounded = t.places[0].log_volume[i] == (t.n[i] >= index ? -t.places[0].place.log_p() : 0.0);
    out.require(bounded, "inverse-primorial volume at " + std::to_string(p) + " not constant");
  }
  out.note("primorial " + fmt(prim) + ", factorial " + fmt(fact) + ", identity-index " + fmt(ident));
}

void duplication_entropy(Outcome& out) {
  const auto e = curve_37a();
  const auto q = origin(e);
  const double h = canonical_height(e, q, 10).estimate;
  const auto real = elliptic_real_entropy(e, q, 10);
  const auto adelic = elliptic_adelic_entropy(e, q, 10);
  out.require(std::abs(real.estimate - h) < 0.05 * h, "real-line " + fmt(real.estimate));
  out.require(std::abs(adelic.estimate - 2 * h) < 0.05 * 2 * h, "adelic " + fmt(adelic.estimate));
  const auto it = double_iterates(e, q, 10);
  bool exact = adelic.checks.at("finite_volume_equals_minus_2_log_bN");
  for (std::size_t i = 0; i < adelic.finite_log_volume.size() && i < it.b.size(); ++i)
    exact = exact && std::abs(adelic.finite_log_volume[i] + 2 * log_abs(it.b[i])) <=
                         1e-12 * std::max(1.0, 2 * log_abs(it.b[i]));
  out.require(exact, "finite volume differs from -2 log b_N");
  out.note("real " + fmt(real.estimate / h) + " hhat, adelic " + fmt(adelic.estimate / (2 * h)) + " 2hhat");
}

void eds_decomposition(Outcome& out) {
  const auto e = curve_37a();
  const auto q = origin(e);
  out.require(singular_primes(e, q).empty(), "point not everywhere nonsingular");
  const double h = canonical_height(e, q, 10).estimate;
  const double all = eds_entropy(e, q, 8, EdsPart::all).estimate;
  out.require(std::abs(all - h) < 0.05 * h, "all-places " + fmt(all));

  const auto s5 = curve_split5();
  const auto q5 = origin(s5);
  out.require(!singular_primes(s5, q5).empty(), "S empty");
  const double a = eds_entropy(s5, q5, 8, EdsPart::all).estimate;
  const double s = eds_entropy(s5, q5, 8, EdsPart::singular).estimate;
  const double c = eds_entropy(s5, q5, 8, EdsPart::quotient).estimate;
  out.require(std::abs(a - s - c) < 0.1 * std::abs(c), "decomposition " + fmt(a) + " vs " + fmt(s + c));
  out.note("all/hhat " + fmt(all / h) + "; split5 all " + fmt(a) + ", S " + fmt(s) + ", rest " + fmt(c));
}

void flip_entropy(Outcome& out) {
  const auto e = curve_37a();
  const auto q = origin(e);
  const auto p8 = multiply(q, 8, e);
  const auto at5 = local_flip_entropy(e, p8, Place::finite(5), 200);
  const double target5 = 0.5 * log_abs(p8.x(), Place::finite(5));
  out.require(target5 > 0, "|x|_5 <= 1");
  out.require(std::abs(at5.estimate - target5) < 0.02 * target5, "finite flip " + fmt(at5.estimate));
  const double lambda = archimedean_duplication_series(e, q, 10).estimate;
  const auto arch = local_flip_entropy(e, q, Place::infinity(), 400);
  out.require(std::abs(arch.estimate - std::abs(lambda)) < 0.02, "archimedean flip " + fmt(arch.estimate));
  out.note("p = 5: " + fmt(at5.estimate) + " vs " + fmt(target5) + "; inf: " + fmt(arch.estimate) + " vs " +
           fmt(lambda));
}

void morphic_identities(Outcome& out) {
  const auto f = PolyMap::parse("1,0,0");
  for (const char* text : {"2", "3", "1/2", "2/3"}) {
    const ExactRational q = parse_rational(text);
    // Sum over places of log+|q|_v, i.e. log max(|num|, |den|).
    const double expected = std::log(std::max(Integer(abs(q.get_num())), Integer(q.get_den())).get_d());
    const auto h = morphic_global_height(f, q, 10);
    const auto t = morphic_entropy(f, q, 10, PlaceFilter::all());
    out.require(std::abs(h.global - expected) < 1e-12, std::string("height at ") + text);
    out.require(std::abs(t.estimate - expected) < 1e-12, std::string("entropy at ") + text);
    const auto shifted = morphic_global_height(f, f(q), 9);
    out.require(std::abs(shifted.global - 2 * h.global) < 1e-6, std::string("homogeneity at ") + text);
  }
  const auto pre = morphic_global_height(PolyMap::parse("1,0,-1"), 0, 10);
  out.require(pre.preperiodic && pre.global == 0.0, "pre-periodic height");
  out.note("4 base points");
}

void julia_heights(Outcome& out) {
  const auto check = [&](const char* poly, double target) {
    const auto h = julia_local_height(ComplexPoly::parse(poly), 2.0, 12);
    out.require(std::abs(h.root_sum - target) < 1e-2, std::string(poly) + " root sum " + fmt(h.root_sum));
    out.require(h.direct && std::abs(*h.direct - target) < 1e-2, std::string(poly) + " direct");
    out.note(std::string(poly) + ": " + fmt(h.root_sum) + " / " + fmt(h.direct ? *h.direct : NAN));
  };
  check("1,0,0", std::log(2.0));
  check("2,0,-1", std::log(2.0 + std::sqrt(3.0)));
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> re(-3, 3), im(0.05, 3);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex z(re(rng), (i % 2 ? 1 : -1) * im(rng));
    worst = std::max(worst, std::abs(chebyshev_closed_form(z) - arcsine_integral(z, 4096) - std::log(2.0)));
  }
  out.require(worst < 1e-6, "closed form minus integral off log 2 by " + fmt(worst));
}

void cross_module(Outcome& out) {
  const auto e = WeierstrassCurve::short_form(-4, 4);
  const auto p = CurvePoint::affine(e, 0, 2);
  const auto f = duplication_morphism(-4, 4);
  CurvePoint acc = p;
  ExactRational z = p.x();
  for (int n = 1; n <= 4; ++n) {
    acc = add(acc, acc, e);
    const auto next = f(z);
    out.require(next.has_value() && *next == acc.x(), "iterate " + std::to_string(n));
    if (!next) return;
    z = *next;
  }
  const double hf = rational_map_height(f, p.x(), 6).estimate;
  const double hhat = canonical_height(e, p, 10).estimate;
  out.require(std::abs(hf - 2 * hhat) < 1e-3, "hhat_f - 2 hhat = " + fmt(hf - 2 * hhat));
  out.note("hhat_f " + fmt(hf) + ", 2 hhat " + fmt(2 * hhat));
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Jensen and projective baseline", 5, jensen_baseline},
      {2, "EDS values and congruence", 5, eds_values},
      {3, "exact structure suite", 30, exact_structure},
      {4, "height two-way agreement", 60, height_agreement},
      {5, "psi limit vs closed form", 60, psi_limit},
      {6, "example entropies", 30, example_entropies},
      {7, "duplication entropies", 120, duplication_entropy},
      {8, "EDS entropy decomposition", 120, eds_decomposition},
      {9, "sign-flipped local entropies", 120, flip_entropy},
      {10, "morphic heights and entropy", 5, morphic_identities},
      {11, "Julia-set heights", 60, julia_heights},
      {12, "duplication morphism", 60, cross_module},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& ex) {
      out.ok = false;
      out.note(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) out.require(false, "runtime over " + fmt(c.limit_seconds) + " s");
    if (!out.ok) ++failures;
    std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, out.ok ? "PASS" : "FAIL", c.name,
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
