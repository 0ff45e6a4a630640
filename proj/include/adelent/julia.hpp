// Archimedean heights of complex polynomials from periodic points.
//
// For f(z) = a z^d + ... and its Julia set J with equilibrium measure m,
//
//   lambda_inf(q) = log|a| / (d-1) + integral over J of log|x - q| dm(x),
//
// and the periodic points of period n, weighted 1/d^n, equidistribute to m.
// Roots of f^n(x) - x are found by an Aberth iteration that evaluates f^n and
// its derivative by iteration, so no expanded coefficients are needed.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adelent/morphic.hpp"

namespace adelent {

using Complex = std::complex<double>;

class ComplexPoly {
 public:
  // Coefficients low to high; degree >= 2, finite, nonzero leading term.
  explicit ComplexPoly(std::vector<Complex> coefficients);
  static ComplexPoly from_rational(const PolyMap& f);
  // "c_d,...,c_0"; each entry a rational "p/q", a decimal, or complex "x+yi".
  static ComplexPoly parse(std::string_view text);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const Complex& leading() const { return coeffs_.back(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;
  // Every root of f^n lies in |z| <= escape_radius and every orbit leaving it
  // diverges.
  double escape_radius() const;
  std::string to_string() const;

 private:
  std::vector<Complex> coeffs_;
};

// Parses one complex number: "x", "x+yi", "x-yi", "yi", "i", "p/q".
Complex parse_complex(std::string_view text);

// Coefficients of the n-fold composition. Throws DomainError when d^n > 2^14
// or a coefficient overflows.
ComplexPoly compose_self(const ComplexPoly& f, std::size_t n);

struct PeriodicPointSet {
  std::size_t level = 0;
  std::vector<Complex> roots;
  // Newton correction |p(x)/p'(x)| / max(1, |x|) at each root, p = f^n - id.
  std::vector<double> residuals;
  double max_residual = 0.0;
  std::size_t sweeps = 0;
};

struct RootOptions {
  double tol = 1e-8;
  std::size_t max_sweeps = 500;
};

// All d^n roots of f^n(x) - x, seeded deterministically at the n-fold
// preimages of a repelling fixed point. Throws ComputationError when some
// residual is not below tol after max_sweeps.
PeriodicPointSet periodic_points(const ComplexPoly& f, std::size_t n, const RootOptions& options = {});

struct JuliaHeight {
  std::size_t level = 0;
  // (1/d^n) sum log|x_i - q| + (1/d^n) log|B_n|.
  double root_sum = 0.0;
  // (1/d^n) log|f^n(q) - q|; absent when f^n(q) = q exactly.
  std::optional<double> direct;
  // (1/d^n) log+|f^n(q)|.
  double escape_rate = 0.0;
  // (1/d^n) log|B_n| = ((d^n - 1)/(d - 1)) log|a| / d^n.
  double leading_term = 0.0;
  // Some periodic point lies within tol of q and its term was left out.
  bool principal_value = false;
  std::size_t excluded = 0;
  double max_residual = 0.0;
  // direct estimates at levels 1..n.
  std::vector<double> trace;
};

// Throws DomainError when d^n > 2^14.
JuliaHeight julia_local_height(const ComplexPoly& f, Complex q, std::size_t n,
                               const RootOptions& options = {});

// (1/d^n) log|f^n(q) - q| by iteration, switching to logarithms once the
// orbit is large. Empty when f^n(q) = q.
std::optional<double> julia_direct_estimate(const ComplexPoly& f, Complex q, std::size_t n);

// Whether f is the degree-d Chebyshev polynomial T_d (up to 1e-12).
bool is_chebyshev(const ComplexPoly& f);

// log+|q + sqrt(q^2 - 1)| on the branch with modulus >= 1.
double chebyshev_closed_form(Complex q);

// Integral of log|t - q| against the arcsine measure on [-1, 1], by the
// trapezoid rule in theta with t = cos theta and K panels. Throws
// DomainError for q on the segment.
double arcsine_integral(Complex q, std::size_t panels);

}  // namespace adelent
