#include "adelent/julia.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adelent/errors.hpp"

namespace adelent {

namespace {

constexpr std::size_t kMaxRoots = std::size_t{1} << 14;

std::size_t checked_power(std::size_t d, std::size_t n) {
  std::size_t m = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (m > kMaxRoots / d) throw DomainError("d^n exceeds the 2^14 work guard");
    m *= d;
  }
  return m;
}

double parse_real(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  if (text.find('/') != text.npos) return parse_rational(text).get_d();
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + s + "'");
  }
  if (used != s.size()) throw ParseError("cannot parse number '" + s + "'");
  return value;
}

// Iterates of f with the running derivative. Once |w| exceeds the threshold
// the lower terms are negligible and only w/D matters, which shrinks by a
// factor d per step; the derivative is kept as mantissa times e^scale.
struct NewtonQuotient {
  const ComplexPoly& f;
  std::size_t n;
  double threshold;

  // p(z)/p'(z) for p = f^n - id.
  Complex operator()(Complex z) const {
    const double d = static_cast<double>(f.degree());
    Complex w = z, dw = 1.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(w) > threshold) {
        Complex ratio = w / dw;
        for (std::size_t r = k; r < n; ++r) ratio /= d;
        return ratio * std::exp(-scale);
      }
      dw *= f.derivative(w);
      w = f(w);
      const double mag = std::abs(dw);
      if (mag > 1e100) {
        dw /= mag;
        scale += std::log(mag);
      }
    }
    if (!std::isfinite(std::abs(w)) || !std::isfinite(std::abs(dw)))
      throw ComputationError("overflow while iterating the polynomial");
    if (scale > 0.0) return (w - z) / dw * std::exp(-scale);
    return (w - z) / (dw - 1.0);
  }
};

double large_threshold(const ComplexPoly& f) {
  double lower = 0.0;
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) lower += std::abs(c[i]);
  const double ratio = std::max(1.0, lower / std::abs(f.leading()));
  double t = 1e16 * ratio;
  // Keep |a| t^d representable.
  const double cap = (290.0 - std::log10(std::max(1.0, std::abs(f.leading())))) /
                     static_cast<double>(f.degree());
  return std::min(t, std::pow(10.0, std::max(cap, 4.0)));
}

// Simultaneous Aberth iteration; a root is frozen once its Newton correction
// is below `stop` relative to max(1, |z|). Returns the number of sweeps used.
template <class Quotient>
std::size_t aberth(std::vector<Complex>& z, const Quotient& quotient, double stop,
                   std::size_t max_sweeps) {
  const std::size_t m = z.size();
  std::vector<char> done(m, 0);
  std::size_t active = m, sweeps = 0;
  while (sweeps < max_sweeps && active > 0) {
    ++sweeps;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const Complex ratio = quotient(z[i]);
      double sr = 0.0, si = 0.0;
      const double xr = z[i].real(), xi = z[i].imag();
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double dr = xr - z[j].real(), di = xi - z[j].imag();
        const double inv = 1.0 / (dr * dr + di * di);
        sr += dr * inv;
        si -= di * inv;
      }
      const Complex step = ratio / (1.0 - ratio * Complex(sr, si));
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[i] -= step;
      if (std::abs(ratio) <= stop * std::max(1.0, std::abs(z[i]))) {
        done[i] = 1;
        --active;
      }
    }
  }
  return sweeps;
}

// Roots of f(x) = y.
std::vector<Complex> preimages(const ComplexPoly& f, Complex y) {
  const std::size_t d = f.degree();
  const double radius = f.escape_radius() + std::sqrt(std::abs(y) / std::abs(f.leading()));
  std::vector<Complex> z(d);
  for (std::size_t k = 0; k < d; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.3) /
                                  static_cast<double>(d) + 0.4);
  aberth(z, [&](Complex x) { return (f(x) - y) / f.derivative(x); }, 1e-15, 200);
  return z;
}

// n-fold preimages of a repelling fixed point. They lie on the Julia set,
// next to the period-n points, and start Aberth far closer than a circle.
// A small deterministic jitter separates seeds that coincide at critical
// points.
std::vector<Complex> preimage_seeds(const ComplexPoly& f, std::size_t n) {
  std::vector<Complex> shifted = f.coefficients();
  shifted[1] -= 1.0;
  const std::vector<Complex> fixed = preimages(ComplexPoly(std::move(shifted)), 0.0);
  Complex base = fixed.front();
  for (const Complex& x : fixed)
    if (std::abs(f.derivative(x)) > std::abs(f.derivative(base))) base = x;
  std::vector<Complex> layer{base};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> next;
    next.reserve(layer.size() * f.degree());
    for (const Complex& y : layer)
      for (const Complex& x : preimages(f, y)) next.push_back(x);
    layer = std::move(next);
  }
  const double scale = 1e-10 * f.escape_radius();
  for (std::size_t k = 0; k < layer.size(); ++k)
    layer[k] += std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                      static_cast<double>(layer.size()) + 0.7);
  return layer;
}

}  // namespace

ComplexPoly::ComplexPoly(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() < 3) throw ParseError("polynomial must have degree >= 2");
  for (const Complex& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ParseError("polynomial coefficients must be finite");
  if (coeffs_.back() == Complex(0.0)) throw ParseError("leading coefficient must be nonzero");
}

ComplexPoly ComplexPoly::from_rational(const PolyMap& f) {
  std::vector<Complex> c;
  for (const ExactRational& q : f.coefficients()) c.emplace_back(q.get_d(), 0.0);
  return ComplexPoly(std::move(c));
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw ParseError("empty complex number");
  if (s.back() != 'i') return parse_real(s);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

ComplexPoly ComplexPoly::parse(std::string_view text) {
  std::vector<Complex> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    coeffs.push_back(parse_complex(text.substr(start, comma == text.npos ? text.npos : comma - start)));
    if (comma == text.npos) break;
    start = comma + 1;
  }
  std::reverse(coeffs.begin(), coeffs.end());
  return ComplexPoly(std::move(coeffs));
}

Complex ComplexPoly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex ComplexPoly::derivative(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t i = coeffs_.size() - 1; i >= 1; --i)
    acc = acc * z + static_cast<double>(i) * coeffs_[i];
  return acc;
}

double ComplexPoly::escape_radius() const {
  double lower = 1.0;
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) lower += std::abs(coeffs_[i]);
  return std::max(1.0, lower / std::abs(leading()));
}

std::string ComplexPoly::to_string() const {
  std::string out;
  char buf[64];
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (it->imag() == 0.0)
      std::snprintf(buf, sizeof buf, "%.17g", it->real());
    else
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", it->real(), it->imag());
    out += (out.empty() ? "" : ",") + std::string(buf);
  }
  return out;
}

ComplexPoly compose_self(const ComplexPoly& f, std::size_t n) {
  if (n < 1) throw DomainError("composition level must be >= 1");
  checked_power(f.degree(), n);
  std::vector<Complex> g = f.coefficients();
  const auto& c = f.coefficients();
  for (std::size_t level = 1; level < n; ++level) {
    std::vector<Complex> acc{c.back()};
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      std::vector<Complex> next(acc.size() + g.size() - 1, 0.0);
      for (std::size_t a = 0; a < acc.size(); ++a) {
        if (acc[a] == Complex(0.0)) continue;
        for (std::size_t b = 0; b < g.size(); ++b) next[a + b] += acc[a] * g[b];
      }
      next[0] += c[i];
      acc = std::move(next);
    }
    g = std::move(acc);
  }
  for (const Complex& v : g)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("coefficient overflow in composition (norm guard)");
  return ComplexPoly(std::move(g));
}

PeriodicPointSet periodic_points(const ComplexPoly& f, std::size_t n, const RootOptions& options) {
  if (n < 1) throw DomainError("period must be >= 1");
  const std::size_t m = checked_power(f.degree(), n);
  const NewtonQuotient newton{f, n, large_threshold(f)};
  const double stop = std::max(options.tol * 1e-3, 1e-14);

  PeriodicPointSet out;
  out.level = n;
  out.roots = preimage_seeds(f, n);
  out.sweeps = aberth(out.roots, newton, stop, options.max_sweeps);
  out.residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.residuals[i] = std::abs(newton(out.roots[i])) / std::max(1.0, std::abs(out.roots[i]));
    if (!std::isfinite(out.residuals[i])) out.residuals[i] = INFINITY;
    out.max_residual = std::max(out.max_residual, out.residuals[i]);
  }
  if (!(out.max_residual < options.tol))
    throw ComputationError("periodic points did not converge: worst residual " +
                           std::to_string(out.max_residual));
  return out;
}

std::optional<double> julia_direct_estimate(const ComplexPoly& f, Complex q, std::size_t n) {
  const double d = static_cast<double>(f.degree());
  const double threshold = large_threshold(f);
  const double log_a = std::log(std::abs(f.leading()));
  Complex w = q;
  double dn = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    dn *= d;
    if (std::abs(w) > threshold) {
      double log_w = std::log(std::abs(w));
      for (std::size_t r = k; r < n; ++r) log_w = log_a + d * log_w;
      for (std::size_t r = k + 1; r < n; ++r) dn *= d;
      return log_w / dn;
    }
    w = f(w);
  }
  if (w == q) return std::nullopt;
  return std::log(std::abs(w - q)) / dn;
}

JuliaHeight julia_local_height(const ComplexPoly& f, Complex q, std::size_t n,
                               const RootOptions& options) {
  const std::size_t m = checked_power(f.degree(), n);
  const double d = static_cast<double>(f.degree());
  JuliaHeight out;
  out.level = n;

  const PeriodicPointSet roots = periodic_points(f, n, options);
  out.max_residual = roots.max_residual;
  const double dm = static_cast<double>(m);
  out.leading_term = ((dm - 1.0) / (d - 1.0)) * std::log(std::abs(f.leading())) / dm;
  double sum = 0.0;
  const double near = options.tol * std::max(1.0, std::abs(q));
  for (const Complex& x : roots.roots) {
    const double dist = std::abs(x - q);
    if (dist < near) {
      ++out.excluded;
      continue;
    }
    sum += std::log(dist);
  }
  out.principal_value = out.excluded > 0;
  out.root_sum = sum / dm + out.leading_term;

  for (std::size_t k = 1; k <= n; ++k) {
    const auto value = julia_direct_estimate(f, q, k);
    out.trace.push_back(value ? *value : -INFINITY);
  }
  out.direct = julia_direct_estimate(f, q, n);

  // (1/d^n) log+|f^n(q)|, in logarithms once the orbit is large.
  const double threshold = large_threshold(f);
  const double log_a = std::log(std::abs(f.leading()));
  Complex w = q;
  double log_w = 0.0;
  bool big = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (!big && std::abs(w) > threshold) {
      big = true;
      log_w = std::log(std::abs(w));
    }
    if (big)
      log_w = log_a + d * log_w;
    else
      w = f(w);
  }
  out.escape_rate = (big ? log_w : std::max(0.0, std::log(std::abs(w)))) / dm;
  return out;
}

bool is_chebyshev(const ComplexPoly& f) {
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  for (std::size_t k = 1; k < f.degree(); ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i] - Complex(cur[i], 0.0)) > 1e-12) return false;
  return true;
}

double chebyshev_closed_form(Complex q) {
  const Complex s = std::sqrt(q * q - 1.0);
  const double m = std::max(std::abs(q + s), std::abs(q - s));
  return std::max(0.0, std::log(m));
}

double arcsine_integral(Complex q, std::size_t panels) {
  if (panels < 2) throw DomainError("arcsine quadrature needs at least 2 panels");
  if (std::abs(q.imag()) < 1e-15 && std::abs(q.real()) <= 1.0)
    throw DomainError("q lies on the segment [-1, 1]");
  const double h = std::numbers::pi / static_cast<double>(panels);
  double sum = 0.5 * (std::log(std::abs(1.0 - q)) + std::log(std::abs(-1.0 - q)));
  for (std::size_t k = 1; k < panels; ++k)
    sum += std::log(std::abs(std::cos(static_cast<double>(k) * h) - q));
  return sum / static_cast<double>(panels);
}

}  // namespace adelent
