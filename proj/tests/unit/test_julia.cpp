#include <algorithm>
#include <cmath>
#include <numbers>

#include "adelent/errors.hpp"
#include "adelent/julia.hpp"
#include "support.hpp"

using namespace adelent;

namespace {

ComplexPoly square() { return ComplexPoly::parse("1,0,0"); }
ComplexPoly chebyshev2() { return ComplexPoly::parse("2,0,-1"); }

bool contains(const std::vector<Complex>& roots, Complex z, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](Complex r) { return std::abs(r - z) < tol; });
}

}  // namespace

TEST_SUITE("julia") {
  TEST_CASE("parsing") {
    CHECK(parse_complex("2") == Complex(2, 0));
    CHECK(parse_complex("1+2i") == Complex(1, 2));
    CHECK(parse_complex("-0.5-i") == Complex(-0.5, -1));
    CHECK(parse_complex("3i") == Complex(0, 3));
    CHECK(parse_complex("1/4") == Complex(0.25, 0));
    CHECK(parse_complex("1e-3+2e2i") == Complex(1e-3, 2e2));
    CHECK_THROWS_AS(parse_complex("one"), ParseError);
    CHECK_THROWS_AS(ComplexPoly::parse("0,1,1"), ParseError);
  }

  TEST_CASE("composition") {
    const auto z8 = compose_self(square(), 3);
    REQUIRE(z8.degree() == 8);
    for (std::size_t i = 0; i < 8; ++i) CHECK(z8.coefficients()[i] == Complex(0.0));
    CHECK(z8.leading() == Complex(1.0));
    CHECK(compose_self(chebyshev2(), 2).leading() == Complex(8.0));
    const auto g = compose_self(ComplexPoly::parse("1,0,1"), 2);
    CHECK(g.coefficients() == std::vector<Complex>{2, 0, 2, 0, 1});
    CHECK_THROWS_AS(compose_self(square(), 15), DomainError);
  }

  TEST_CASE("periodic points of small level") {
    const auto two = periodic_points(square(), 2);
    REQUIRE(two.roots.size() == 4);
    const double third = 2 * std::numbers::pi / 3;
    for (Complex z : {Complex(0), Complex(1), std::polar(1.0, third), std::polar(1.0, -third)})
      CHECK(contains(two.roots, z, 1e-8));
    const auto one = periodic_points(chebyshev2(), 1);
    CHECK(contains(one.roots, 1.0, 1e-10));
    CHECK(contains(one.roots, -0.5, 1e-10));
    CHECK(one.max_residual < 1e-8);
  }

  TEST_CASE("periodic points are permuted by f") {
    for (const auto& f : {square(), chebyshev2(), ComplexPoly::parse("1,0,-1"), ComplexPoly::parse("1,0,0.25+0.5i")}) {
      const auto set = periodic_points(f, 6);
      for (Complex z : set.roots) CHECK(contains(set.roots, f(z), 1e-6));
    }
  }

  TEST_CASE("non-convergence is reported") {
    RootOptions options;
    options.max_sweeps = 1;
    options.tol = 1e-14;
    CHECK_THROWS_AS(periodic_points(chebyshev2(), 9, options), ComputationError);
  }

  TEST_CASE("local heights") {
    const auto h = julia_local_height(square(), 2.0, 12);
    CHECK(std::abs(h.root_sum - std::log(2.0)) < 1e-2);
    REQUIRE(h.direct.has_value());
    CHECK(std::abs(*h.direct - std::log(2.0)) < 1e-2);
    const auto inside = julia_local_height(square(), 0.0, 8);
    CHECK(std::abs(inside.root_sum) < 1e-10);
    CHECK(inside.principal_value);
    const auto cheb = julia_local_height(chebyshev2(), 2.0, 12);
    const double target = std::log(2.0 + std::sqrt(3.0));
    CHECK(std::abs(cheb.root_sum - target) < 1e-2);
    CHECK(std::abs(*cheb.direct - target) < 1e-2);
  }

  TEST_CASE("leading term identity") {
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto h = julia_local_height(chebyshev2(), Complex(0, 3), n);
      const double dn = std::pow(2.0, static_cast<double>(n));
      CHECK(h.leading_term == doctest::Approx((dn - 1) / dn * std::log(2.0)));
      CHECK(std::abs(h.leading_term - std::log(2.0)) <= std::log(2.0) / dn + 1e-15);
    }
  }

  TEST_CASE("direct estimate in log scale") {
    const auto f = ComplexPoly::parse("3,0,1");
    const auto value = julia_direct_estimate(f, 5.0, 40);
    REQUIRE(value.has_value());
    CHECK(std::isfinite(*value));
    // Reference: 60-digit iteration of the same 40 steps.
    CHECK(*value == doctest::Approx(2.71468724171484239).epsilon(1e-12));
  }

  TEST_CASE("chebyshev closed form") {
    CHECK(is_chebyshev(chebyshev2()));
    CHECK(is_chebyshev(ComplexPoly::parse("4,0,-3,0")));
    CHECK_FALSE(is_chebyshev(square()));
    CHECK(chebyshev_closed_form(2.0) == doctest::Approx(1.3169578969248166));
    for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(chebyshev_closed_form(t) == 0.0);
    CHECK(chebyshev_closed_form(1e6) == doctest::Approx(std::log(2e6)).epsilon(1e-10));
  }

  TEST_CASE("arcsine integral") {
    CHECK(std::abs(arcsine_integral(2.0, 4096) - (std::log(2.0 + std::sqrt(3.0)) - std::log(2.0))) < 1e-6);
    CHECK(std::abs(arcsine_integral(Complex(0, 1), 4096) - std::log((1 + std::sqrt(2.0)) / 2)) < 1e-6);
    CHECK_THROWS_AS(arcsine_integral(0.0, 4096), DomainError);
    CHECK_THROWS_AS(arcsine_integral(0.5, 4096), DomainError);
    test::for_all(701, 10, [](test::Gen& g, int) {
      const Complex z(g.integer(-300, 300) / 100.0, g.integer(1, 300) / 100.0);
      CHECK(arcsine_integral(z, 4096) == doctest::Approx(arcsine_integral(-z, 4096)).epsilon(1e-12));
      CHECK(std::abs(chebyshev_closed_form(z) - arcsine_integral(z, 4096) - std::log(2.0)) < 1e-6);
    });
  }

  TEST_CASE("property: two estimators agree outside the filled Julia set") {
    for (const char* poly : {"1,0,0", "1,0,-1", "1,0,1i", "2,0,-1", "1,-1,0"}) {
      const auto f = ComplexPoly::parse(poly);
      test::for_all(702, 4, [&](test::Gen& g, int) {
        const Complex z(g.integer(200, 400) / 100.0, g.integer(-200, 200) / 100.0);
        CAPTURE(poly);
        const auto h = julia_local_height(f, z, 12);
        REQUIRE(h.direct.has_value());
        CHECK(std::abs(h.root_sum - *h.direct) < 1e-2);
      });
    }
  }

  TEST_CASE("property: agrees with the exact morphic height") {
    for (const char* poly : {"1,0,-1", "1,0,0", "1,1,-2"}) {
      const PolyMap exact = PolyMap::parse(poly);
      const auto f = ComplexPoly::from_rational(exact);
      for (const char* q : {"3", "5/2", "-7/3"}) {
        CAPTURE(poly);
        CAPTURE(q);
        const ExactRational zq = parse_rational(q);
        const double m = morphic_local_height(exact, zq, Place::infinity(), 10).estimate;
        const auto h = julia_local_height(f, zq.get_d(), 10);
        CHECK(std::abs(h.root_sum - m) < 1e-2);
      }
    }
  }
}
