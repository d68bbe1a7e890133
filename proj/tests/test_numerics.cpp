#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vhasian/errors.hpp"
#include "vhasian/numerics.hpp"

using namespace vhasian;

TEST_SUITE("numerics") {

// Reference values from tests/oracles/compute_oracles.py (high-precision series).
TEST_CASE("mittag-leffler matches high-precision references") {
  struct Ref {
    double a, b, z, value;
  };
  const Ref refs[] = {
      {0.75, 0.75, -1.0, 0.23223772010096143194},
      {0.6, 1.0, -5.0, 0.095117846438754616683},
      {0.6, 0.6, -12.0, 0.0019791003199513285952},
      {0.75, 1.0, -30.0, 0.0095166926931171288816},
      {0.6, 1.0, -50.0, 0.0090837447731034541369},
      {0.9, 0.9, -20.0, 0.00028402595741192644328},
      {0.6, 0.6, -0.5, 0.31922307382676062617},
  };
  for (const auto& r : refs) {
    CAPTURE(r.a);
    CAPTURE(r.z);
    CHECK(mittag_leffler({r.a, r.b}, r.z) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("mittag-leffler closed forms") {
  CHECK(mittag_leffler({0.75, 0.75}, 0.0) == doctest::Approx(1.0 / std::tgamma(0.75)).epsilon(1e-15));
  for (double z : {-3.0, -0.4, 0.0, 0.7, 2.5})
    CHECK(mittag_leffler({1.0, 1.0}, z) == doctest::Approx(std::exp(z)).epsilon(1e-14));
  // E_{1/2,1}(-x) = e^{x^2} erfc(x)
  for (double x : {0.3, 1.0, 2.0})
    CHECK(mittag_leffler({0.5, 1.0}, -x) ==
          doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-12));
  // E_{2,1}(-x^2) = cos x
  CHECK(mittag_leffler({2.0, 1.0}, -4.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-12));
}

TEST_CASE("mittag-leffler is continuous across the scheme switch at z = -1") {
  for (double a : {0.55, 0.75, 0.95}) {
    const double left = mittag_leffler({a, a}, -1.0 - 1e-9);
    const double right = mittag_leffler({a, a}, -1.0 + 1e-9);
    CHECK(std::abs(left - right) < 1e-9);
  }
}

TEST_CASE("completely monotone on the negative axis for alpha in (0,1]") {
  for (double a : {0.6, 0.75}) {
    double prev = mittag_leffler({a, 1.0}, 0.0);
    for (double z = -0.5; z >= -40.0; z -= 0.5) {
      const double v = mittag_leffler({a, 1.0}, z);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("mittag-leffler rejects bad parameters") {
  CHECK_THROWS_AS(mittag_leffler({0.0, 1.0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler({0.7, -1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("series cancellation is reported instead of returned") {
  CHECK_THROWS_AS(mittag_leffler({1.5, 1.0}, -60.0), NumericError);
}

TEST_CASE("quadrature rule names round-trip") {
  for (auto r : {QuadratureRule::adaptive, QuadratureRule::fixed_panel})
    CHECK(parse_quadrature_rule(to_string(r)) == r);
  CHECK_THROWS_AS(parse_quadrature_rule("simpson"), std::invalid_argument);
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  CHECK_NOTHROW(q.validate());
  q.lower = 5.0;
  q.upper = 1.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = QuadratureSpec{};
  q.tol = 0.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = QuadratureSpec{};
  q.panels = 0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("adaptive quadrature on known integrals") {
  QuadratureSpec q;
  q.lower = 0.0;
  q.upper = 50.0;
  const auto e = integrate_semi_infinite([](double x) { return std::exp(-x); }, q);
  CHECK(e.value == doctest::Approx(-std::expm1(-50.0)).epsilon(1e-12));
  CHECK(e.error_estimate <= q.tol);

  // sin(x)/x oscillates over the whole range
  const auto s = integrate_semi_infinite([](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, q);
  const double si50 = 1.5516170724859358947;  // Si(50)
  CHECK(s.value == doctest::Approx(si50).epsilon(1e-10));
}

TEST_CASE("fixed-panel rule is exact for low-degree polynomials") {
  QuadratureSpec q;
  q.lower = 0.0;
  q.upper = 2.0;
  q.rule = QuadratureRule::fixed_panel;
  q.panels = 1;
  const auto r = integrate_semi_infinite([](double x) { return std::pow(x, 20) - 3.0 * x; }, q);
  CHECK(r.value == doctest::Approx(std::pow(2.0, 21) / 21.0 - 6.0).epsilon(1e-13));
  CHECK(r.evaluations == 15);
}

TEST_CASE("batched and scalar integrands agree bit for bit") {
  QuadratureSpec q;
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-0.1 * x); };
  const auto a = integrate_semi_infinite(f, q);
  const BatchIntegrand batch = [&](std::span<const double> xs, std::span<double> ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  };
  const auto b = integrate_semi_infinite(batch, q);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("exhausted node budget raises AccuracyError") {
  QuadratureSpec q;
  q.tol = 1e-15;
  q.max_evaluations = 200;
  auto f = [](double x) { return std::sin(x * x); };
  CHECK_THROWS_AS(integrate_semi_infinite(f, q), AccuracyError);
}

TEST_CASE("non-finite integrand raises NumericError") {
  QuadratureSpec q;
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return std::nan(""); }, q), NumericError);
}

}  // TEST_SUITE
