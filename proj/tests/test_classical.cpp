#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vhasian/classical.hpp"
#include "vhasian/transform.hpp"

using namespace vhasian;

namespace {
const ModelParams kP = benchmark_params();
}

TEST_SUITE("classical") {

TEST_CASE("coefficients") {
  const auto z = classical_coefficients({1.0, 0.0, 2.0}, kP);
  CHECK(z.z4 == cplx(0.0));
  CHECK(z.z1.real() == doctest::Approx((1.0 - kP.rho * kP.rho) / 8.0));
  const auto y = classical_coefficients({0.0, 1.0, 2.0}, kP);
  CHECK(y.z1 == cplx(0.0));
  CHECK(y.z4.real() == doctest::Approx(kP.rho / kP.sigma));
}

TEST_CASE("ODE transform matches the high-precision reference") {
  struct Ref {
    double s, w, T, psi;
  };
  const Ref refs[] = {
      {1.0, 0.0, 0.5, 100.63353854012212455},
      {1.0, 0.0, 1.0, 100.93085256961768548},
      {0.5, 0.5, 1.0, 102.08038786698974078},
      {0.25, 0.5, 3.0, 31.80859744953727041},
      {0.0, 1.0, 1.0, 105.12710963760240397},
  };
  for (const auto& r : refs)
    CHECK(classical_psi0({r.s, r.w, r.T}, kP).real() == doctest::Approx(r.psi).epsilon(1e-11));
  const cplx z = classical_psi0({cplx(0.0, 1.0), 0.0, 1.0}, kP);
  CHECK(std::abs(z - cplx(-0.11914659884702321157, -0.96637002213281805944)) < 1e-11);
}

TEST_CASE("C path starts at z4 and matches the scalar integrator") {
  const TransformArg arg{0.3, 0.7, 2.0};
  const auto c = classical_c_path(arg, kP, 64, 4);
  CHECK(c.size() == 65);
  CHECK(c.front() == classical_coefficients(arg, kP).z4);
}

TEST_CASE("substitution identity phi2 = C - rho/sigma phi1") {
  CHECK(substitution_check({1.0, 0.0, 1.0}, kP, 2048) < 1e-5);
  CHECK(substitution_check({0.3, 0.7, 2.0}, kP, 2048) < 1e-5);
  CHECK(substitution_check({cplx(0.5, 4.0), cplx(0.25, -2.0), 1.0}, kP, 2048) < 1e-5);
}

TEST_CASE("volterra and ODE transforms agree") {
  for (double T : {0.2, 1.0, 3.0})
    for (auto [s, w] : {std::pair{1.0, 0.0}, std::pair{0.25, 0.75}, std::pair{0.5, 0.0}}) {
      const TransformArg arg{s, w, T};
      CAPTURE(T);
      CHECK(std::abs(psi0(arg, Kernel::classical(), kP, 16384) - classical_psi0(arg, kP)) < 1e-6);
    }
}

TEST_CASE("inputs are validated") {
  CHECK_THROWS_AS(classical_psi0({0.7, 0.7, 1.0}, kP), std::domain_error);
  CHECK_THROWS_AS(classical_psi0({0.5, 0.5, 1.0}, kP, 0), std::invalid_argument);
}

}  // TEST_SUITE
