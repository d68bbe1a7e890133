#include "vhasian/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vhasian/numerics.hpp"

namespace vhasian {

Kernel Kernel::fractional(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    std::ostringstream os;
    os << "fractional kernel needs 0.5 < alpha < 1, got " << alpha;
    throw std::invalid_argument(os.str());
  }
  return Kernel(KernelKind::fractional, alpha);
}

Kernel Kernel::from_alpha(double alpha) {
  if (alpha == 1.0) return classical();
  if (!(alpha > 0.5 && alpha < 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0.5, 1], got " << alpha;
    throw std::invalid_argument(os.str());
  }
  return fractional(alpha);
}

std::string Kernel::describe() const {
  if (is_classical()) return "classical";
  std::ostringstream os;
  os << "fractional(alpha=" << alpha_ << ")";
  return os.str();
}

void ModelParams::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(kappa > 0.0) || !std::isfinite(kappa)) fail("kappa must be positive");
  if (!(theta > 0.0) || !std::isfinite(theta)) fail("theta must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be positive");
  if (!(rho >= -1.0 && rho <= 1.0)) fail("rho must lie in [-1, 1]");
  if (!std::isfinite(r)) fail("r must be finite");
  if (!(s0 > 0.0) || !std::isfinite(s0)) fail("s0 must be positive");
  if (!(v0 >= 0.0) || !std::isfinite(v0)) fail("v0 must be nonnegative");
}

double kernel_eval(const Kernel& k, double t) {
  if (k.is_classical()) return 1.0;
  if (!(t > 0.0)) throw std::domain_error("fractional kernel is singular at t <= 0");
  const double a = k.alpha();
  return std::pow(t, a - 1.0) / std::tgamma(a);
}

double resolvent_kappa(const Kernel& k, const ModelParams& params, double t) {
  if (!(t > 0.0)) throw std::domain_error("resolvent_kappa: t must be positive");
  const double kappa = params.kappa;
  if (k.is_classical()) return kappa * std::exp(-kappa * t);
  const double a = k.alpha();
  return kappa * std::pow(t, a - 1.0) * mittag_leffler({a, a}, -kappa * std::pow(t, a));
}

double integrated_resolvent(const Kernel& k, const ModelParams& params, double t) {
  if (!(t >= 0.0)) throw std::domain_error("integrated_resolvent: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const double kappa = params.kappa;
  if (k.is_classical()) return -std::expm1(-kappa * t);
  const double a = k.alpha();
  return 1.0 - mittag_leffler({a, 1.0}, -kappa * std::pow(t, a));
}

double forward_variance_0(const Kernel& k, const ModelParams& params, double tau) {
  const double w = integrated_resolvent(k, params, tau);
  return params.v0 + (params.theta - params.v0) * w;
}

}  // namespace vhasian
