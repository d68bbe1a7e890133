#include "vhasian/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vhasian/errors.hpp"

namespace vhasian {

ClassicalCoefficients classical_coefficients(const TransformArg& arg, const ModelParams& params) {
  if (!(params.sigma > 0.0)) throw std::invalid_argument("classical: sigma must be positive");
  const cplx s = arg.s;
  const cplx w = arg.w;
  const double T = arg.T;
  const double k = params.kappa;
  const double th = params.theta;
  const double sig = params.sigma;
  const double rho = params.rho;
  const double log_s0 = std::log(params.s0);
  const double one_m_rho2 = 1.0 - rho * rho;

  ClassicalCoefficients c;
  c.z0 = s * (log_s0 + params.r * T / 2.0 - k * th * rho * T / (2.0 * sig) - rho / sig * params.v0) +
         w * (log_s0 + params.r * T - k * th * rho * T / sig - rho / sig * params.v0);
  c.z1 = s * s * one_m_rho2 / (2.0 * T * T);
  c.z2 = s * (2.0 * rho * k - sig) / (2.0 * sig * T) + s * w * one_m_rho2 / T;
  c.z3 = s * rho / (sig * T) + w * (2.0 * rho * k - sig) / (2.0 * sig) + w * w * one_m_rho2 / 2.0;
  c.z4 = rho * w / sig;
  return c;
}

namespace {

struct State {
  cplx c;
  cplx d;
};

class ClassicalOde {
 public:
  ClassicalOde(const ClassicalCoefficients& z, const ModelParams& p) : z_(z), p_(p) {}

  State derivative(double y, const State& x) const {
    const double half_sig2 = 0.5 * p_.sigma * p_.sigma;
    const cplx dc = (z_.z1 * y + z_.z2) * y + z_.z3 - p_.kappa * x.c + half_sig2 * x.c * x.c;
    return {dc, p_.kappa * p_.theta * x.c};
  }

  State rk4_step(double y, const State& x, double h) const {
    auto axpy = [](const State& a, double f, const State& b) {
      return State{a.c + f * b.c, a.d + f * b.d};
    };
    const State k1 = derivative(y, x);
    const State k2 = derivative(y + 0.5 * h, axpy(x, 0.5 * h, k1));
    const State k3 = derivative(y + 0.5 * h, axpy(x, 0.5 * h, k2));
    const State k4 = derivative(y + h, axpy(x, h, k3));
    return {x.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c),
            x.d + h / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d)};
  }

 private:
  ClassicalCoefficients z_;
  ModelParams p_;
};

void check_finite(const State& x, std::size_t step) {
  if (!std::isfinite(x.c.real()) || !std::isfinite(x.c.imag()) || !std::isfinite(x.d.real()) ||
      !std::isfinite(x.d.imag())) {
    std::ostringstream os;
    os << "classical ODE: non-finite state after step " << step;
    throw DivergenceError(os.str(), step);
  }
}

}  // namespace

std::vector<cplx> classical_c_path(const TransformArg& arg, const ModelParams& params,
                                   std::size_t n_nodes, std::size_t substeps) {
  arg.validate();
  params.validate();
  if (n_nodes < 1 || substeps < 1) throw std::invalid_argument("classical: bad step counts");
  const auto z = classical_coefficients(arg, params);
  const ClassicalOde ode(z, params);
  const double h = arg.T / static_cast<double>(n_nodes * substeps);
  std::vector<cplx> out(n_nodes + 1);
  State x{z.z4, 0.0};
  out[0] = x.c;
  std::size_t step = 0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    for (std::size_t k = 0; k < substeps; ++k, ++step) {
      x = ode.rk4_step(static_cast<double>(step) * h, x, h);
      check_finite(x, step + 1);
    }
    out[i + 1] = x.c;
  }
  return out;
}

cplx classical_psi0(const TransformArg& arg, const ModelParams& params, std::size_t ode_steps) {
  arg.validate();
  params.validate();
  if (ode_steps < 1) throw std::invalid_argument("classical: ode_steps must be positive");
  const auto z = classical_coefficients(arg, params);
  const ClassicalOde ode(z, params);
  const double h = arg.T / static_cast<double>(ode_steps);
  State x{z.z4, 0.0};
  for (std::size_t i = 0; i < ode_steps; ++i) {
    x = ode.rk4_step(static_cast<double>(i) * h, x, h);
    check_finite(x, i + 1);
  }
  return std::exp(z.z0 + params.v0 * x.c + x.d);
}

double substitution_check(const TransformArg& arg, const ModelParams& params,
                          std::size_t n_steps) {
  const RiccatiPath path = solve_phi2(arg, Kernel::classical(), params, n_steps);
  const auto c = classical_c_path(arg, params, n_steps, 8);
  const double shift = params.rho / params.sigma;
  double worst = 0.0;
  for (std::size_t i = 0; i <= n_steps; ++i)
    worst = std::max(worst, std::abs(path.phi2[i] - (c[i] - shift * path.phi1_at(i))));
  return worst;
}

}  // namespace vhasian
