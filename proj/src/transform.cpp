#include "vhasian/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vhasian/errors.hpp"

namespace vhasian {

namespace {

cplx checked_exp(cplx exponent, std::size_t n_steps) {
  const cplx v = std::exp(exponent);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw DivergenceError("transform: exponent overflow", n_steps);
  return v;
}

}  // namespace

void ForwardCurve::validate(double T) const {
  if (times.size() < 2 || times.size() != values.size())
    throw std::invalid_argument("forward curve: need >= 2 samples with matching values");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("forward curve: times must be strictly increasing");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("forward curve: values must be nonnegative");
  const double slack = 1e-12 * std::max(1.0, T);
  if (times.front() < t - slack)
    throw std::invalid_argument("forward curve: first sample precedes the valuation time");
  if (times.front() > t + slack || times.back() < T - slack)
    throw std::domain_error("forward curve: samples do not cover [t, T]");
}

double ForwardCurve::at(double u) const {
  if (u <= times.front()) return values.front();
  if (u >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (u - times[lo]) / (times[hi] - times[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

ForwardCurve sample_forward_variance_0(const Kernel& kernel, const ModelParams& params, double T,
                                       std::size_t n) {
  if (n < 1 || !(T > 0.0)) throw std::invalid_argument("forward curve: need T > 0, n >= 1");
  ForwardCurve curve;
  curve.times.resize(n + 1);
  curve.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double u = (i == n) ? T : T * static_cast<double>(i) / static_cast<double>(n);
    curve.times[i] = u;
    curve.values[i] = forward_variance_0(kernel, params, u);
  }
  return curve;
}

void StatePath::validate() const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("state: t must be >= 0");
  if (!std::isfinite(log_spot) || !std::isfinite(running_log_integral))
    throw std::invalid_argument("state: log spot and running integral must be finite");
  if (t == 0.0 && running_log_integral != 0.0)
    throw std::invalid_argument("state: running log integral must vanish at t = 0");
}

cplx psi0(const TransformArg& arg, const Kernel& kernel, const ModelParams& params,
          std::size_t n_steps) {
  const RiccatiPath path = solve_phi2(arg, kernel, params, n_steps);
  const double mix = params.kappa * (params.theta - params.v0);
  auto integrand = [&](std::size_t i) { return params.v0 * path.q_at(i) + mix * path.phi2[i]; };
  const std::size_t n = path.steps();
  cplx sum = 0.5 * (integrand(0) + integrand(n));
  for (std::size_t i = 1; i < n; ++i) sum += integrand(i);
  const double log_s0 = std::log(params.s0);
  const double T = arg.T;
  const cplx exponent = arg.s * (log_s0 + 0.5 * params.r * T) + arg.w * (log_s0 + params.r * T) +
                        path.step * sum;
  return checked_exp(exponent, n);
}

cplx psi_t(const TransformArg& arg, const StatePath& state, const ForwardCurve& curve,
           const Kernel& kernel, const ModelParams& params, std::size_t n_steps) {
  state.validate();
  const double T = arg.T;
  const double t = state.t;
  if (!(t < T)) throw std::domain_error("psi_t: valuation time must precede maturity");
  if (curve.t != t) throw std::invalid_argument("psi_t: curve and state valuation times differ");
  curve.validate(T);

  const double remaining = T - t;
  const RiccatiPath path = solve_phi2(arg, kernel, params, n_steps, remaining);
  // int_t^T Q(T-u) xi_t(u) du = int_0^{T-t} Q(tau) xi_t(T - tau) dtau.
  auto integrand = [&](std::size_t i) { return path.q_at(i) * curve.at(T - path.time(i)); };
  const std::size_t n = path.steps();
  cplx sum = 0.5 * (integrand(0) + integrand(n));
  for (std::size_t i = 1; i < n; ++i) sum += integrand(i);

  const double r = params.r;
  const cplx exponent =
      arg.s * (remaining / T * state.log_spot + r * remaining * remaining / (2.0 * T)) +
      arg.w * (state.log_spot + r * remaining) + path.step * sum;
  return checked_exp(exponent, n);
}

cplx european_cf(double u, const Kernel& kernel, const ModelParams& params, double T,
                 std::size_t n_steps) {
  return psi0(TransformArg{0.0, cplx(0.0, u), T}, kernel, params, n_steps);
}

}  // namespace vhasian
