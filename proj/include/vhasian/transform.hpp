#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vhasian/riccati.hpp"

namespace vhasian {

/// Samples of the forward variance u -> xi_t(u) on [t, T], interpolated
/// linearly in between.
struct ForwardCurve {
  double t = 0.0;
  std::vector<double> times;
  std::vector<double> values;

  /// Checks ordering, nonnegativity and that the samples span [t, T].
  void validate(double T) const;
  double at(double u) const;
};

/// Uniform samples of xi_0 on [0, T] (n intervals).
ForwardCurve sample_forward_variance_0(const Kernel& kernel, const ModelParams& params, double T,
                                       std::size_t n);

/// Observed state at the valuation time t.
struct StatePath {
  double t = 0.0;
  double log_spot = 0.0;
  /// int_0^t log S_u du; zero at t = 0.
  double running_log_integral = 0.0;

  static StatePath at_inception(const ModelParams& params) { return {0.0, std::log(params.s0), 0.0}; }
  void validate() const;
};

/// psi_0(s, w) = E[exp(s log G_{0,T} + w log S_T)] in the resolvent-free form
/// exp(s (log S0 + rT/2) + w (log S0 + rT) + int_0^T v0 Q + kappa (theta - v0) phi2),
/// the time integral taken by trapezoid on the Riccati grid.
cplx psi0(const TransformArg& arg, const Kernel& kernel, const ModelParams& params,
          std::size_t n_steps);

/// psi_t(s, w) from the forward-variance representation
/// exp(s ((T-t)/T log S_t + r (T-t)^2 / (2T)) + w (log S_t + r (T-t))
///     + int_t^T Q(T-u) xi_t(u) du).
/// The running log integral in `state` is not applied here; pricing applies it.
cplx psi_t(const TransformArg& arg, const StatePath& state, const ForwardCurve& curve,
           const Kernel& kernel, const ModelParams& params, std::size_t n_steps);

/// Characteristic function of log S_T at real u, i.e. psi_0(0, iu).
cplx european_cf(double u, const Kernel& kernel, const ModelParams& params, double T,
                 std::size_t n_steps);

}  // namespace vhasian
