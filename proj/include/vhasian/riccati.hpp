#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "vhasian/kernel.hpp"

namespace vhasian {

using cplx = std::complex<double>;

/// Argument (s, w) of the joint transform plus maturity T. Admissible when
/// Re s >= 0, Re w >= 0 and Re s + Re w <= 1; imaginary parts are free.
struct TransformArg {
  cplx s;
  cplx w;
  double T;

  /// Throws std::domain_error outside the admissible domain (1e-12 slack).
  void validate() const;
  TransformArg conj() const { return {std::conj(s), std::conj(w), T}; }
};

/// Affine forcing phi1(tau) = s tau / T + w.
cplx phi1(const TransformArg& arg, double tau);

/// Quadratic form 1/2 (f1^2 - f1) + rho sigma f1 f2 + 1/2 sigma^2 f2^2.
cplx q_form(const ModelParams& params, cplx f1, cplx f2);

/// Product-integration weights of the fractional Adams predictor-corrector
/// on a uniform grid with n steps, without the h^alpha / Gamma scale factors.
/// Immutable; shared across all solves with the same (alpha, n).
class AdamsWeights {
 public:
  static std::shared_ptr<const AdamsWeights> get(double alpha, std::size_t n_steps);

  AdamsWeights(double alpha, std::size_t n_steps);

  double alpha() const noexcept { return alpha_; }
  std::size_t steps() const noexcept { return n_; }

  /// (k+1)^a - k^a, k = 0..n-1 (rectangle-rule predictor weight at lag k).
  double predictor(std::size_t lag) const { return predictor_[lag]; }
  /// (k+2)^{a+1} - 2(k+1)^{a+1} + k^{a+1} (trapezoid corrector, interior lag k).
  double corrector(std::size_t lag) const { return corrector_[lag]; }
  /// m^{a+1} - (m-a)(m+1)^a: corrector weight of the initial node when
  /// stepping to node m+1.
  double corrector_start(std::size_t m) const { return corrector_start_[m]; }

 private:
  double alpha_;
  std::size_t n_;
  std::vector<double> predictor_;
  std::vector<double> corrector_;
  std::vector<double> corrector_start_;
};

/// Discretized phi2 on the uniform grid t_i = i * step, i = 0..N.
struct RiccatiPath {
  TransformArg arg;
  Kernel kernel = Kernel::classical();
  ModelParams params;
  double horizon = 0.0;
  double step = 0.0;
  std::vector<cplx> phi2;

  std::size_t steps() const { return phi2.empty() ? 0 : phi2.size() - 1; }
  double time(std::size_t i) const { return static_cast<double>(i) * step; }
  cplx phi1_at(std::size_t i) const { return phi1(arg, time(i)); }
  cplx q_at(std::size_t i) const { return q_form(params, phi1_at(i), phi2[i]); }
};

/// Solves phi2 = K * (Q(phi1, phi2) - kappa phi2) on [0, horizon] (default
/// arg.T) with one predictor and one corrector sweep per step.
///
/// Throws DivergenceError at the first non-finite node and InvariantError if
/// Re(phi2) exceeds 1e-10 anywhere.
RiccatiPath solve_phi2(const TransformArg& arg, const Kernel& kernel, const ModelParams& params,
                       std::size_t n_steps, std::optional<double> horizon = std::nullopt);

/// Max over grid nodes of |phi2 - (1/kappa) R * Q(phi1, phi2)|, with the
/// convolution by trapezoid. Classical kernel only (closed-form resolvent).
double check_resolvent_form(const RiccatiPath& path);

}  // namespace vhasian
