#pragma once

#include <string>

namespace vhasian {

enum class KernelKind { classical, fractional };

/// Convolution kernel of the variance equation: K(t) = 1 (classical Heston)
/// or K(t) = t^{alpha-1} / Gamma(alpha) with 1/2 < alpha < 1 (rough Heston).
class Kernel {
 public:
  static Kernel classical() { return Kernel(KernelKind::classical, 1.0); }
  static Kernel fractional(double alpha);
  /// alpha == 1 gives the classical kernel, anything else must be fractional.
  static Kernel from_alpha(double alpha);

  KernelKind kind() const noexcept { return kind_; }
  bool is_classical() const noexcept { return kind_ == KernelKind::classical; }
  /// Roughness exponent; 1 for the classical kernel.
  double alpha() const noexcept { return alpha_; }

  std::string describe() const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  Kernel(KernelKind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  KernelKind kind_;
  double alpha_;
};

/// Heston-type model parameters.
struct ModelParams {
  double kappa = 1.15;  // mean-reversion speed
  double theta = 0.348; // long-run variance
  double sigma = 0.39;  // vol-of-vol
  double rho = -0.64;   // spot/variance correlation
  double r = 0.05;      // risk-free rate
  double s0 = 100.0;    // spot
  double v0 = 0.09;     // initial variance

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// The benchmark parameter set used throughout the tables and the CLI defaults.
inline ModelParams benchmark_params() { return ModelParams{}; }

double kernel_eval(const Kernel& k, double t);

/// Resolvent R of kappa*K, i.e. R * (kappa K) = kappa K - R.
/// Classical: kappa e^{-kappa t}; fractional: kappa t^{alpha-1} E_{alpha,alpha}(-kappa t^alpha).
double resolvent_kappa(const Kernel& k, const ModelParams& params, double t);

/// int_0^t R(y) dy. Fractional: 1 - E_{alpha,1}(-kappa t^alpha), which avoids
/// quadrature of the t^{alpha-1} endpoint singularity.
double integrated_resolvent(const Kernel& k, const ModelParams& params, double t);

/// Time-0 forward variance xi_0(tau) = v0 (1 - int R) + theta int R.
double forward_variance_0(const Kernel& k, const ModelParams& params, double tau);

}  // namespace vhasian
