#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "vhasian/numerics.hpp"
#include "vhasian/transform.hpp"

namespace vhasian {

enum class OptionType { european_call, fixed_asian_call, fixed_asian_put, float_asian_call, float_asian_put };

/// CLI spelling: euro-call, fixed-call, fixed-put, float-call, float-put.
std::string to_string(OptionType type);
OptionType parse_option_type(const std::string& name);
bool has_strike(OptionType type);

/// Riccati grid size used when a request does not override it.
inline constexpr std::size_t kDefaultRiccatiSteps = 1024;

struct PricingRequest {
  OptionType option = OptionType::fixed_asian_call;
  std::optional<double> strike;
  double T = 1.0;
  StatePath valuation;
  /// Forward variance xi_t on [t, T]; required iff valuation.t > 0.
  std::optional<ForwardCurve> curve;
  QuadratureSpec quad;
  std::size_t n_steps = kDefaultRiccatiSteps;
  /// Evaluate quadrature nodes on several threads. Results may differ from
  /// sequential mode in the last bits only through the transform cache,
  /// never through summation order.
  bool parallel = false;

  void validate() const;
};

struct PriceDiagnostics {
  std::size_t quad_nodes = 0;
  std::size_t riccati_steps = 0;
  double upper_truncation = 0.0;
  /// psi_t(1, 0) for Asian options; the normalizer psi_0(0, 1) = E[S_T] for
  /// the European call.
  cplx psi10 = 0.0;
  double quad_error = 0.0;
  /// Transform evaluations that needed a finer Riccati grid to stay stable.
  std::size_t refinements = 0;
};

struct PriceResult {
  double price = 0.0;
  PriceDiagnostics diagnostics;
};

/// Memoized psi_t(s, w) for one (kernel, params, T, valuation state).
///
/// Solves that diverge or break Re(phi2) <= 0 are retried on a grid twice as
/// fine, up to 16x the base size; this only triggers at large Fourier
/// frequencies where |psi| is negligible. Thread-safe.
class TransformEvaluator {
 public:
  TransformEvaluator(Kernel kernel, ModelParams params, double T, std::size_t n_steps,
                     StatePath state, std::optional<ForwardCurve> curve = std::nullopt);

  cplx operator()(cplx s, cplx w) const;

  const Kernel& kernel() const { return kernel_; }
  const ModelParams& params() const { return params_; }
  const StatePath& state() const { return state_; }
  double maturity() const { return T_; }
  std::size_t steps() const { return n_steps_; }
  std::size_t refinements() const;

 private:
  cplx evaluate(cplx s, cplx w) const;

  Kernel kernel_;
  ModelParams params_;
  double T_;
  std::size_t n_steps_;
  StatePath state_;
  std::optional<ForwardCurve> curve_;

  using Key = std::tuple<double, double, double, double>;
  mutable std::mutex mutex_;
  mutable std::map<Key, cplx> cache_;
  mutable std::size_t refinements_ = 0;
};

/// Prices Asian options for one maturity, sharing transform evaluations
/// across strikes and between calls and puts.
class AsianPricer {
 public:
  AsianPricer(const Kernel& kernel, const ModelParams& params, double T, QuadratureSpec quad,
              std::size_t n_steps = kDefaultRiccatiSteps,
              std::optional<StatePath> state = std::nullopt,
              std::optional<ForwardCurve> curve = std::nullopt, bool parallel = false);

  struct CallPut {
    PriceResult call;
    PriceResult put;
  };

  /// Fixed-strike call and put for strike K.
  CallPut fixed_strike(double K) const;
  /// Floating-strike call (payoff (S_T - G)^+) and put (payoff (G - S_T)^+).
  CallPut floating_strike() const;

  /// psi_t(1, 0): the expected geometric average over [t, T], in the
  /// normalization of the joint transform.
  cplx psi10() const;

  const TransformEvaluator& transform() const { return *eval_; }

 private:
  QuadratureResult integrate(const std::function<double(double)>& f) const;
  PriceDiagnostics diagnostics(const QuadratureResult& q) const;

  std::shared_ptr<TransformEvaluator> eval_;
  QuadratureSpec quad_;
  bool parallel_;
};

PriceResult price_european_call(const PricingRequest& req, const Kernel& kernel,
                                const ModelParams& params);
PriceResult price_fixed_asian(const PricingRequest& req, const Kernel& kernel,
                              const ModelParams& params);
PriceResult price_float_asian(const PricingRequest& req, const Kernel& kernel,
                              const ModelParams& params);
/// Dispatches on req.option.
PriceResult price(const PricingRequest& req, const Kernel& kernel, const ModelParams& params);

struct ParityResiduals {
  double fixed;
  double floating;
};

/// |C - P - e^{-rT}(psi_0(1,0) - K)| and |C~ - P~ - (S0 - e^{-rT} psi_0(1,0))| at t = 0.
ParityResiduals parity_residuals(double T, double K, const Kernel& kernel,
                                 const ModelParams& params, const QuadratureSpec& quad,
                                 std::size_t n_steps = kDefaultRiccatiSteps);

}  // namespace vhasian
