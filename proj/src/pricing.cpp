#include "vhasian/pricing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vhasian/errors.hpp"
#include "vhasian/parallel.hpp"

namespace vhasian {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr std::size_t kMaxRefinement = 16;

struct OptionName {
  OptionType type;
  const char* name;
};

constexpr OptionName kOptionNames[] = {
    {OptionType::european_call, "euro-call"},
    {OptionType::fixed_asian_call, "fixed-call"},
    {OptionType::fixed_asian_put, "fixed-put"},
    {OptionType::float_asian_call, "float-call"},
    {OptionType::float_asian_put, "float-put"},
};

}  // namespace

std::string to_string(OptionType type) {
  for (const auto& o : kOptionNames)
    if (o.type == type) return o.name;
  throw std::invalid_argument("unknown option type");
}

OptionType parse_option_type(const std::string& name) {
  for (const auto& o : kOptionNames)
    if (name == o.name) return o.type;
  throw std::invalid_argument("unknown option type '" + name + "'");
}

bool has_strike(OptionType type) {
  return type != OptionType::float_asian_call && type != OptionType::float_asian_put;
}

void PricingRequest::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("request: T must be positive");
  if (has_strike(option)) {
    if (!strike) throw std::invalid_argument("request: " + to_string(option) + " needs a strike");
    if (!(*strike > 0.0) || !std::isfinite(*strike))
      throw std::invalid_argument("request: strike must be positive");
  } else if (strike) {
    throw std::invalid_argument("request: floating-strike options take no strike");
  }
  valuation.validate();
  if (!(valuation.t < T)) throw std::invalid_argument("request: valuation time must precede T");
  if (option == OptionType::european_call && valuation.t != 0.0)
    throw std::invalid_argument("request: the European call is priced at t = 0 only");
  if (valuation.t > 0.0 && !curve)
    throw std::invalid_argument("request: a forward variance curve is needed for t > 0");
  if (curve) {
    if (curve->t != valuation.t)
      throw std::invalid_argument("request: curve and valuation times differ");
    curve->validate(T);
  }
  quad.validate();
  if (n_steps < 1) throw std::invalid_argument("request: n_steps must be positive");
}

TransformEvaluator::TransformEvaluator(Kernel kernel, ModelParams params, double T,
                                       std::size_t n_steps, StatePath state,
                                       std::optional<ForwardCurve> curve)
    : kernel_(kernel), params_(params), T_(T), n_steps_(n_steps), state_(state),
      curve_(std::move(curve)) {
  params_.validate();
  state_.validate();
  if (!(T_ > state_.t)) throw std::invalid_argument("transform: T must exceed valuation time");
  if (n_steps_ < 1) throw std::invalid_argument("transform: n_steps must be positive");
  if (state_.t > 0.0 && !curve_)
    throw std::invalid_argument("transform: a forward variance curve is needed for t > 0");
}

std::size_t TransformEvaluator::refinements() const {
  const std::lock_guard lock(mutex_);
  return refinements_;
}

cplx TransformEvaluator::evaluate(cplx s, cplx w) const {
  const TransformArg arg{s, w, T_};
  std::size_t n = n_steps_;
  for (;;) {
    try {
      if (state_.t == 0.0 && !curve_) return psi0(arg, kernel_, params_, n);
      return psi_t(arg, state_, *curve_, kernel_, params_, n);
    } catch (const DivergenceError&) {
      if (n >= kMaxRefinement * n_steps_) throw;
    } catch (const InvariantError&) {
      if (n >= kMaxRefinement * n_steps_) throw;
    }
    n *= 2;
    const std::lock_guard lock(mutex_);
    ++refinements_;
  }
}

cplx TransformEvaluator::operator()(cplx s, cplx w) const {
  const Key key{s.real(), s.imag(), w.real(), w.imag()};
  {
    const std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const cplx value = evaluate(s, w);
  const std::lock_guard lock(mutex_);
  cache_.emplace(key, value);
  return value;
}

AsianPricer::AsianPricer(const Kernel& kernel, const ModelParams& params, double T,
                         QuadratureSpec quad, std::size_t n_steps, std::optional<StatePath> state,
                         std::optional<ForwardCurve> curve, bool parallel)
    : quad_(quad), parallel_(parallel) {
  quad_.validate();
  const StatePath st = state.value_or(StatePath::at_inception(params));
  if (curve) {
    if (curve->t != st.t) throw std::invalid_argument("pricer: curve and state times differ");
    curve->validate(T);
  }
  eval_ = std::make_shared<TransformEvaluator>(kernel, params, T, n_steps, st, std::move(curve));
}

cplx AsianPricer::psi10() const { return (*eval_)(1.0, 0.0); }

QuadratureResult AsianPricer::integrate(const std::function<double(double)>& f) const {
  if (!parallel_) return integrate_semi_infinite(f, quad_);
  const unsigned threads = default_thread_count();
  const BatchIntegrand batch = [&](std::span<const double> nodes, std::span<double> values) {
    parallel_for(nodes.size(), threads, [&](std::size_t i) { values[i] = f(nodes[i]); });
  };
  return integrate_semi_infinite(batch, quad_);
}

PriceDiagnostics AsianPricer::diagnostics(const QuadratureResult& q) const {
  PriceDiagnostics d;
  d.quad_nodes = q.evaluations;
  d.riccati_steps = eval_->steps();
  d.upper_truncation = quad_.upper;
  d.psi10 = psi10();
  d.quad_error = q.error_estimate;
  d.refinements = eval_->refinements();
  return d;
}

AsianPricer::CallPut AsianPricer::fixed_strike(double K) const {
  if (!(K > 0.0) || !std::isfinite(K)) throw std::invalid_argument("pricer: strike must be positive");
  const auto& ev = *eval_;
  const auto& p = ev.params();
  const double T = ev.maturity();
  const double t = ev.state().t;
  const double run = ev.state().running_log_integral;
  // Strike seen by the geometric average of the remaining window.
  const double k_eff = K * std::exp(-run / T);
  const double log_k = std::log(k_eff);
  const auto f = [&](double z) {
    const cplx num = ev(1.0 + I * z, 0.0) - k_eff * ev(I * z, 0.0);
    return std::real(num * std::exp(-I * z * log_k) / (I * z));
  };
  const QuadratureResult q = integrate(f);
  const double pref = std::exp(-p.r * (T - t) + run / T);
  const double mean = psi10().real();
  const double tail = q.value / std::numbers::pi;
  const PriceDiagnostics d = diagnostics(q);
  return {{pref * (0.5 * (mean - k_eff) + tail), d}, {pref * (0.5 * (k_eff - mean) + tail), d}};
}

AsianPricer::CallPut AsianPricer::floating_strike() const {
  const auto& ev = *eval_;
  const auto& p = ev.params();
  const double T = ev.maturity();
  const double t = ev.state().t;
  const double run = ev.state().running_log_integral;
  const double grow = std::exp(run / T);
  const auto f = [&](double z) {
    const cplx num = grow * ev(1.0 + I * z, -I * z) - ev(I * z, 1.0 - I * z);
    return std::real(num * std::exp(I * (z / T) * run) / (I * z));
  };
  const QuadratureResult q = integrate(f);
  const double disc = std::exp(-p.r * (T - t));
  const double spot_fwd = std::exp(p.r * (T - t) + ev.state().log_spot);
  const double avg_fwd = grow * psi10().real();
  const double tail = q.value / std::numbers::pi;
  const PriceDiagnostics d = diagnostics(q);
  return {{disc * (0.5 * (spot_fwd - avg_fwd) + tail), d},
          {disc * (0.5 * (avg_fwd - spot_fwd) + tail), d}};
}

PriceResult price_european_call(const PricingRequest& req, const Kernel& kernel,
                                const ModelParams& params) {
  req.validate();
  if (req.option != OptionType::european_call)
    throw std::invalid_argument("price_european_call: wrong option type");
  params.validate();
  const TransformEvaluator ev(kernel, params, req.T, req.n_steps, req.valuation, req.curve);
  const double K = *req.strike;
  const double log_k = std::log(K);
  const double spot = std::exp(req.valuation.log_spot);
  const double disc = std::exp(-params.r * req.T);
  const cplx norm = ev(0.0, 1.0);
  const auto f = [&](double u) {
    const cplx num = spot * ev(0.0, 1.0 + I * u) / norm - disc * K * ev(0.0, I * u);
    return std::real(std::exp(-I * u * log_k) * num / (I * u));
  };
  QuadratureResult q;
  if (req.parallel) {
    const unsigned threads = default_thread_count();
    const BatchIntegrand batch = [&](std::span<const double> nodes, std::span<double> values) {
      parallel_for(nodes.size(), threads, [&](std::size_t i) { values[i] = f(nodes[i]); });
    };
    q = integrate_semi_infinite(batch, req.quad);
  } else {
    q = integrate_semi_infinite(f, req.quad);
  }
  PriceResult out;
  out.price = 0.5 * (spot - disc * K) + q.value / std::numbers::pi;
  out.diagnostics.quad_nodes = q.evaluations;
  out.diagnostics.riccati_steps = req.n_steps;
  out.diagnostics.upper_truncation = req.quad.upper;
  out.diagnostics.psi10 = norm;
  out.diagnostics.quad_error = q.error_estimate;
  out.diagnostics.refinements = ev.refinements();
  return out;
}

PriceResult price_fixed_asian(const PricingRequest& req, const Kernel& kernel,
                              const ModelParams& params) {
  req.validate();
  if (req.option != OptionType::fixed_asian_call && req.option != OptionType::fixed_asian_put)
    throw std::invalid_argument("price_fixed_asian: wrong option type");
  const AsianPricer pricer(kernel, params, req.T, req.quad, req.n_steps, req.valuation, req.curve,
                           req.parallel);
  const auto cp = pricer.fixed_strike(*req.strike);
  return req.option == OptionType::fixed_asian_call ? cp.call : cp.put;
}

PriceResult price_float_asian(const PricingRequest& req, const Kernel& kernel,
                              const ModelParams& params) {
  req.validate();
  if (req.option != OptionType::float_asian_call && req.option != OptionType::float_asian_put)
    throw std::invalid_argument("price_float_asian: wrong option type");
  const AsianPricer pricer(kernel, params, req.T, req.quad, req.n_steps, req.valuation, req.curve,
                           req.parallel);
  const auto cp = pricer.floating_strike();
  return req.option == OptionType::float_asian_call ? cp.call : cp.put;
}

PriceResult price(const PricingRequest& req, const Kernel& kernel, const ModelParams& params) {
  switch (req.option) {
    case OptionType::european_call:
      return price_european_call(req, kernel, params);
    case OptionType::fixed_asian_call:
    case OptionType::fixed_asian_put:
      return price_fixed_asian(req, kernel, params);
    case OptionType::float_asian_call:
    case OptionType::float_asian_put:
      return price_float_asian(req, kernel, params);
  }
  throw std::invalid_argument("price: unknown option type");
}

ParityResiduals parity_residuals(double T, double K, const Kernel& kernel,
                                 const ModelParams& params, const QuadratureSpec& quad,
                                 std::size_t n_steps) {
  const AsianPricer pricer(kernel, params, T, quad, n_steps);
  const auto fixed = pricer.fixed_strike(K);
  const auto floating = pricer.floating_strike();
  const double disc = std::exp(-params.r * T);
  const double mean = pricer.psi10().real();
  return {std::abs(fixed.call.price - fixed.put.price - disc * (mean - K)),
          std::abs(floating.call.price - floating.put.price - (params.s0 - disc * mean))};
}

}  // namespace vhasian
