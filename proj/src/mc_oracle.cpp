#include "vhasian/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>

#include "vhasian/parallel.hpp"

namespace vhasian {

namespace {

constexpr std::size_t kBlockPaths = 1024;

void validate_sim_params(const ModelParams& params) {
  if (!(params.sigma >= 0.0)) throw std::invalid_argument("simulation: sigma must be >= 0");
  ModelParams probe = params;
  if (probe.sigma == 0.0) probe.sigma = 1.0;
  probe.validate();
}

/// int_{t_j}^{t_{j+1}} K(t_n - s) ds for n - j = k, k = 1..n_time.
std::vector<double> kernel_weights(const Kernel& kernel, double dt, std::size_t n_time) {
  std::vector<double> w(n_time + 1, 0.0);
  if (kernel.is_classical()) {
    std::fill(w.begin() + 1, w.end(), dt);
    return w;
  }
  const double a = kernel.alpha();
  const double scale = std::pow(dt, a) / std::tgamma(a + 1.0);
  for (std::size_t k = 1; k <= n_time; ++k)
    w[k] = scale * (std::pow(static_cast<double>(k), a) - std::pow(static_cast<double>(k - 1), a));
  return w;
}

/// One block of paths in time-major layout: x[i * paths + p].
struct Block {
  std::size_t paths = 0;
  std::vector<double> log_spot;
  std::vector<double> variance;
};

class Simulator {
 public:
  Simulator(const Kernel& kernel, const ModelParams& params, double T, const SimSpec& spec)
      : kernel_(kernel), p_(params), spec_(spec), dt_(T / static_cast<double>(spec.n_time)),
        weights_(kernel_weights(kernel, dt_, spec.n_time)) {}

  std::size_t block_count() const { return (spec_.n_paths + kBlockPaths - 1) / kBlockPaths; }

  std::size_t block_size(std::size_t b) const {
    return std::min(kBlockPaths, spec_.n_paths - b * kBlockPaths);
  }

  Block run(std::size_t b) const {
    const std::size_t m = block_size(b);
    const std::size_t nt = spec_.n_time;
    Block out;
    out.paths = m;
    out.log_spot.assign((nt + 1) * m, std::log(p_.s0));
    out.variance.assign((nt + 1) * m, p_.v0);

    std::seed_seq seq{static_cast<std::uint32_t>(spec_.seed), static_cast<std::uint32_t>(spec_.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal;

    const std::size_t fresh = spec_.antithetic ? m / 2 : m;
    const double sqdt = std::sqrt(dt_);
    const double rho = p_.rho;
    const double rho_perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    std::vector<double> zv(m), zp(m);
    // Volterra drive per step: kappa (theta - v^+) + sigma sqrt(v^+) dB / dt.
    std::vector<double> drive(nt * m);
    std::vector<double> running(m, 0.0);

    for (std::size_t i = 0; i < nt; ++i) {
      for (std::size_t q = 0; q < fresh; ++q) {
        zv[q] = normal(gen);
        zp[q] = normal(gen);
      }
      if (spec_.antithetic) {
        for (std::size_t q = 0; q < fresh; ++q) {
          zv[fresh + q] = -zv[q];
          zp[fresh + q] = -zp[q];
        }
      }
      const double* v = &out.variance[i * m];
      const double* ls = &out.log_spot[i * m];
      double* ls_next = &out.log_spot[(i + 1) * m];
      double* d = &drive[i * m];
      for (std::size_t q = 0; q < m; ++q) {
        const double vp = std::max(v[q], 0.0);
        const double sv = std::sqrt(vp);
        const double db = sqdt * zv[q];
        d[q] = p_.kappa * (p_.theta - vp) + p_.sigma * sv * db / dt_;
        ls_next[q] = ls[q] + (p_.r - 0.5 * vp) * dt_ + sv * (rho * db + rho_perp * sqdt * zp[q]);
      }
      double* v_next = &out.variance[(i + 1) * m];
      if (kernel_.is_classical()) {
        for (std::size_t q = 0; q < m; ++q) {
          running[q] += dt_ * d[q];
          v_next[q] = p_.v0 + running[q];
        }
      } else {
        std::fill(v_next, v_next + m, p_.v0);
        for (std::size_t j = 0; j <= i; ++j) {
          const double w = weights_[i + 1 - j];
          const double* dj = &drive[j * m];
          for (std::size_t q = 0; q < m; ++q) v_next[q] += w * dj[q];
        }
      }
    }
    return out;
  }

 private:
  Kernel kernel_;
  ModelParams p_;
  SimSpec spec_;
  double dt_;
  std::vector<double> weights_;
};

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0.0) return b;
  if (b.n == 0.0) return a;
  Moments c;
  c.n = a.n + b.n;
  const double delta = b.mean - a.mean;
  c.mean = a.mean + delta * b.n / c.n;
  c.m2 = a.m2 + b.m2 + delta * delta * a.n * b.n / c.n;
  return c;
}

Moments pairwise(std::span<const Moments> xs) {
  if (xs.empty()) return {};
  if (xs.size() == 1) return xs[0];
  const std::size_t half = xs.size() / 2;
  return merge(pairwise(xs.first(half)), pairwise(xs.subspan(half)));
}

}  // namespace

void SimSpec::validate() const {
  if (n_paths < 2) throw std::invalid_argument("simulation: n_paths must be >= 2");
  if (n_time < 8) throw std::invalid_argument("simulation: n_time must be >= 8");
  if (antithetic && n_paths % 2 != 0)
    throw std::invalid_argument("simulation: antithetic sampling needs an even path count");
}

PathEnsemble simulate_paths(const Kernel& kernel, const ModelParams& params, double T,
                            const SimSpec& spec) {
  spec.validate();
  validate_sim_params(params);
  if (!(T > 0.0)) throw std::invalid_argument("simulation: T must be positive");
  const Simulator sim(kernel, params, T, spec);
  const std::size_t nt = spec.n_time;
  PathEnsemble e;
  e.T = T;
  e.n_paths = spec.n_paths;
  e.n_time = nt;
  e.log_spot.resize(spec.n_paths * (nt + 1));
  e.variance.resize(spec.n_paths * (nt + 1));
  parallel_for(sim.block_count(), default_thread_count(), [&](std::size_t b) {
    const Block blk = sim.run(b);
    const std::size_t first = b * kBlockPaths;
    for (std::size_t q = 0; q < blk.paths; ++q)
      for (std::size_t i = 0; i <= nt; ++i) {
        e.log_spot[(first + q) * (nt + 1) + i] = blk.log_spot[i * blk.paths + q];
        e.variance[(first + q) * (nt + 1) + i] = blk.variance[i * blk.paths + q];
      }
  });
  return e;
}

McEstimate mc_price(const PricingRequest& req, const Kernel& kernel, const ModelParams& params,
                    const SimSpec& spec) {
  req.validate();
  spec.validate();
  validate_sim_params(params);
  if (req.valuation.t != 0.0) throw std::invalid_argument("mc_price: only t = 0 requests");
  const double T = req.T;
  const double K = req.strike.value_or(0.0);
  const std::function<double(double, double)> payoff = [&]() -> std::function<double(double, double)> {
    switch (req.option) {
      case OptionType::european_call:
        return [K](double st, double) { return std::max(st - K, 0.0); };
      case OptionType::fixed_asian_call:
        return [K](double, double g) { return std::max(g - K, 0.0); };
      case OptionType::fixed_asian_put:
        return [K](double, double g) { return std::max(K - g, 0.0); };
      case OptionType::float_asian_call:
        return [](double st, double g) { return std::max(st - g, 0.0); };
      case OptionType::float_asian_put:
        return [](double st, double g) { return std::max(g - st, 0.0); };
    }
    throw std::invalid_argument("mc_price: unknown option type");
  }();

  const Simulator sim(kernel, params, T, spec);
  const std::size_t nt = spec.n_time;
  const double disc = std::exp(-params.r * T);
  std::vector<Moments> per_block(sim.block_count());
  parallel_for(sim.block_count(), default_thread_count(), [&](std::size_t b) {
    const Block blk = sim.run(b);
    const std::size_t m = blk.paths;
    std::vector<double> value(m);
    for (std::size_t q = 0; q < m; ++q) {
      double acc = 0.5 * (blk.log_spot[q] + blk.log_spot[nt * m + q]);
      for (std::size_t i = 1; i < nt; ++i) acc += blk.log_spot[i * m + q];
      const double g = std::exp(acc / static_cast<double>(nt));
      value[q] = disc * payoff(std::exp(blk.log_spot[nt * m + q]), g);
    }
    // Antithetic partners sit half a block apart; average them into one sample.
    const std::size_t samples = spec.antithetic ? m / 2 : m;
    Moments mo;
    for (std::size_t q = 0; q < samples; ++q) {
      const double x = spec.antithetic ? 0.5 * (value[q] + value[q + samples]) : value[q];
      mo.n += 1.0;
      const double delta = x - mo.mean;
      mo.mean += delta / mo.n;
      mo.m2 += delta * (x - mo.mean);
    }
    per_block[b] = mo;
  });
  const Moments total = pairwise(per_block);
  McEstimate est;
  est.estimate = total.mean;
  est.std_error = total.n > 1.0 ? std::sqrt(total.m2 / (total.n - 1.0) / total.n) : 0.0;
  return est;
}

}  // namespace vhasian
