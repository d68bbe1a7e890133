#include "vhasian/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "vhasian/errors.hpp"

namespace vhasian {

namespace {

[[noreturn]] void throw_ml_failure(const char* why, MLParams p, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "mittag_leffler(alpha=" << p.alpha << ", beta=" << p.beta << ", z=" << z
     << "): " << why;
  throw NumericError(os.str());
}

double inverse_gamma(double x) {
  // 1/Gamma vanishes at the poles 0, -1, -2, ...
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x < 170.0) return 1.0 / std::tgamma(x);
  return std::exp(-std::lgamma(x));
}

double ml_series(MLParams p, double z, bool strict) {
  const double eps = std::numeric_limits<double>::epsilon();
  double sum = 0.0;
  double largest = 0.0;
  int small_run = 0;
  for (int n = 0; n < 20000; ++n) {
    const double g = p.alpha * n + p.beta;
    double term;
    if (n == 0) {
      term = inverse_gamma(g);
    } else {
      const double log_mag = n * std::log(std::abs(z)) - std::lgamma(g);
      if (log_mag > 700.0) throw_ml_failure("series overflow", p, z);
      if (g < 170.0 && n * std::log(std::abs(z)) < 700.0) {
        term = std::pow(z, n) * inverse_gamma(g);
      } else {
        term = std::exp(log_mag);
        if (z < 0.0 && (n % 2 == 1)) term = -term;
      }
    }
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (std::abs(term) <= eps * std::abs(sum)) {
      // Terms shrink monotonically once n*alpha exceeds log|z|; two quiet
      // terms in a row rule out a transient dip.
      if (++small_run >= 2) {
        if (strict && largest * eps > 1e-10 * std::abs(sum))
          throw_ml_failure("series cancellation exceeds 1e-10 relative", p, z);
        return sum;
      }
    } else {
      small_run = 0;
    }
  }
  throw_ml_failure("series did not converge", p, z);
}

// Contour-integral form for z = -x < 0, 0 < alpha < 1, beta < 1 + alpha:
// E(z) = int_0^inf K(chi) d chi with
// K = chi^{(1-beta)/alpha} exp(-chi^{1/alpha})
//     (chi sin(pi(1-beta)) - z sin(pi(1-beta+alpha)))
//     / (alpha pi (chi^2 - 2 chi z cos(alpha pi) + z^2)).
double ml_integral(MLParams p, double z) {
  using std::numbers::pi;
  const double a = p.alpha;
  const double b = p.beta;
  const double s1 = std::sin(pi * (1.0 - b));
  const double s2 = std::sin(pi * (1.0 - b + a));
  const double c = std::cos(a * pi);
  const double expo = (1.0 - b) / a;
  auto kernel = [&](double chi) {
    if (chi <= 0.0) return 0.0;
    const double num = std::pow(chi, expo) * std::exp(-std::pow(chi, 1.0 / a)) *
                       (chi * s1 - z * s2);
    const double den = a * pi * (chi * chi - 2.0 * chi * z * c + z * z);
    return num / den;
  };
  // The denominator peaks near chi = |z| as alpha -> 1; splitting there puts
  // the peak on an endpoint where the double-exponential rules cluster nodes.
  const double x = -z;
  double err_left = 0.0;
  double err_right = 0.0;
  double l1_left = 0.0;
  double l1_right = 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  const double left = ts.integrate(kernel, 0.0, x, 1e-15, &err_left, &l1_left);
  boost::math::quadrature::exp_sinh<double> es;
  const double right =
      es.integrate([&](double u) { return kernel(x + u); }, 0.0,
                   std::numeric_limits<double>::infinity(), 1e-15, &err_right, &l1_right);
  const double value = left + right;
  if (!std::isfinite(value) || err_left + err_right > 1e-12 * (l1_left + l1_right) + 1e-300)
    throw_ml_failure("integral representation did not converge", p, z);
  return value;
}

}  // namespace

double mittag_leffler(MLParams p, double z) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw std::invalid_argument("mittag_leffler: alpha and beta must be positive");
  if (!std::isfinite(z)) throw std::invalid_argument("mittag_leffler: z must be finite");
  if (z == 0.0) return inverse_gamma(p.beta);
  if (p.alpha == 1.0 && p.beta == 1.0) return std::exp(z);
  const bool integral_ok = p.alpha < 1.0 && p.beta < 1.0 + p.alpha;
  if (z < -1.0 && integral_ok) return ml_integral(p, z);
  return ml_series(p, z, z < 0.0);
}

QuadratureRule parse_quadrature_rule(const std::string& name) {
  if (name == "adaptive") return QuadratureRule::adaptive;
  if (name == "fixed-panel" || name == "fixed_panel") return QuadratureRule::fixed_panel;
  throw std::invalid_argument("unknown quadrature rule '" + name + "'");
}

std::string to_string(QuadratureRule rule) {
  return rule == QuadratureRule::adaptive ? "adaptive" : "fixed-panel";
}

void QuadratureSpec::validate() const {
  if (!(lower >= 0.0) || !(upper > lower) || !std::isfinite(upper))
    throw std::invalid_argument("quadrature: need 0 <= lower < upper < inf");
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be positive");
  if (panels < 1) throw std::invalid_argument("quadrature: panels must be positive");
  if (max_evaluations < 15) throw std::invalid_argument("quadrature: node budget too small");
}

namespace {

constexpr std::size_t kNodesPerPanel = 15;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

class GaussKronrod15 {
 public:
  GaussKronrod15() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& x = gauss_kronrod<double, 15>::abscissa();
    const auto& wk = gauss_kronrod<double, 15>::weights();
    const auto& wg = gauss<double, 7>::weights();
    std::copy(x.begin(), x.end(), abscissa_.begin());
    std::copy(wk.begin(), wk.end(), kronrod_.begin());
    // The 7-point Gauss nodes are the even-indexed Kronrod abscissae.
    for (std::size_t i = 0; i < 4; ++i) gauss_[2 * i] = wg[i];
  }

  void nodes(double a, double b, std::span<double> out) const {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    out[0] = c;
    for (std::size_t i = 1; i < 8; ++i) {
      out[2 * i - 1] = c - h * abscissa_[i];
      out[2 * i] = c + h * abscissa_[i];
    }
  }

  Panel combine(double a, double b, std::span<const double> f) const {
    const double h = 0.5 * (b - a);
    double k = kronrod_[0] * f[0];
    double g = gauss_[0] * f[0];
    for (std::size_t i = 1; i < 8; ++i) {
      const double pair = f[2 * i - 1] + f[2 * i];
      k += kronrod_[i] * pair;
      g += gauss_[i] * pair;
    }
    return Panel{a, b, k * h, std::abs((k - g) * h)};
  }

 private:
  std::array<double, 8> abscissa_{};
  std::array<double, 8> kronrod_{};
  std::array<double, 8> gauss_{};
};

const GaussKronrod15& gk15() {
  static const GaussKronrod15 rule;
  return rule;
}

std::vector<Panel> evaluate_panels(const BatchIntegrand& f,
                                   std::span<const std::pair<double, double>> bounds) {
  const auto& rule = gk15();
  std::vector<double> nodes(bounds.size() * kNodesPerPanel);
  for (std::size_t p = 0; p < bounds.size(); ++p)
    rule.nodes(bounds[p].first, bounds[p].second,
               std::span(nodes).subspan(p * kNodesPerPanel, kNodesPerPanel));
  std::vector<double> values(nodes.size());
  f(nodes, values);
  std::vector<Panel> out;
  out.reserve(bounds.size());
  for (std::size_t p = 0; p < bounds.size(); ++p) {
    const auto fv = std::span<const double>(values).subspan(p * kNodesPerPanel, kNodesPerPanel);
    for (double v : fv)
      if (!std::isfinite(v)) throw NumericError("quadrature: integrand returned a non-finite value");
    out.push_back(rule.combine(bounds[p].first, bounds[p].second, fv));
  }
  return out;
}

// Sum in ascending-abscissa order so the total does not depend on the
// order panels were refined in.
QuadratureResult summarize(std::vector<Panel> panels, std::size_t evaluations) {
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult r;
  for (const auto& p : panels) {
    r.value += p.value;
    r.error_estimate += p.error;
  }
  r.evaluations = evaluations;
  return r;
}

}  // namespace

QuadratureResult integrate_semi_infinite(const BatchIntegrand& f, const QuadratureSpec& spec) {
  spec.validate();
  const double width = (spec.upper - spec.lower) / spec.panels;
  std::vector<std::pair<double, double>> bounds;
  bounds.reserve(static_cast<std::size_t>(spec.panels));
  for (int i = 0; i < spec.panels; ++i) {
    const double a = spec.lower + i * width;
    const double b = (i + 1 == spec.panels) ? spec.upper : spec.lower + (i + 1) * width;
    bounds.emplace_back(a, b);
  }
  auto initial = evaluate_panels(f, bounds);
  std::size_t evaluations = initial.size() * kNodesPerPanel;
  if (spec.rule == QuadratureRule::fixed_panel) return summarize(std::move(initial), evaluations);

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue(PanelOrder{}, initial);
  double total_error = 0.0;
  for (const auto& p : initial) total_error += p.error;

  while (total_error > spec.tol) {
    if (evaluations + 2 * kNodesPerPanel > spec.max_evaluations) {
      std::ostringstream os;
      os << "quadrature: tolerance " << spec.tol << " not reached within "
         << spec.max_evaluations << " nodes (estimate " << total_error << ")";
      throw AccuracyError(os.str(), total_error);
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const std::pair<double, double> halves[] = {{worst.a, mid}, {mid, worst.b}};
    const auto children = evaluate_panels(f, halves);
    evaluations += 2 * kNodesPerPanel;
    total_error -= worst.error;
    for (const auto& c : children) {
      total_error += c.error;
      queue.push(c);
    }
    // Guard the running sum against cancellation drift.
    if (total_error < 0.0) total_error = 0.0;
  }

  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  auto result = summarize(std::move(all), evaluations);
  return result;
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec) {
  BatchIntegrand batch = [&f](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  };
  return integrate_semi_infinite(batch, spec);
}

}  // namespace vhasian
