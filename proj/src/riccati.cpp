#include "vhasian/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "vhasian/errors.hpp"

namespace vhasian {

namespace {
constexpr double kDomainSlack = 1e-12;
constexpr double kSignTolerance = 1e-10;
}  // namespace

void TransformArg::validate() const {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::domain_error("transform: T must be positive");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()) || !std::isfinite(w.real()) ||
      !std::isfinite(w.imag()))
    throw std::domain_error("transform: arguments must be finite");
  const double rs = s.real();
  const double rw = w.real();
  if (rs < -kDomainSlack || rw < -kDomainSlack || rs + rw > 1.0 + kDomainSlack) {
    std::ostringstream os;
    os << "transform: (s, w) = (" << s << ", " << w
       << ") outside Re s >= 0, Re w >= 0, Re s + Re w <= 1";
    throw std::domain_error(os.str());
  }
}

cplx phi1(const TransformArg& arg, double tau) { return arg.s * (tau / arg.T) + arg.w; }

cplx q_form(const ModelParams& params, cplx f1, cplx f2) {
  const double sig = params.sigma;
  return 0.5 * (f1 * f1 - f1) + params.rho * sig * f1 * f2 + 0.5 * sig * sig * f2 * f2;
}

namespace {

// (k+1)^p - k^p for k >= 1 without cancellation: k^p expm1(p log1p(1/k)).
double forward_difference(double k, double p) {
  if (k == 0.0) return 1.0;
  return std::pow(k, p) * std::expm1(p * std::log1p(1.0 / k));
}

// (k+2)^p - 2(k+1)^p + k^p via the centered form around m = k+1.
double second_difference(double k, double p) {
  if (k == 0.0) return std::pow(2.0, p) - 2.0;
  const double m = k + 1.0;
  const double x = 1.0 / m;
  return std::pow(m, p) * (std::expm1(p * std::log1p(x)) + std::expm1(p * std::log1p(-x)));
}

}  // namespace

AdamsWeights::AdamsWeights(double alpha, std::size_t n_steps)
    : alpha_(alpha), n_(n_steps), predictor_(n_steps), corrector_(n_steps),
      corrector_start_(n_steps) {
  const double a = alpha;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double kk = static_cast<double>(k);
    predictor_[k] = forward_difference(kk, a);
    corrector_[k] = second_difference(kk, a + 1.0);
    corrector_start_[k] = std::pow(kk, a + 1.0) - (kk - a) * std::pow(kk + 1.0, a);
  }
}

std::shared_ptr<const AdamsWeights> AdamsWeights::get(double alpha, std::size_t n_steps) {
  static std::mutex mutex;
  static std::map<std::pair<double, std::size_t>, std::shared_ptr<const AdamsWeights>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{alpha, n_steps}];
  if (!slot) slot = std::make_shared<const AdamsWeights>(alpha, n_steps);
  return slot;
}

namespace {

[[noreturn]] void throw_divergence(std::size_t node, double t) {
  std::ostringstream os;
  os << "riccati: non-finite phi2 at node " << node << " (t = " << t << ")";
  throw DivergenceError(os.str(), node);
}

void check_node(const RiccatiPath& path, std::size_t i) {
  const cplx v = path.phi2[i];
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_divergence(i, path.time(i));
  if (v.real() > kSignTolerance) {
    std::ostringstream os;
    os << "riccati: Re(phi2) = " << v.real() << " > 0 at node " << i
       << " for (s, w) = (" << path.arg.s << ", " << path.arg.w << ")";
    throw InvariantError(os.str());
  }
}

// Right-hand side F = Q(phi1, phi2) - kappa phi2 of the Volterra equation.
cplx rhs(const RiccatiPath& path, std::size_t i, cplx value) {
  return q_form(path.params, path.phi1_at(i), value) - path.params.kappa * value;
}

// K = 1: rectangle predictor and trapezoid corrector reduce to running sums.
void solve_classical(RiccatiPath& path) {
  const std::size_t n = path.steps();
  const double h = path.step;
  cplx f_prev = rhs(path, 0, path.phi2[0]);
  cplx sum_all = f_prev;        // sum_{j=0}^{m} F_j
  cplx sum_interior = 0.0;      // sum_{j=1}^{m} F_j
  const cplx f0 = f_prev;
  for (std::size_t m = 0; m < n; ++m) {
    const cplx predicted = h * sum_all;
    const cplx f_pred = rhs(path, m + 1, predicted);
    path.phi2[m + 1] = 0.5 * h * (f_pred + f0 + 2.0 * sum_interior);
    check_node(path, m + 1);
    const cplx f_new = rhs(path, m + 1, path.phi2[m + 1]);
    sum_all += f_new;
    sum_interior += f_new;
  }
}

void solve_fractional(RiccatiPath& path, const AdamsWeights& w) {
  const std::size_t n = path.steps();
  const double a = w.alpha();
  const double ha = std::pow(path.step, a);
  const double pred_scale = ha / std::tgamma(a + 1.0);
  const double corr_scale = ha / std::tgamma(a + 2.0);

  // Split storage keeps the history dot products vectorizable.
  std::vector<double> f_re(n + 1), f_im(n + 1);
  // Weights reversed so that lag (m - j) is read in ascending j.
  std::vector<double> pred_rev(n), corr_rev(n);
  for (std::size_t k = 0; k < n; ++k) {
    pred_rev[n - 1 - k] = w.predictor(k);
    corr_rev[n - 1 - k] = w.corrector(k);
  }

  const cplx f0 = rhs(path, 0, path.phi2[0]);
  f_re[0] = f0.real();
  f_im[0] = f0.imag();
  for (std::size_t m = 0; m < n; ++m) {
    // Predictor: sum_{j=0}^{m} b_{m-j} F_j. Corrector history:
    // a0_m F_0 + sum_{j=1}^{m} c_{m-j} F_j, with c at lags 0..m-1.
    const double* pb = pred_rev.data() + (n - 1 - m);
    const double* pc = corr_rev.data() + (n - m);  // pc[j] = c_{m-j}, j >= 1
    double p_re = pb[0] * f_re[0];
    double p_im = pb[0] * f_im[0];
    double c_re = 0.0;
    double c_im = 0.0;
    for (std::size_t j = 1; j <= m; ++j) {
      p_re += pb[j] * f_re[j];
      p_im += pb[j] * f_im[j];
      c_re += pc[j - 1] * f_re[j];
      c_im += pc[j - 1] * f_im[j];
    }
    const double a0 = w.corrector_start(m);
    c_re += a0 * f_re[0];
    c_im += a0 * f_im[0];

    const cplx predicted = pred_scale * cplx(p_re, p_im);
    const cplx f_pred = rhs(path, m + 1, predicted);
    path.phi2[m + 1] = corr_scale * (f_pred + cplx(c_re, c_im));
    check_node(path, m + 1);
    const cplx f_new = rhs(path, m + 1, path.phi2[m + 1]);
    f_re[m + 1] = f_new.real();
    f_im[m + 1] = f_new.imag();
  }
}

}  // namespace

RiccatiPath solve_phi2(const TransformArg& arg, const Kernel& kernel, const ModelParams& params,
                       std::size_t n_steps, std::optional<double> horizon) {
  arg.validate();
  params.validate();
  if (n_steps < 2) throw std::invalid_argument("solve_phi2: n_steps must be >= 2");
  const double end = horizon.value_or(arg.T);
  if (!(end > 0.0) || end > arg.T * (1.0 + 1e-12))
    throw std::domain_error("solve_phi2: horizon must lie in (0, T]");

  RiccatiPath path{arg, kernel, params, end, end / static_cast<double>(n_steps),
                   std::vector<cplx>(n_steps + 1, cplx(0.0, 0.0))};
  if (kernel.is_classical()) {
    solve_classical(path);
  } else {
    solve_fractional(path, *AdamsWeights::get(kernel.alpha(), n_steps));
  }
  return path;
}

double check_resolvent_form(const RiccatiPath& path) {
  if (!path.kernel.is_classical())
    throw std::invalid_argument("check_resolvent_form: needs the classical kernel");
  // (1/kappa) R(t) = e^{-kappa t}; the trapezoid convolution obeys
  // I_i = e^{-kappa h} I_{i-1} + h/2 (e^{-kappa h} Q_{i-1} + Q_i).
  const double h = path.step;
  const double decay = std::exp(-path.params.kappa * h);
  cplx conv = 0.0;
  cplx q_prev = path.q_at(0);
  double worst = std::abs(path.phi2[0]);
  for (std::size_t i = 1; i < path.phi2.size(); ++i) {
    const cplx q = path.q_at(i);
    conv = decay * conv + 0.5 * h * (decay * q_prev + q);
    worst = std::max(worst, std::abs(path.phi2[i] - conv));
    q_prev = q;
  }
  return worst;
}

}  // namespace vhasian
