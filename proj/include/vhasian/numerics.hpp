#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>

namespace vhasian {

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MLParams {
  double alpha;
  double beta;
};

/// E_{alpha,beta}(z) = sum_n z^n / Gamma(alpha n + beta) for real z.
///
/// Small |z| and positive z use the power series. Negative z with
/// 0 < alpha < 1 and beta < 1 + alpha switches to the contour-integral
/// representation on [0, inf), which stays accurate where the alternating
/// series cancels catastrophically. Relative accuracy is ~1e-13 for
/// |z| <= 50 in that regime. Outside it (alpha >= 1 with large negative z)
/// the series is used only while its cancellation stays below 1e-10
/// relative; otherwise NumericError is thrown.
double mittag_leffler(MLParams p, double z);

enum class QuadratureRule { adaptive, fixed_panel };

QuadratureRule parse_quadrature_rule(const std::string& name);
std::string to_string(QuadratureRule rule);

struct QuadratureSpec {
  double lower = 1e-8;
  double upper = 100.0;
  QuadratureRule rule = QuadratureRule::adaptive;
  /// Initial panel count (adaptive) or total panel count (fixed-panel).
  int panels = 32;
  double tol = 1e-9;
  /// Node budget for the adaptive rule.
  std::size_t max_evaluations = 200000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Batched integrand: fills values[i] = f(nodes[i]). Lets callers evaluate
/// expensive nodes concurrently or memoize them.
using BatchIntegrand =
    std::function<void(std::span<const double> nodes, std::span<double> values)>;

/// Approximates the integral of f over [spec.lower, spec.upper].
///
/// adaptive: globally adaptive 15-point Gauss-Kronrod, starting from
/// spec.panels equal panels and bisecting the panel with the largest
/// |K15 - G7| until the summed estimate is <= tol. Throws AccuracyError if
/// the node budget runs out first.
/// fixed_panel: spec.panels equal panels, each integrated with the same
/// Gauss-Kronrod pair; the error estimate is reported, never enforced.
/// Node positions depend only on spec, so results are bit-reproducible.
QuadratureResult integrate_semi_infinite(const BatchIntegrand& f, const QuadratureSpec& spec);

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         const QuadratureSpec& spec);

}  // namespace vhasian
