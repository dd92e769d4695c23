#include "qwalk/quadrature.hpp"

namespace qwalk {

namespace {

// Sum of w(u) * [g(t(u)) + g(-t(u))] over u = offset + j * stride, u > 0.
double half_line_sum(const std::function<double(double, double)>& integrand, double offset,
                     double stride, double max_abscissa) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  double sum = 0.0;
  for (int j = 0;; ++j) {
    const double u = offset + j * stride;
    if (u > max_abscissa) break;
    const double s = half_pi * std::sinh(u);
    const double e = std::exp(-2.0 * s);
    const double t = (1.0 - e) / (1.0 + e);        // tanh(s)
    const double gap = 2.0 * e / (1.0 + e);        // 1 - tanh(s)
    const double weight = half_pi * std::cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (weight == 0.0) break;
    sum += weight * (integrand(t, gap) + integrand(-t, gap));
  }
  return sum;
}

}  // namespace

QuadratureResult tanh_sinh(const std::function<double(double, double)>& integrand,
                           const TanhSinhOptions& options) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  double h = options.initial_step;
  // Level 0: the centre node plus every multiple of h.
  double raw = half_pi * integrand(0.0, 1.0) +
               half_line_sum(integrand, h, h, options.max_abscissa);
  double estimate = h * raw;
  QuadratureResult result{estimate, std::abs(estimate), 1};
  for (int level = 1; level < options.max_levels; ++level) {
    // Halving the step only adds the odd multiples of the new step.
    raw += half_line_sum(integrand, h / 2.0, h, options.max_abscissa);
    h /= 2.0;
    const double next = h * raw;
    result = {next, std::abs(next - estimate), level + 1};
    estimate = next;
    if (result.levels >= options.min_levels && result.error < options.tolerance) break;
  }
  return result;
}

}  // namespace qwalk
