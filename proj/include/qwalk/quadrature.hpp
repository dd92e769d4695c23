#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace qwalk {

struct QuadratureResult {
  double value = 0.0;
  /// |I(h) - I(2h)| for the last two refinement levels.
  double error = 0.0;
  int levels = 0;
};

struct TanhSinhOptions {
  double tolerance = 1e-10;
  int max_levels = 12;
  int min_levels = 3;
  double initial_step = 0.5;
  /// Abscissa range in the transformed variable; at 6.0 the nodes come within
  /// ~1e-274 of the endpoints.
  double max_abscissa = 6.0;
};

/// Tanh-sinh (double exponential) rule on (-1, 1). The integrand receives the
/// node t and its distance to the nearer endpoint 1 - |t|, computed without
/// cancellation, so integrands with endpoint singularities can be evaluated
/// accurately right up to the boundary.
///
/// The step halves each level until two successive levels agree within
/// `tolerance` or `max_levels` is reached.
QuadratureResult tanh_sinh(const std::function<double(double t, double gap)>& integrand,
                           const TanhSinhOptions& options = {});

}  // namespace qwalk
