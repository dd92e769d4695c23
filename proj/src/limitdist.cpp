#include "qwalk/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {

LimitDensity make_limit_density(const Coin& coin, const QubitState& state) {
  if (!coin.nondegenerate()) {
    throw Error(ErrorKind::CoinDegenerate, "limit density requires abcd != 0");
  }
  LimitDensity ld;
  ld.abs_a = coin.abs_a();
  ld.abs_b = coin.abs_b();
  ld.drift = std::norm(state.alpha()) - std::norm(state.beta()) +
             cross_term(coin, state) / std::norm(coin.a());
  // 1 - drift x must stay nonnegative on the support.
  constexpr int kGrid = 10000;
  for (int i = 1; i <= kGrid; ++i) {
    const double x = ld.abs_a * (2.0 * i / (kGrid + 1) - 1.0);
    if (1.0 - ld.drift * x < -kInvariantTol) {
      throw Error(ErrorKind::InvalidDensity, "limit density negative at x=" + std::to_string(x));
    }
  }
  return ld;
}

double density_at(const LimitDensity& ld, double x) {
  if (!(std::abs(x) < ld.abs_a)) return 0.0;
  return ld.abs_b * (1.0 - ld.drift * x) /
         (std::numbers::pi * (1.0 - x * x) * std::sqrt(ld.abs_a * ld.abs_a - x * x));
}

QuadratureResult integral_falpha(const LimitDensity& ld, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::BadOrder, "order must be >= 0");
  }
  if (alpha >= 2.0) {
    throw Error(ErrorKind::DivergentIntegral,
                "f^alpha is not integrable at the endpoints for alpha >= 2");
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  // theta = (pi/2) t; cos(theta) = sin((pi/2) (1 - |t|)).
  auto integrand = [&](double t, double gap) {
    const double cos_theta = std::sin(half_pi * gap);
    const double sin_theta = std::copysign(std::cos(half_pi * gap), t);
    const double x = ld.abs_a * sin_theta;
    const double smooth = std::max(0.0, ld.abs_b * (1.0 - ld.drift * x) /
                                            (std::numbers::pi * (1.0 - x * x)));
    const double edge = ld.abs_a * cos_theta;
    double value = 0.0;
    if (alpha == 0.0) {
      value = edge;
    } else if (smooth > 0.0) {
      value = std::pow(smooth, alpha) * std::pow(edge, 1.0 - alpha);
    }
    return half_pi * value;
  };
  TanhSinhOptions options;
  options.tolerance = kQuadratureTarget;
  const auto result = tanh_sinh(integrand, options);
  if (!(result.error <= kQuadratureFailure) || !std::isfinite(result.value)) {
    throw Error(ErrorKind::NonConvergedQuadrature,
                "error estimate " + std::to_string(result.error) + " at alpha=" +
                    std::to_string(alpha));
  }
  return result;
}

double renyi_limit(const LimitDensity& ld, double alpha) {
  check_finite_order(alpha);
  return std::log2(integral_falpha(ld, alpha).value) / (1.0 - alpha);
}

double tsallis_limit_const(const LimitDensity& ld, double alpha) {
  check_finite_order(alpha);
  return (integral_falpha(ld, alpha).value - 1.0) / (1.0 - alpha);
}

double conditional_renyi_limit(Variant variant, const Coin& coin, const EnsemblePrior& prior,
                               double alpha) {
  check_finite_order(alpha);
  if (variant == Variant::A && alpha == 0.0) {
    throw Error(ErrorKind::VariantDomain, "Arimoto variant is undefined at order 0");
  }
  std::vector<double> limits;
  limits.reserve(prior.size());
  for (const auto& e : prior.entries()) {
    limits.push_back(renyi_limit(make_limit_density(coin, e.state), alpha));
  }
  return conditional_renyi_from_values(variant, prior.weights(), limits, alpha);
}

}  // namespace qwalk
