#pragma once

#include "qwalk/coin.hpp"
#include "qwalk/entropy.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

/// Weak-limit density of X_n / n,
///
///   f(x) = |b| (1 - drift x) / (pi (1 - x^2) sqrt(|a|^2 - x^2)),  |x| < |a|,
///
/// with drift = |alpha|^2 - |beta|^2 + 2 Re(a alpha conj(b beta)) / |a|^2.
struct LimitDensity {
  double abs_a = 0.0;
  double abs_b = 0.0;
  double drift = 0.0;
};

/// Absolute error target of integral_falpha; estimates above
/// kQuadratureFailure raise NonConvergedQuadrature.
inline constexpr double kQuadratureTarget = 1e-10;
inline constexpr double kQuadratureFailure = 1e-8;

LimitDensity make_limit_density(const Coin& coin, const QubitState& state);

double density_at(const LimitDensity& ld, double x);

/// Integral of f^alpha over (-|a|, |a|) for 0 <= alpha < 2, after the
/// substitution x = |a| sin(theta). alpha = 1 is allowed here and gives the
/// normalization of f.
QuadratureResult integral_falpha(const LimitDensity& ld, double alpha);

/// (1/(1-alpha)) log2 of integral_falpha.
double renyi_limit(const LimitDensity& ld, double alpha);

/// (integral_falpha - 1) / (1 - alpha).
double tsallis_limit_const(const LimitDensity& ld, double alpha);

/// Limit of R^variant(X_n|Y) - log2(n/2): the conditional form applied to the
/// per-state renyi_limit values.
double conditional_renyi_limit(Variant variant, const Coin& coin, const EnsemblePrior& prior,
                               double alpha);

}  // namespace qwalk
