#pragma once

#include <cstdint>

#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/scaled_real.hpp"

namespace qwalk {

/// Jacobi polynomial P_n^{(nu,mu)}(x), orthogonal on [-1, 1] with weight
/// (1-x)^nu (1+x)^mu. Evaluated by the three-term recurrence in the degree.
double jacobi(std::int64_t n, double nu, double mu, double x);

/// Same recurrence carried in the ScaledReal domain; usable for degrees and
/// parameters where the plain value leaves double range.
ScaledReal jacobi_scaled(std::int64_t n, double nu, double mu, double x);

/// Terminating 2F1(-n, b; c; z), summed term by term (n+1 terms) in
/// descending order of magnitude.
double hypergeom2f1_poly(std::int64_t n, double b, double c, double z);

/// Jacobi polynomial through its hypergeometric representation
///
///   P_n^{(nu,mu)}(x) = Gamma(n+nu+1) / (Gamma(n+1) Gamma(nu+1))
///                      * 2F1(-n, n+nu+mu+1; nu+1; (1-x)/2)
///
/// with the prefactor taken through lgamma.
double jacobi_via_hypergeom(std::int64_t n, double nu, double mu, double x);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the binomial-sum / Jacobi identities for step count n and
/// index k:
///
///   which = 1:  sum_g w^(g-1) (1/g) C(k-1,g-1) C(n-k-1,g-1)
///                 = |a|^(-2(k-1)) / k * P_{k-1}^{(1,n-2k)}(2|a|^2 - 1)
///   which = 0:  sum_g w^(g-1) C(k-1,g-1) C(n-k-1,g-1)
///                 = |a|^(-2(k-1)) * P_{k-1}^{(0,n-2k)}(2|a|^2 - 1)
///
/// where w = -|b|^2/|a|^2. The left side is the direct sum in long double.
IdentitySides sum_identity_check(std::int64_t k, std::int64_t n, const Coin& coin,
                                 int which);

struct ExtremeProbs {
  double right = 0.0;  // P(X_n = +n)
  double left = 0.0;   // P(X_n = -n)
};

ExtremeProbs prob_extremes(const Coin& coin, const QubitState& state, std::int64_t n);

struct MirrorProbs {
  double plus = 0.0;   // P(X_n = +(n-2k))
  double minus = 0.0;  // P(X_n = -(n-2k))
};

/// Probabilities at +-(n-2k), 1 <= k <= n/2, from the closed Jacobi form in
/// P^0 = P_{k-1}^{(0,n-2k)} and P^1 = P_{k-1}^{(1,n-2k)} at 2|a|^2-1. Requires
/// abcd != 0.
MirrorProbs prob_at(const Coin& coin, const QubitState& state, std::int64_t n,
                    std::int64_t k);

/// Full distribution at time n assembled from prob_extremes and prob_at.
Distribution closed_distribution(const Coin& coin, const QubitState& state,
                                 std::int64_t n);

}  // namespace qwalk
