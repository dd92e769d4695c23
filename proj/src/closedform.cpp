#include "qwalk/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

// Accumulator for the alternating finite sums: quad precision where the
// compiler provides it.
#if defined(__SIZEOF_FLOAT128__)
__extension__ typedef __float128 Wide;
#else
using Wide = long double;
#endif


void check_jacobi_params(std::int64_t n, double nu, double mu) {
  if (n < 0) throw Error(ErrorKind::BadParameter, "negative Jacobi degree");
  if (!(nu > -1.0) || !(mu > -1.0)) {
    throw Error(ErrorKind::BadParameter,
                "Jacobi parameters must exceed -1 (nu=" + std::to_string(nu) +
                    ", mu=" + std::to_string(mu) + ")");
  }
}

void require_nondegenerate(const Coin& coin) {
  if (!coin.nondegenerate()) {
    throw Error(ErrorKind::CoinDegenerate,
                "closed forms require abcd != 0; use the step evolution instead");
  }
}

}  // namespace

ScaledReal jacobi_scaled(std::int64_t n, double nu, double mu, double x) {
  check_jacobi_params(n, nu, mu);
  if (n == 0) return ScaledReal(1.0);
  ScaledReal prev(1.0);
  ScaledReal cur((nu + 1.0) + 0.5 * (nu + mu + 2.0) * (x - 1.0));
  const double s = nu + mu;
  const double nu2_mu2 = (nu - mu) * (nu + mu);
  for (std::int64_t m = 2; m <= n; ++m) {
    const double dm = static_cast<double>(m);
    const double t = 2.0 * dm + s;
    const double lead = 2.0 * dm * (dm + s) * (t - 2.0);
    const double mid = (t - 1.0) * (t * (t - 2.0) * x + nu2_mu2);
    const double back = 2.0 * (dm + nu - 1.0) * (dm + mu - 1.0) * t;
    ScaledReal next = (ScaledReal(mid) * cur - ScaledReal(back) * prev) / ScaledReal(lead);
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi(std::int64_t n, double nu, double mu, double x) {
  return jacobi_scaled(n, nu, mu, x).to_double();
}

double hypergeom2f1_poly(std::int64_t n, double b, double c, double z) {
  if (n < 0) throw Error(ErrorKind::BadParameter, "terminating series needs n >= 0");
  if (c <= 0.0 && c == std::floor(c)) {
    throw Error(ErrorKind::PoleInC, "c = " + std::to_string(c));
  }
  // The terms alternate and grow far beyond the result for z near 1 and large
  // b, so they are formed and summed in Wide.
  auto magnitude = [](Wide v) { return v < 0 ? -v : v; };
  std::vector<Wide> terms;
  terms.reserve(static_cast<std::size_t>(n + 1));
  Wide term = 1;
  terms.push_back(term);
  for (std::int64_t j = 0; j < n; ++j) {
    const Wide dj = static_cast<Wide>(j);
    term = term * (dj - static_cast<Wide>(n)) * (static_cast<Wide>(b) + dj) /
           ((static_cast<Wide>(c) + dj) * (dj + 1)) * static_cast<Wide>(z);
    terms.push_back(term);
  }
  std::sort(terms.begin(), terms.end(),
            [&](Wide l, Wide r) { return magnitude(l) > magnitude(r); });
  Wide sum = 0;
  for (Wide t : terms) sum += t;
  return static_cast<double>(sum);
}

double jacobi_via_hypergeom(std::int64_t n, double nu, double mu, double x) {
  check_jacobi_params(n, nu, mu);
  const double dn = static_cast<double>(n);
  const double log_prefactor =
      std::lgamma(dn + nu + 1.0) - std::lgamma(dn + 1.0) - std::lgamma(nu + 1.0);
  return std::exp(log_prefactor) *
         hypergeom2f1_poly(n, dn + nu + mu + 1.0, nu + 1.0, 0.5 * (1.0 - x));
}

IdentitySides sum_identity_check(std::int64_t k, std::int64_t n, const Coin& coin,
                                 int which) {
  if (k < 1 || 2 * k > n) {
    throw Error(ErrorKind::DomainError,
                "k=" + std::to_string(k) + " outside 1..floor(n/2) for n=" +
                    std::to_string(n));
  }
  if (which != 0 && which != 1) {
    throw Error(ErrorKind::DomainError, "which must be 0 or 1");
  }
  require_nondegenerate(coin);
  // |b|^2 is taken as 1 - |a|^2 so that both sides see the same coin.
  const double a2 = std::norm(coin.a());
  const Wide w = -(1 - static_cast<Wide>(a2)) / static_cast<Wide>(a2);

  // C(k-1, g-1) and C(n-k-1, g-1) advanced together; the alternating terms
  // cancel heavily for |a|^2 < 1/2, hence the wide accumulator.
  Wide binom_k = 1;
  Wide binom_nk = 1;
  Wide wpow = 1;
  Wide lhs = 0;
  for (std::int64_t g = 1; g <= k; ++g) {
    Wide term = wpow * binom_k * binom_nk;
    if (which == 1) term /= static_cast<Wide>(g);
    lhs += term;
    binom_k = binom_k * static_cast<Wide>(k - g) / static_cast<Wide>(g);
    binom_nk = binom_nk * static_cast<Wide>(n - k - g) / static_cast<Wide>(g);
    wpow *= w;
  }

  const double x = 2.0 * a2 - 1.0;
  ScaledReal rhs = jacobi_scaled(k - 1, which, static_cast<double>(n - 2 * k), x) *
                   ScaledReal(a2).pow(-(k - 1));
  if (which == 1) rhs /= ScaledReal(static_cast<double>(k));
  return {static_cast<double>(lhs), rhs.to_double()};
}

ExtremeProbs prob_extremes(const Coin& coin, const QubitState& state, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "prob_extremes needs n >= 1");
  const double a2 = std::norm(coin.a());
  const double b2 = std::norm(coin.b());
  const double l2 = std::norm(state.alpha());
  const double r2 = std::norm(state.beta());
  const double cross = cross_term(coin, state);
  const ScaledReal scale = ScaledReal(a2).pow(n - 1);
  const double right = std::max(0.0, b2 * l2 + a2 * r2 - cross);
  const double left = std::max(0.0, a2 * l2 + b2 * r2 + cross);
  return {(scale * ScaledReal(right)).to_double(), (scale * ScaledReal(left)).to_double()};
}

MirrorProbs prob_at(const Coin& coin, const QubitState& state, std::int64_t n,
                    std::int64_t k) {
  if (k < 1 || 2 * k > n) {
    throw Error(ErrorKind::DomainError,
                "k=" + std::to_string(k) + " outside 1..floor(n/2) for n=" +
                    std::to_string(n));
  }
  require_nondegenerate(coin);
  const double a2 = std::norm(coin.a());
  const double b2 = std::norm(coin.b());
  const double chirality = std::norm(state.alpha()) - std::norm(state.beta());
  const double cross = cross_term(coin, state);
  const double arg = 2.0 * a2 - 1.0;
  const double mu = static_cast<double>(n - 2 * k);

  const ScaledReal p0 = jacobi_scaled(k - 1, 0.0, mu, arg);
  const ScaledReal p1 = jacobi_scaled(k - 1, 1.0, mu, arg);
  const ScaledReal p11 = p1 * p1;
  const ScaledReal p10 = p1 * p0;
  const ScaledReal p00 = p0 * p0;

  // The bracket's ratio variable is k/n.
  const double x = static_cast<double>(k) / static_cast<double>(n);
  const double even11 = (2.0 * x * x - 2.0 * x + 1.0) / (x * x);
  const double even10 = -2.0 / x;
  const double even00 = 2.0 / b2;
  const double tilt = (1.0 - 2.0 * x) / x;
  const double odd11 = -tilt / x * ((a2 - b2) * chirality + 2.0 * cross);
  const double odd10 = -2.0 * tilt * (chirality - cross / b2);

  const ScaledReal prefactor =
      ScaledReal(a2).pow(n - 2 * k - 1) * ScaledReal(0.5 * b2 * b2);
  const ScaledReal plus = prefactor * (ScaledReal(even11 + odd11) * p11 +
                                       ScaledReal(even10 + odd10) * p10 +
                                       ScaledReal(even00) * p00);
  const ScaledReal minus = prefactor * (ScaledReal(even11 - odd11) * p11 +
                                        ScaledReal(even10 - odd10) * p10 +
                                        ScaledReal(even00) * p00);
  return {plus.to_double(), minus.to_double()};
}

Distribution closed_distribution(const Coin& coin, const QubitState& state,
                                 std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "closed_distribution needs n >= 1");
  require_nondegenerate(coin);
  Distribution out;
  out.time = n;
  out.support = parity_support(n);
  out.probs.assign(static_cast<std::size_t>(n + 1), 0.0);
  // Index i holds position -n + 2i; position +-(n-2k) is index n-k / k.
  const auto extremes = prob_extremes(coin, state, n);
  out.probs.front() = extremes.left;
  out.probs.back() = extremes.right;
  for (std::int64_t k = 1; 2 * k <= n; ++k) {
    const auto mirror = prob_at(coin, state, n, k);
    out.probs[static_cast<std::size_t>(n - k)] = mirror.plus;
    if (2 * k == n) {
      if (std::abs(mirror.plus - mirror.minus) >= 1e-12) {
        throw Error(ErrorKind::DivergentScale,
                    "center-site mirror values disagree");
      }
      continue;
    }
    out.probs[static_cast<std::size_t>(k)] = mirror.minus;
  }
  return out;
}

}  // namespace qwalk
