#include "qwalk/sampling.hpp"

#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

Complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

}  // namespace

Coin random_coin(std::mt19937_64& rng, double min_a2, double max_a2) {
  std::uniform_real_distribution<double> weight(min_a2, max_a2);
  const double a2 = weight(rng);
  const Complex a = std::sqrt(a2) * random_phase(rng);
  const Complex b = std::sqrt(1.0 - a2) * random_phase(rng);
  return make_coin(a, b, random_phase(rng));
}

QubitState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  const double l2 = weight(rng);
  return make_state(std::sqrt(l2) * random_phase(rng), std::sqrt(1.0 - l2) * random_phase(rng));
}

}  // namespace qwalk
