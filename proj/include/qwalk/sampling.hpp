#pragma once

#include <random>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Random coin with |a|^2 uniform in [min_a2, max_a2] and uniform phases on a,
/// b and delta; abcd != 0 whenever min_a2 > 0 and max_a2 < 1.
Coin random_coin(std::mt19937_64& rng, double min_a2 = 0.05, double max_a2 = 0.95);

/// Random state with |alpha|^2 uniform in [0, 1] and uniform phases.
QubitState random_state(std::mt19937_64& rng);

}  // namespace qwalk
