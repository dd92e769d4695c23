#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"

namespace qwalk {

/// Two-component wavefunction at time n, stored densely over the n+1 sites
/// x = -n + 2i (the only sites the walker can occupy).
class AmplitudeField {
 public:
  using Amplitude = std::array<Complex, 2>;  // (psi_L, psi_R)

  AmplitudeField() = default;
  AmplitudeField(std::int64_t time, std::vector<Amplitude> amplitudes);

  std::int64_t time() const noexcept { return time_; }
  const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
  std::int64_t position(std::size_t index) const {
    return -time_ + 2 * static_cast<std::int64_t>(index);
  }
  /// Amplitude at position x; zero off the lattice of reachable sites.
  Amplitude at(std::int64_t x) const;
  double norm() const;

 private:
  std::int64_t time_ = 0;
  std::vector<Amplitude> amps_{Amplitude{}};
};

AmplitudeField initial_field(const QubitState& state);

/// One step: psi'(x) = P psi(x+1) + Q psi(x-1).
AmplitudeField step(const AmplitudeField& field, const Coin& coin);

Distribution to_distribution(const AmplitudeField& field);

/// Exact distribution after n steps from the origin.
Distribution run(const Coin& coin, const QubitState& state, std::int64_t n);

}  // namespace qwalk
