#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

/// Position distribution of the walker at a fixed time. Zero-probability
/// sites are kept; the support is strictly increasing and parity-aligned
/// with the time.
struct Distribution {
  std::int64_t time = 0;
  std::vector<std::int64_t> support;
  std::vector<double> probs;

  std::size_t size() const noexcept { return probs.size(); }
  double total() const;
  /// Probability at `position`, 0 when it is not in the support.
  double at(std::int64_t position) const;

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Support {-n, -n+2, ..., n}.
std::vector<std::int64_t> parity_support(std::int64_t n);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

void write_csv(std::ostream& out, const Distribution& dist);
std::string to_json(const Distribution& dist);
Distribution distribution_from_json(const std::string& text);

/// %.17g, the round-trip precision used in every serialized number.
std::string format_double(double value);

}  // namespace qwalk
