#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"

namespace qwalk {

/// Entropy order: a finite alpha in [0, inf) \ {1}, or one of the two limits.
class OrderParam {
 public:
  enum class Kind { Finite, Shannon, Min };

  /// Throws BadOrder for alpha < 0, alpha == 1 or non-finite alpha.
  static OrderParam finite(double alpha);
  static OrderParam shannon() { return OrderParam(Kind::Shannon, 1.0); }
  static OrderParam min() { return OrderParam(Kind::Min, 0.0); }
  /// "shannon", "min", "inf" or a number.
  static OrderParam parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// The finite order; BadOrder for SHANNON and MIN.
  double value() const;
  std::string label() const;

 private:
  OrderParam(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {}

  Kind kind_;
  double alpha_;
};

/// Throws BadOrder unless alpha is a finite order (>= 0, != 1).
void check_finite_order(double alpha);

/// sum_x p(x)^alpha with 0^alpha := 0 (also for alpha = 0), accumulated in
/// descending order of p.
double power_sum(std::span<const double> probs, double alpha);

double tsallis(const Distribution& dist, double alpha);
double renyi(const Distribution& dist, const OrderParam& order);
double renyi(std::span<const double> probs, const OrderParam& order);
double tsallis_from_renyi(double renyi_value, double alpha);

/// Initial states drawn at random with the given weights.
class EnsemblePrior {
 public:
  struct Entry {
    QubitState state;
    double weight;
  };

  /// Throws BadParameter for an empty list, negative weights, or weights not
  /// summing to 1 within 1e-12.
  explicit EnsemblePrior(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::vector<double> weights() const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

/// Parses [{"alpha": "re+imj", "beta": "re+imj", "weight": w}, ...].
EnsemblePrior ensemble_from_json(const std::string& text);
std::string to_json(const EnsemblePrior& prior);

enum class Variant { C, JA, RW, A, H };

inline constexpr Variant kAllVariants[] = {Variant::C, Variant::JA, Variant::RW,
                                           Variant::A, Variant::H};

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

/// Conditional Renyi entropy from the per-state Renyi entropies R_alpha^phi
/// and the prior weights (the reduced forms valid when Y selects the initial
/// state). Shared by the finite-n and the limiting computation.
double conditional_renyi_from_values(Variant variant, std::span<const double> weights,
                                     std::span<const double> state_renyi, double alpha);

/// Finite-n conditional Renyi entropy of the walk position given the random
/// initial state.
double conditional_renyi(Variant variant, const Coin& coin, const EnsemblePrior& prior,
                         std::int64_t n, double alpha);

/// Conditional Renyi entropy evaluated from its defining expression in terms
/// of P_{X|Y} and P_Y; the reference for conditional_renyi.
double conditional_renyi_direct(Variant variant,
                                std::span<const std::pair<double, Distribution>> per_outcome,
                                double alpha);

}  // namespace qwalk
