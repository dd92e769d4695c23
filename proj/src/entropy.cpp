#include "qwalk/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/evolve.hpp"

namespace qwalk {

void check_finite_order(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha == 1.0) {
    throw Error(ErrorKind::BadOrder,
                "order must lie in [0, inf) \\ {1}, got " + format_double(alpha));
  }
}

OrderParam OrderParam::finite(double alpha) {
  check_finite_order(alpha);
  return OrderParam(Kind::Finite, alpha);
}

OrderParam OrderParam::parse(std::string_view text) {
  if (text == "shannon") return shannon();
  if (text == "min" || text == "inf") return min();
  double alpha = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), alpha);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError, "bad order '" + std::string(text) + "'");
  }
  return finite(alpha);
}

double OrderParam::value() const {
  if (kind_ != Kind::Finite) throw Error(ErrorKind::BadOrder, "order is not finite");
  return alpha_;
}

std::string OrderParam::label() const {
  switch (kind_) {
    case Kind::Shannon: return "shannon";
    case Kind::Min: return "min";
    case Kind::Finite: break;
  }
  return format_double(alpha_);
}

double power_sum(std::span<const double> probs, double alpha) {
  std::vector<double> sorted(probs.begin(), probs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> terms;
  terms.reserve(sorted.size());
  for (double p : sorted) {
    if (p <= 0.0) break;
    if (alpha == 0.0) {
      terms.push_back(1.0);
    } else if (alpha > 1.0) {
      terms.push_back(std::exp2(alpha * std::log2(p)));
    } else {
      terms.push_back(std::pow(p, alpha));
    }
  }
  return compensated_sum(terms);
}

double tsallis(const Distribution& dist, double alpha) {
  check_finite_order(alpha);
  return (power_sum(dist.probs, alpha) - 1.0) / (1.0 - alpha);
}

double renyi(std::span<const double> probs, const OrderParam& order) {
  switch (order.kind()) {
    case OrderParam::Kind::Shannon: {
      std::vector<double> terms;
      terms.reserve(probs.size());
      for (double p : probs) {
        if (p > 0.0) terms.push_back(-p * std::log2(p));
      }
      return compensated_sum(terms);
    }
    case OrderParam::Kind::Min: {
      const double peak = probs.empty() ? 0.0 : *std::max_element(probs.begin(), probs.end());
      return -std::log2(peak);
    }
    case OrderParam::Kind::Finite: break;
  }
  const double alpha = order.value();
  const double peak = probs.empty() ? 0.0 : *std::max_element(probs.begin(), probs.end());
  if (!(peak > 0.0)) return std::log2(power_sum(probs, alpha)) / (1.0 - alpha);
  // With L = log2 max p and S = log2 sum (p / max p)^alpha,
  // R = (alpha L + S) / (1 - alpha) = -L + (L + S) / (1 - alpha).
  // Nothing underflows, and uniform laws give L + S = 0 exactly.
  std::vector<double> ratios;
  ratios.reserve(probs.size());
  for (double p : probs) ratios.push_back(p / peak);
  const double log_peak = std::log2(peak);
  return -log_peak + (log_peak + std::log2(power_sum(ratios, alpha))) / (1.0 - alpha);
}

double renyi(const Distribution& dist, const OrderParam& order) {
  return renyi(std::span<const double>(dist.probs), order);
}

double tsallis_from_renyi(double renyi_value, double alpha) {
  check_finite_order(alpha);
  return (std::exp2((1.0 - alpha) * renyi_value) - 1.0) / (1.0 - alpha);
}

EnsemblePrior::EnsemblePrior(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::BadParameter, "empty ensemble");
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!(e.weight >= 0.0)) throw Error(ErrorKind::BadParameter, "negative weight");
    total += e.weight;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    throw Error(ErrorKind::BadParameter, "weights sum to " + format_double(total));
  }
}

std::vector<double> EnsemblePrior::weights() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.weight);
  return out;
}

EnsemblePrior ensemble_from_json(const std::string& text) {
  std::vector<EnsemblePrior::Entry> entries;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "ensemble must be a JSON array");
    for (const auto& item : j) {
      auto component = [&](const char* key) {
        const auto& v = item.at(key);
        if (v.is_number()) return Complex{v.get<double>(), 0.0};
        return parse_complex(v.get<std::string>());
      };
      entries.push_back({make_state(component("alpha"), component("beta")),
                         item.at("weight").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return EnsemblePrior(std::move(entries));
}

std::string to_json(const EnsemblePrior& prior) {
  auto j = nlohmann::json::array();
  for (const auto& e : prior.entries()) {
    j.push_back({{"alpha", format_complex(e.state.alpha())},
                 {"beta", format_complex(e.state.beta())},
                 {"weight", e.weight}});
  }
  return j.dump();
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::C: return "C";
    case Variant::JA: return "JA";
    case Variant::RW: return "RW";
    case Variant::A: return "A";
    case Variant::H: return "H";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  for (Variant v : kAllVariants) {
    if (to_string(v) == text) return v;
  }
  throw Error(ErrorKind::ParseError, "unknown variant '" + std::string(text) + "'");
}

namespace {

void check_variant_order(Variant variant, double alpha) {
  check_finite_order(alpha);
  if (variant == Variant::A && alpha == 0.0) {
    throw Error(ErrorKind::VariantDomain,
                "Arimoto variant is undefined at order 0 (exponent (1-a)/a)");
  }
}

// w^alpha with 0^alpha := 0.
double weight_power(double w, double alpha) {
  if (w <= 0.0) return 0.0;
  return alpha == 0.0 ? 1.0 : std::pow(w, alpha);
}

}  // namespace

double conditional_renyi_from_values(Variant variant, std::span<const double> weights,
                                     std::span<const double> state_renyi, double alpha) {
  check_variant_order(variant, alpha);
  if (weights.size() != state_renyi.size() || weights.empty()) {
    throw Error(ErrorKind::BadParameter, "weights and Renyi values must align");
  }
  const double one_minus = 1.0 - alpha;
  std::vector<double> terms;
  terms.reserve(weights.size());
  switch (variant) {
    case Variant::C:
      for (std::size_t i = 0; i < weights.size(); ++i) terms.push_back(weights[i] * state_renyi[i]);
      return compensated_sum(terms);
    case Variant::JA:
      for (std::size_t i = 0; i < weights.size(); ++i) {
        terms.push_back(weight_power(weights[i], alpha) * std::exp2(one_minus * state_renyi[i]));
      }
      return std::log2(compensated_sum(terms)) / one_minus -
             renyi(weights, OrderParam::finite(alpha));
    case Variant::RW: {
      double best = alpha < 1.0 ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        best = alpha < 1.0 ? std::max(best, state_renyi[i]) : std::min(best, state_renyi[i]);
      }
      return best;
    }
    case Variant::A:
      for (std::size_t i = 0; i < weights.size(); ++i) {
        terms.push_back(weights[i] * std::exp2(one_minus / alpha * state_renyi[i]));
      }
      return alpha / one_minus * std::log2(compensated_sum(terms));
    case Variant::H:
      for (std::size_t i = 0; i < weights.size(); ++i) {
        terms.push_back(weights[i] * std::exp2(one_minus * state_renyi[i]));
      }
      return std::log2(compensated_sum(terms)) / one_minus;
  }
  throw Error(ErrorKind::BadParameter, "unknown variant");
}

double conditional_renyi(Variant variant, const Coin& coin, const EnsemblePrior& prior,
                         std::int64_t n, double alpha) {
  check_variant_order(variant, alpha);
  if (n < 1) throw Error(ErrorKind::DomainError, "conditional_renyi needs n >= 1");
  std::vector<double> values;
  values.reserve(prior.size());
  for (const auto& e : prior.entries()) {
    values.push_back(renyi(run(coin, e.state, n), OrderParam::finite(alpha)));
  }
  return conditional_renyi_from_values(variant, prior.weights(), values, alpha);
}

double conditional_renyi_direct(Variant variant,
                                std::span<const std::pair<double, Distribution>> per_outcome,
                                double alpha) {
  check_variant_order(variant, alpha);
  if (per_outcome.empty()) throw Error(ErrorKind::BadParameter, "no outcomes");
  const std::int64_t time = per_outcome.front().second.time;
  std::vector<double> weights;
  for (const auto& [w, dist] : per_outcome) {
    if (dist.time != time) {
      throw Error(ErrorKind::BadParameter, "outcome distributions differ in time");
    }
    weights.push_back(w);
  }
  const auto order = OrderParam::finite(alpha);
  const double one_minus = 1.0 - alpha;
  std::vector<double> terms;

  switch (variant) {
    case Variant::C:
      for (const auto& [w, dist] : per_outcome) terms.push_back(w * renyi(dist, order));
      return compensated_sum(terms);
    case Variant::JA: {
      std::vector<double> joint;  // P_{X,Y}(x, y) = P_Y(y) P_{X|Y}(x|y)
      joint.reserve(per_outcome.size() * per_outcome.front().second.size());
      for (const auto& [w, dist] : per_outcome) {
        for (double p : dist.probs) joint.push_back(w * p);
      }
      return renyi(joint, order) - renyi(weights, order);
    }
    case Variant::RW: {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& [w, dist] : per_outcome) {
        if (w <= 0.0) continue;
        best = std::max(best, std::log2(power_sum(dist.probs, alpha)));
      }
      return best / one_minus;
    }
    case Variant::A:
      for (const auto& [w, dist] : per_outcome) {
        terms.push_back(w * std::pow(power_sum(dist.probs, alpha), 1.0 / alpha));
      }
      return alpha / one_minus * std::log2(compensated_sum(terms));
    case Variant::H:
      for (const auto& [w, dist] : per_outcome) {
        terms.push_back(w * power_sum(dist.probs, alpha));
      }
      return std::log2(compensated_sum(terms)) / one_minus;
  }
  throw Error(ErrorKind::BadParameter, "unknown variant");
}

}  // namespace qwalk
