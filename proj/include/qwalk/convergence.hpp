#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/distribution.hpp"
#include "qwalk/entropy.hpp"

namespace qwalk {

enum class Method { Evolve, ClosedForm };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

/// Distribution at time n by the chosen route. ClosedForm falls back to the
/// step evolution for n = 0 and for coins with abcd = 0.
Distribution compute_distribution(const Coin& coin, const QubitState& state, std::int64_t n,
                                  Method method);

/// {2^7, 2^8, ..., 2^13}.
std::vector<std::int64_t> default_schedule();

/// Largest time accepted in a schedule.
inline constexpr std::int64_t kMaxScheduledTime = 100000;

struct SeriesOptions {
  Method method = Method::ClosedForm;
  /// Also evaluate each statistic at n+1 and report the two-point mean.
  bool parity_average = false;
  unsigned jobs = 1;
};

/// Finite-n statistic of one limit statement evaluated over a schedule.
struct ConvergenceSeries {
  std::string id;
  double alpha = 0.0;
  std::vector<std::int64_t> schedule;
  std::vector<double> finite_values;
  double limit_value = 0.0;
  std::vector<double> gaps;
  /// Mean of the statistic at n and n+1; empty unless requested.
  std::vector<double> parity_average;
  /// Order 0 series are reported without a verdict.
  bool informational = false;
};

/// R_alpha(n) - log2(n/2) against renyi_limit.
ConvergenceSeries renyi_gap_series(const Coin& coin, const QubitState& state, double alpha,
                                   std::span<const std::int64_t> schedule,
                                   const SeriesOptions& options = {});

/// (T_alpha(n) + 1/(1-alpha)) / (n/2)^(1-alpha) - 1/(1-alpha) against
/// tsallis_limit_const.
ConvergenceSeries tsallis_scaled_series(const Coin& coin, const QubitState& state,
                                        double alpha, std::span<const std::int64_t> schedule,
                                        const SeriesOptions& options = {});

/// R^variant(X_n|Y) - log2(n/2) against conditional_renyi_limit.
ConvergenceSeries conditional_gap_series(Variant variant, const Coin& coin,
                                         const EnsemblePrior& prior, double alpha,
                                         std::span<const std::int64_t> schedule,
                                         const SeriesOptions& options = {});

enum class Verdict { Pass, Fail, NotApplicable, Informational };
std::string_view to_string(Verdict verdict);

struct SeriesVerdict {
  std::string id;
  /// gap(n_max) < gap(n_min); NotApplicable for single-point schedules.
  Verdict trend = Verdict::NotApplicable;
  /// gap(n_max) < threshold.
  Verdict threshold = Verdict::Fail;
  Verdict overall = Verdict::Fail;
  double first_gap = 0.0;
  double last_gap = 0.0;
};

struct ReportOptions {
  /// Empirical default: no error term is known for the limits.
  double threshold = 0.05;
};

struct Report {
  std::vector<ConvergenceSeries> series;
  std::vector<SeriesVerdict> verdicts;
  double threshold = 0.05;

  bool all_pass() const;
};

Report convergence_report(std::vector<ConvergenceSeries> series,
                          const ReportOptions& options = {});

/// series_id,n,finite_value,limit_value,gap[,parity_average]
void write_report_csv(std::ostream& out, const Report& report);
std::string report_json(const Report& report);

}  // namespace qwalk
