#include "qwalk/convergence.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qwalk/closedform.hpp"
#include "qwalk/error.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/limitdist.hpp"
#include "qwalk/parallel.hpp"

namespace qwalk {

std::string_view to_string(Method method) {
  return method == Method::Evolve ? "evolve" : "closedform";
}

Method parse_method(std::string_view text) {
  if (text == "evolve") return Method::Evolve;
  if (text == "closedform") return Method::ClosedForm;
  throw Error(ErrorKind::ParseError, "unknown method '" + std::string(text) + "'");
}

Distribution compute_distribution(const Coin& coin, const QubitState& state, std::int64_t n,
                                  Method method) {
  if (method == Method::ClosedForm && n >= 1 && coin.nondegenerate()) {
    return closed_distribution(coin, state, n);
  }
  return run(coin, state, n);
}

std::vector<std::int64_t> default_schedule() {
  std::vector<std::int64_t> out;
  for (int e = 7; e <= 13; ++e) out.push_back(std::int64_t{1} << e);
  return out;
}

namespace {

void check_schedule(std::span<const std::int64_t> schedule) {
  if (schedule.empty()) throw Error(ErrorKind::DomainError, "empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 2 || schedule[i] > kMaxScheduledTime) {
      throw Error(ErrorKind::DomainError,
                  "scheduled time " + std::to_string(schedule[i]) + " outside [2, " +
                      std::to_string(kMaxScheduledTime) + "]");
    }
    if (i > 0 && schedule[i] <= schedule[i - 1]) {
      throw Error(ErrorKind::DomainError, "schedule must be strictly increasing");
    }
  }
}

void check_series_order(double alpha) {
  check_finite_order(alpha);
  if (alpha >= 2.0) {
    throw Error(ErrorKind::DivergentIntegral, "limit is not finite for alpha >= 2");
  }
}

double half_log(std::int64_t n) { return std::log2(static_cast<double>(n) / 2.0); }

// Fills finite values (and parity averages) by evaluating `statistic` at each
// scheduled n, and at n+1 when requested.
template <typename Statistic>
ConvergenceSeries build_series(std::string id, double alpha, double limit,
                               std::span<const std::int64_t> schedule,
                               const SeriesOptions& options, Statistic&& statistic) {
  ConvergenceSeries s;
  s.id = std::move(id);
  s.alpha = alpha;
  s.schedule.assign(schedule.begin(), schedule.end());
  s.limit_value = limit;
  s.informational = alpha == 0.0;
  const std::size_t count = schedule.size();
  const std::size_t stride = options.parity_average ? 2 : 1;
  std::vector<double> values(count * stride);
  parallel_for(values.size(), options.jobs, [&](std::size_t task) {
    const std::int64_t n = schedule[task / stride] + static_cast<std::int64_t>(task % stride);
    values[task] = statistic(n);
  });
  for (std::size_t i = 0; i < count; ++i) {
    const double v = values[i * stride];
    s.finite_values.push_back(v);
    s.gaps.push_back(std::abs(v - limit));
    if (options.parity_average) s.parity_average.push_back(0.5 * (v + values[i * stride + 1]));
  }
  return s;
}

std::string order_tag(double alpha) { return "alpha=" + format_double(alpha); }

}  // namespace

ConvergenceSeries renyi_gap_series(const Coin& coin, const QubitState& state, double alpha,
                                   std::span<const std::int64_t> schedule,
                                   const SeriesOptions& options) {
  check_series_order(alpha);
  check_schedule(schedule);
  const double limit = renyi_limit(make_limit_density(coin, state), alpha);
  const auto order = OrderParam::finite(alpha);
  return build_series("renyi " + order_tag(alpha), alpha, limit, schedule, options,
                      [&](std::int64_t n) {
                        return renyi(compute_distribution(coin, state, n, options.method),
                                     order) -
                               half_log(n);
                      });
}

ConvergenceSeries tsallis_scaled_series(const Coin& coin, const QubitState& state,
                                        double alpha, std::span<const std::int64_t> schedule,
                                        const SeriesOptions& options) {
  check_series_order(alpha);
  check_schedule(schedule);
  const double limit = tsallis_limit_const(make_limit_density(coin, state), alpha);
  const double shift = 1.0 / (1.0 - alpha);
  return build_series("tsallis " + order_tag(alpha), alpha, limit, schedule, options,
                      [&](std::int64_t n) {
                        const double t =
                            tsallis(compute_distribution(coin, state, n, options.method), alpha);
                        const double scale =
                            std::pow(static_cast<double>(n) / 2.0, 1.0 - alpha);
                        return (t + shift) / scale - shift;
                      });
}

ConvergenceSeries conditional_gap_series(Variant variant, const Coin& coin,
                                         const EnsemblePrior& prior, double alpha,
                                         std::span<const std::int64_t> schedule,
                                         const SeriesOptions& options) {
  check_series_order(alpha);
  check_schedule(schedule);
  const double limit = conditional_renyi_limit(variant, coin, prior, alpha);
  const auto order = OrderParam::finite(alpha);
  const auto weights = prior.weights();
  return build_series("conditional " + std::string(to_string(variant)) + " " + order_tag(alpha),
                      alpha, limit, schedule, options, [&](std::int64_t n) {
                        std::vector<double> values;
                        for (const auto& e : prior.entries()) {
                          values.push_back(renyi(
                              compute_distribution(coin, e.state, n, options.method), order));
                        }
                        return conditional_renyi_from_values(variant, weights, values, alpha) -
                               half_log(n);
                      });
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT-APPLICABLE";
    case Verdict::Informational: return "INFORMATIONAL";
  }
  return "?";
}

bool Report::all_pass() const {
  for (const auto& v : verdicts) {
    if (v.overall == Verdict::Fail) return false;
  }
  return true;
}

Report convergence_report(std::vector<ConvergenceSeries> series, const ReportOptions& options) {
  if (series.empty()) throw Error(ErrorKind::DomainError, "report needs at least one series");
  Report report;
  report.threshold = options.threshold;
  for (const auto& s : series) {
    SeriesVerdict v;
    v.id = s.id;
    v.first_gap = s.gaps.front();
    v.last_gap = s.gaps.back();
    if (s.gaps.size() > 1) {
      v.trend = v.last_gap < v.first_gap ? Verdict::Pass : Verdict::Fail;
    }
    v.threshold = v.last_gap < options.threshold ? Verdict::Pass : Verdict::Fail;
    if (s.informational) {
      v.overall = Verdict::Informational;
    } else {
      const bool trend_ok = v.trend != Verdict::Fail;
      v.overall = trend_ok && v.threshold == Verdict::Pass ? Verdict::Pass : Verdict::Fail;
    }
    report.verdicts.push_back(v);
  }
  report.series = std::move(series);
  return report;
}

void write_report_csv(std::ostream& out, const Report& report) {
  bool with_parity = false;
  for (const auto& s : report.series) with_parity |= !s.parity_average.empty();
  out << "series_id,n,finite_value,limit_value,gap";
  if (with_parity) out << ",parity_average";
  out << '\n';
  for (const auto& s : report.series) {
    for (std::size_t i = 0; i < s.schedule.size(); ++i) {
      out << s.id << ',' << s.schedule[i] << ',' << format_double(s.finite_values[i]) << ','
          << format_double(s.limit_value) << ',' << format_double(s.gaps[i]);
      if (with_parity) {
        out << ',' << (s.parity_average.empty() ? std::string() : format_double(s.parity_average[i]));
      }
      out << '\n';
    }
  }
}

std::string report_json(const Report& report) {
  nlohmann::json j;
  j["threshold"] = report.threshold;
  j["threshold_note"] =
      "empirical threshold; the limit statements carry no error term";
  auto& arr = j["series"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.series.size(); ++i) {
    const auto& s = report.series[i];
    const auto& v = report.verdicts[i];
    nlohmann::json item{{"id", s.id},
                        {"alpha", s.alpha},
                        {"schedule", s.schedule},
                        {"finite_values", s.finite_values},
                        {"limit_value", s.limit_value},
                        {"gaps", s.gaps},
                        {"trend", to_string(v.trend)},
                        {"threshold_check", to_string(v.threshold)},
                        {"verdict", to_string(v.overall)}};
    if (!s.parity_average.empty()) item["parity_average"] = s.parity_average;
    arr.push_back(std::move(item));
  }
  j["all_pass"] = report.all_pass();
  return j.dump(2);
}

}  // namespace qwalk
