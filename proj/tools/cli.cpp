#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/closedform.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/convergence.hpp"
#include "qwalk/entropy.hpp"
#include "qwalk/error.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/limitdist.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/sampling.hpp"

namespace qwalk::cli {

namespace {

using nlohmann::json;

struct ExperimentConfig {
  std::string coin = "hadamard";
  std::string a, b, delta = "-1";
  std::string state = "L";
  std::string ensemble;
  std::vector<std::string> alpha;
  std::vector<std::int64_t> n;
  std::string schedule;
  std::string method;  // empty: per-command default
  std::vector<std::string> variant;
  std::string out = "-";
  std::string format = "csv";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string config;
  double threshold = 0.05;
  bool parity = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
  sub->add_option("--coin", cfg.coin, "hadamard | identity | rotation(<theta>) | random");
  sub->add_option("--a", cfg.a, "coin entry a as re+imj (overrides --coin)");
  sub->add_option("--b", cfg.b, "coin entry b as re+imj");
  sub->add_option("--delta", cfg.delta, "det U as re+imj (default -1)");
  sub->add_option("--state", cfg.state, "L | R | sym | random | <alpha>,<beta>");
  sub->add_option("--ensemble", cfg.ensemble, "JSON file with weighted initial states");
  sub->add_option("--alpha", cfg.alpha, "entropy order (repeatable)");
  sub->add_option("--n", cfg.n, "time step (repeatable)");
  sub->add_option("--schedule", cfg.schedule, "comma-separated list of times");
  sub->add_option("--method", cfg.method,
                  "evolve | closedform (default: closedform for converge, else evolve)");
  sub->add_option("--variant", cfg.variant, "conditional variant C/JA/RW/A/H (repeatable)");
  sub->add_option("--out", cfg.out, "output path, '-' for stdout");
  sub->add_option("--format", cfg.format, "csv | json");
  sub->add_option("--jobs", cfg.jobs, "worker threads");
  sub->add_option("--seed", cfg.seed, "seed for --coin random / --state random");
  sub->add_option("--config", cfg.config, "JSON config file; flags override it");
}

// Copies keys from the JSON config into fields whose flag was not given.
void merge_config_file(CLI::App* sub, ExperimentConfig& cfg) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw UsageError("cannot open config file '" + cfg.config + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config file: ") + e.what());
  }
  auto unset = [&](const std::string& flag) { return sub->get_option(flag)->count() == 0; };
  auto as_string = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto as_strings = [&](const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& x : v) out.push_back(as_string(x));
    } else {
      out.push_back(as_string(v));
    }
    return out;
  };
  try {
    for (const auto& [key, value] : j.items()) {
      const std::string flag = "--" + key;
      if (key == "config" || !sub->get_option_no_throw(flag)) {
        throw UsageError("unknown config key '" + key + "'");
      }
      if (!unset(flag)) continue;
      if (key == "coin") cfg.coin = as_string(value);
      else if (key == "a") cfg.a = as_string(value);
      else if (key == "b") cfg.b = as_string(value);
      else if (key == "delta") cfg.delta = as_string(value);
      else if (key == "state") cfg.state = as_string(value);
      else if (key == "ensemble") cfg.ensemble = as_string(value);
      else if (key == "alpha") cfg.alpha = as_strings(value);
      else if (key == "n") {
        cfg.n.clear();
        if (value.is_array()) {
          for (const auto& x : value) cfg.n.push_back(x.get<std::int64_t>());
        } else {
          cfg.n.push_back(value.get<std::int64_t>());
        }
      } else if (key == "schedule") {
        if (value.is_array()) {
          std::string joined;
          for (const auto& x : value) joined += (joined.empty() ? "" : ",") + as_string(x);
          cfg.schedule = joined;
        } else {
          cfg.schedule = as_string(value);
        }
      } else if (key == "method") cfg.method = as_string(value);
      else if (key == "variant") cfg.variant = as_strings(value);
      else if (key == "out") cfg.out = as_string(value);
      else if (key == "format") cfg.format = as_string(value);
      else if (key == "jobs") cfg.jobs = value.get<unsigned>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "threshold") cfg.threshold = value.get<double>();
      else if (key == "parity") cfg.parity = value.get<bool>();
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Coin resolve_coin(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  if (!cfg.a.empty() || !cfg.b.empty()) {
    if (cfg.a.empty() || cfg.b.empty()) throw UsageError("--a and --b must be given together");
    return make_coin(parse_complex(cfg.a), parse_complex(cfg.b), parse_complex(cfg.delta));
  }
  if (cfg.coin == "random") return random_coin(rng);
  return named_coin(cfg.coin);
}

QubitState resolve_state(const std::string& text, std::mt19937_64& rng) {
  if (text == "L") return make_state(1.0, 0.0);
  if (text == "R") return make_state(0.0, 1.0);
  if (text == "sym") {
    return make_state(std::sqrt(0.5), Complex(0.0, std::sqrt(0.5)));
  }
  if (text == "random") return random_state(rng);
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("state must be '<alpha>,<beta>', got '" + text + "'");
  return make_state(parse_complex(parts[0]), parse_complex(parts[1]));
}

std::optional<EnsemblePrior> resolve_ensemble(const ExperimentConfig& cfg) {
  if (cfg.ensemble.empty()) return std::nullopt;
  std::ifstream in(cfg.ensemble);
  if (!in) throw UsageError("cannot open ensemble file '" + cfg.ensemble + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ensemble_from_json(buf.str());
}

std::vector<double> resolve_orders(const ExperimentConfig& cfg, std::vector<double> fallback) {
  if (cfg.alpha.empty()) return fallback;
  std::vector<double> orders;
  for (const auto& text : cfg.alpha) {
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::logic_error&) {
      throw UsageError("bad order '" + text + "'");
    }
    if (value == 1.0) {
      throw UsageError("order 1 is excluded (use the Shannon limit); got --alpha " + text);
    }
    check_finite_order(value);
    orders.push_back(value);
  }
  return orders;
}

std::vector<std::int64_t> resolve_times(const CLI::App* sub, const ExperimentConfig& cfg,
                                        bool allow_default) {
  std::vector<std::int64_t> times = cfg.n;
  const bool schedule_given = sub->get_option("--schedule")->count() > 0 || !cfg.schedule.empty();
  if (schedule_given) {
    for (const auto& part : split(cfg.schedule, ',')) {
      try {
        times.push_back(std::stoll(part));
      } catch (const std::logic_error&) {
        throw UsageError("bad schedule entry '" + part + "'");
      }
    }
    if (times.empty()) throw UsageError("empty schedule");
  }
  if (times.empty()) {
    if (!allow_default) throw UsageError("no time given (use --n or --schedule)");
    return default_schedule();
  }
  for (auto t : times) {
    if (t < 0) throw UsageError("negative time " + std::to_string(t));
  }
  return times;
}

std::vector<Variant> resolve_variants(const ExperimentConfig& cfg) {
  if (cfg.variant.empty()) return {std::begin(kAllVariants), std::end(kAllVariants)};
  std::vector<Variant> out;
  for (const auto& v : cfg.variant) out.push_back(parse_variant(v));
  return out;
}

void check_format(const ExperimentConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw UsageError("format must be csv or json, got '" + cfg.format + "'");
  }
}

std::filesystem::path resolve_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

// Writes `content` to stdout when path is "-", otherwise to the file.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  const auto target = resolve_path(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream file(target, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + target.string() + "'");
  file << content;
}

std::string with_suffix(const std::string& path, const std::string& suffix,
                        const std::string& extension = "") {
  std::filesystem::path p(path);
  const std::string ext = extension.empty() ? p.extension().string() : extension;
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

std::string number_or_na(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

json json_number_or_null(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_simulate(const CLI::App* sub, const ExperimentConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  const Coin coin = resolve_coin(cfg, rng);
  const QubitState state = resolve_state(cfg.state, rng);
  const Method method = parse_method(cfg.method.empty() ? "evolve" : cfg.method);
  const auto times = resolve_times(sub, cfg, false);
  check_format(cfg);
  if (method == Method::ClosedForm && !coin.nondegenerate()) {
    throw Error(ErrorKind::CoinDegenerate, "closed form requires abcd != 0; use --method evolve");
  }

  std::vector<Distribution> dists(times.size());
  parallel_for(times.size(), cfg.jobs, [&](std::size_t i) {
    dists[i] = compute_distribution(coin, state, times[i], method);
  });

  auto render = [&](const Distribution& d) {
    if (cfg.format == "json") return to_json(d) + "\n";
    std::ostringstream s;
    write_csv(s, d);
    return s.str();
  };
  if (dists.size() == 1) {
    emit(cfg.out, render(dists.front()), out);
  } else if (cfg.out == "-") {
    std::string all;
    for (std::size_t i = 0; i < dists.size(); ++i) {
      if (i > 0 && cfg.format == "csv") all += "\n";
      all += render(dists[i]);
    }
    emit("-", all, out);
  } else {
    for (const auto& d : dists) {
      emit(with_suffix(cfg.out, "_n" + std::to_string(d.time)), render(d), out);
    }
  }
  return kOk;
}

int cmd_entropy(const CLI::App* sub, const ExperimentConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  const Coin coin = resolve_coin(cfg, rng);
  const auto prior = resolve_ensemble(cfg);
  const bool state_given = sub->get_option("--state")->count() > 0 || !prior;
  const QubitState state = resolve_state(cfg.state, rng);
  const Method method = parse_method(cfg.method.empty() ? "evolve" : cfg.method);
  const auto times = resolve_times(sub, cfg, false);
  const auto orders = resolve_orders(cfg, {2.0});
  const auto variants = resolve_variants(cfg);
  check_format(cfg);
  if (method == Method::ClosedForm && !coin.nondegenerate()) {
    throw Error(ErrorKind::CoinDegenerate, "closed form requires abcd != 0; use --method evolve");
  }

  struct Row {
    std::int64_t n;
    double alpha;
    double tsallis;
    double renyi;
    std::vector<std::optional<double>> conditional;
  };
  std::vector<Row> rows(times.size() * orders.size());
  parallel_for(times.size(), cfg.jobs, [&](std::size_t ti) {
    const std::int64_t n = times[ti];
    // Unconditional columns: the given state, or the ensemble's mixture.
    Distribution marginal;
    std::vector<Distribution> per_state;
    if (prior) {
      for (const auto& e : prior->entries()) {
        per_state.push_back(compute_distribution(coin, e.state, n, method));
      }
    }
    if (state_given) {
      marginal = compute_distribution(coin, state, n, method);
    } else {
      marginal = per_state.front();
      for (std::size_t j = 0; j < marginal.size(); ++j) {
        double p = 0.0;
        for (std::size_t s = 0; s < per_state.size(); ++s) {
          p += prior->entries()[s].weight * per_state[s].probs[j];
        }
        marginal.probs[j] = p;
      }
    }
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
      const double alpha = orders[oi];
      Row row{n, alpha, tsallis(marginal, alpha), renyi(marginal, OrderParam::finite(alpha)), {}};
      if (prior) {
        std::vector<double> values;
        for (const auto& d : per_state) values.push_back(renyi(d, OrderParam::finite(alpha)));
        const auto weights = prior->weights();
        for (Variant v : variants) {
          if (v == Variant::A && alpha == 0.0) {
            row.conditional.emplace_back(std::nullopt);
          } else {
            row.conditional.emplace_back(
                conditional_renyi_from_values(v, weights, values, alpha));
          }
        }
      }
      rows[ti * orders.size() + oi] = std::move(row);
    }
  });

  std::ostringstream s;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json item{{"n", r.n}, {"alpha", r.alpha}, {"tsallis", r.tsallis}, {"renyi", r.renyi}};
      if (prior) {
        json cond;
        for (std::size_t i = 0; i < variants.size(); ++i) {
          cond[std::string(to_string(variants[i]))] = json_number_or_null(r.conditional[i]);
        }
        item["conditional"] = cond;
      }
      arr.push_back(item);
    }
    s << arr.dump(2) << '\n';
  } else {
    s << "n,alpha,tsallis,renyi";
    if (prior) {
      for (Variant v : variants) s << ",renyi_" << to_string(v);
    }
    s << '\n';
    for (const auto& r : rows) {
      s << r.n << ',' << format_double(r.alpha) << ',' << format_double(r.tsallis) << ','
        << format_double(r.renyi);
      for (const auto& c : r.conditional) s << ',' << number_or_na(c);
      s << '\n';
    }
  }
  emit(cfg.out, s.str(), out);
  return kOk;
}

int cmd_limit(const ExperimentConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  const Coin coin = resolve_coin(cfg, rng);
  const auto prior = resolve_ensemble(cfg);
  const QubitState state = resolve_state(cfg.state, rng);
  const auto orders = resolve_orders(cfg, {0.5});
  const auto variants = resolve_variants(cfg);
  check_format(cfg);
  const LimitDensity ld = make_limit_density(coin, state);

  struct Row {
    double alpha;
    QuadratureResult integral;
    double renyi;
    double tsallis;
    std::vector<std::optional<double>> conditional;
  };
  std::vector<Row> rows(orders.size());
  parallel_for(orders.size(), cfg.jobs, [&](std::size_t i) {
    const double alpha = orders[i];
    Row row;
    row.alpha = alpha;
    row.integral = integral_falpha(ld, alpha);
    row.renyi = std::log2(row.integral.value) / (1.0 - alpha);
    row.tsallis = (row.integral.value - 1.0) / (1.0 - alpha);
    if (prior) {
      for (Variant v : variants) {
        if (v == Variant::A && alpha == 0.0) {
          row.conditional.emplace_back(std::nullopt);
        } else {
          row.conditional.emplace_back(conditional_renyi_limit(v, coin, *prior, alpha));
        }
      }
    }
    rows[i] = std::move(row);
  });

  std::ostringstream s;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json item{{"alpha", r.alpha},
                {"integral", r.integral.value},
                {"integral_error", r.integral.error},
                {"renyi_limit", r.renyi},
                {"tsallis_limit", r.tsallis}};
      if (prior) {
        json cond;
        for (std::size_t i = 0; i < variants.size(); ++i) {
          cond[std::string(to_string(variants[i]))] = json_number_or_null(r.conditional[i]);
        }
        item["conditional_limit"] = cond;
      }
      arr.push_back(item);
    }
    s << arr.dump(2) << '\n';
  } else {
    s << "alpha,integral,integral_error,renyi_limit,tsallis_limit";
    if (prior) {
      for (Variant v : variants) s << ",limit_" << to_string(v);
    }
    s << '\n';
    for (const auto& r : rows) {
      s << format_double(r.alpha) << ',' << format_double(r.integral.value) << ','
        << format_double(r.integral.error) << ',' << format_double(r.renyi) << ','
        << format_double(r.tsallis);
      for (const auto& c : r.conditional) s << ',' << number_or_na(c);
      s << '\n';
    }
  }
  emit(cfg.out, s.str(), out);
  return kOk;
}

int cmd_converge(const CLI::App* sub, const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  const Coin coin = resolve_coin(cfg, rng);
  const auto prior = resolve_ensemble(cfg);
  const QubitState state = resolve_state(cfg.state, rng);
  const auto orders = resolve_orders(cfg, {0.5});
  const auto times = resolve_times(sub, cfg, true);
  const auto variants = resolve_variants(cfg);
  check_format(cfg);
  SeriesOptions options;
  options.method = parse_method(cfg.method.empty() ? "closedform" : cfg.method);
  options.parity_average = cfg.parity;
  options.jobs = cfg.jobs;

  std::vector<ConvergenceSeries> series;
  for (double alpha : orders) {
    if (!prior || sub->get_option("--state")->count() > 0) {
      series.push_back(renyi_gap_series(coin, state, alpha, times, options));
      series.push_back(tsallis_scaled_series(coin, state, alpha, times, options));
    }
    if (prior) {
      for (Variant v : variants) {
        if (v == Variant::A && alpha == 0.0) continue;
        series.push_back(conditional_gap_series(v, coin, *prior, alpha, times, options));
      }
    }
  }
  ReportOptions report_options;
  report_options.threshold = cfg.threshold;
  const Report report = convergence_report(std::move(series), report_options);

  std::ostringstream csv;
  write_report_csv(csv, report);
  const std::string summary = report_json(report) + "\n";
  if (cfg.out == "-") {
    emit("-", cfg.format == "json" ? summary : csv.str(), out);
  } else if (cfg.format == "json") {
    emit(cfg.out, summary, out);
  } else {
    emit(cfg.out, csv.str(), out);
    emit(with_suffix(cfg.out, "", ".json"), summary, out);
  }
  for (const auto& v : report.verdicts) {
    err << to_string(v.overall) << "  " << v.id << "  gap " << format_double(v.first_gap)
        << " -> " << format_double(v.last_gap) << " (threshold " << report.threshold
        << ")\n";
  }
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivergentIntegral: return kDivergent;
    case ErrorKind::NonConvergedQuadrature:
    case ErrorKind::DivergentScale: return kNumeric;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact discrete-time quantum walk distributions, entropies and their limits",
               "qwalk"};
  app.require_subcommand(1);
  ExperimentConfig cfg;
  auto* simulate = app.add_subcommand("simulate", "write position distributions");
  auto* entropy = app.add_subcommand("entropy", "Tsallis / Renyi / conditional Renyi entropies");
  auto* limit = app.add_subcommand("limit", "limit-density integrals and limiting entropies");
  auto* converge = app.add_subcommand("converge", "finite-n statistics against their limits");
  for (auto* sub : {simulate, entropy, limit, converge}) add_common(sub, cfg);
  converge->add_option("--threshold", cfg.threshold, "gap threshold for the verdict");
  converge->add_flag("--parity", cfg.parity, "also report the mean of n and n+1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    merge_config_file(sub, cfg);
    if (sub == simulate) return cmd_simulate(sub, cfg, out);
    if (sub == entropy) return cmd_entropy(sub, cfg, out);
    if (sub == limit) return cmd_limit(cfg, out);
    return cmd_converge(sub, cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace qwalk::cli
