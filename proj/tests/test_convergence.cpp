#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "qwalk/convergence.hpp"
#include "qwalk/error.hpp"
#include "qwalk/limitdist.hpp"

using namespace qwalk;

namespace {

const double kHalfRoot = std::numbers::sqrt2 / 2.0;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

QubitState symmetric() { return make_state(kHalfRoot, Complex(0, kHalfRoot)); }

double oracle_renyi(const Coin& coin, const QubitState& state, std::int64_t n, double alpha) {
  long double sum = 0.0L;
  for (const auto& [x, p] : oracle::enumerate_paths(coin, state, n)) {
    if (p > 0.0) sum += std::pow(static_cast<long double>(p), static_cast<long double>(alpha));
  }
  return static_cast<double>(std::log2(sum) / (1.0L - alpha));
}

}  // namespace

TEST_CASE("default schedule") {
  const auto s = default_schedule();
  CHECK(s == std::vector<std::int64_t>{128, 256, 512, 1024, 2048, 4096, 8192});
}

TEST_CASE("compute_distribution routes agree") {
  const Coin h = named_coin("hadamard");
  for (std::int64_t n : {0, 1, 2, 7, 40}) {
    const auto e = compute_distribution(h, symmetric(), n, Method::Evolve);
    const auto c = compute_distribution(h, symmetric(), n, Method::ClosedForm);
    REQUIRE(e.size() == c.size());
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e.probs[i] - c.probs[i]) < 1e-13);
  }
  // Degenerate coin falls back to stepping.
  const auto id = compute_distribution(named_coin("identity"), make_state(1.0, 0.0), 5,
                                       Method::ClosedForm);
  CHECK(id.at(-5) == 1.0);
  CHECK(parse_method("evolve") == Method::Evolve);
  CHECK(kind_of([] { parse_method("fast"); }) == ErrorKind::ParseError);
}

TEST_CASE("renyi series against a path-sum oracle") {
  const Coin h = named_coin("hadamard");
  const std::vector<std::int64_t> sched{4, 8, 12};
  const auto s = renyi_gap_series(h, symmetric(), 0.5, sched);
  const double limit = renyi_limit(make_limit_density(h, symmetric()), 0.5);
  CHECK(s.limit_value == limit);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const double expected = oracle_renyi(h, symmetric(), sched[i], 0.5) -
                            std::log2(static_cast<double>(sched[i]) / 2.0);
    CHECK(s.finite_values[i] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(s.gaps[i] == doctest::Approx(std::abs(expected - limit)).epsilon(1e-12));
  }
  CHECK_FALSE(s.informational);
  CHECK(s.parity_average.empty());
}

TEST_CASE("evolve and closed-form series agree") {
  const Coin c = make_coin(Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(1.0, 0.0));
  const QubitState st = make_state(Complex(0.3, 0.4), Complex(0.0, std::sqrt(0.75)));
  const std::vector<std::int64_t> sched{16, 50, 101, 200};
  for (double alpha : {0.0, 0.5, 1.5}) {
    SeriesOptions ev{.method = Method::Evolve};
    SeriesOptions cf{.method = Method::ClosedForm};
    const auto a = renyi_gap_series(c, st, alpha, sched, ev);
    const auto b = renyi_gap_series(c, st, alpha, sched, cf);
    const auto ta = tsallis_scaled_series(c, st, alpha, sched, ev);
    const auto tb = tsallis_scaled_series(c, st, alpha, sched, cf);
    for (std::size_t i = 0; i < sched.size(); ++i) {
      CHECK(std::abs(a.finite_values[i] - b.finite_values[i]) < 1e-8);
      CHECK(std::abs(ta.finite_values[i] - tb.finite_values[i]) < 1e-8);
    }
  }
}

TEST_CASE("tsallis series is the renyi series under the order correspondence") {
  const Coin h = named_coin("hadamard");
  const std::vector<std::int64_t> sched{32, 64};
  for (double alpha : {0.5, 1.5}) {
    const auto r = renyi_gap_series(h, symmetric(), alpha, sched);
    const auto t = tsallis_scaled_series(h, symmetric(), alpha, sched);
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const double expected = (std::exp2((1.0 - alpha) * r.finite_values[i]) - 1.0) / (1.0 - alpha);
      CHECK(t.finite_values[i] == doctest::Approx(expected).epsilon(1e-10));
    }
    const double limit_expected = (std::exp2((1.0 - alpha) * r.limit_value) - 1.0) / (1.0 - alpha);
    CHECK(t.limit_value == doctest::Approx(limit_expected).epsilon(1e-12));
  }
}

TEST_CASE("conditional series") {
  const Coin h = named_coin("hadamard");
  const std::vector<std::int64_t> sched{20, 40};
  const EnsemblePrior single({{symmetric(), 1.0}});
  const auto r = renyi_gap_series(h, symmetric(), 0.5, sched);
  for (Variant v : kAllVariants) {
    const auto c = conditional_gap_series(v, h, single, 0.5, sched);
    for (std::size_t i = 0; i < sched.size(); ++i) {
      CHECK(c.finite_values[i] == doctest::Approx(r.finite_values[i]).epsilon(1e-12));
    }
    CHECK(c.limit_value == doctest::Approx(r.limit_value).epsilon(1e-12));
  }
  const EnsemblePrior two({{make_state(1.0, 0.0), 0.5}, {make_state(0.0, 1.0), 0.5}});
  CHECK(kind_of([&] { conditional_gap_series(Variant::A, h, two, 0.0, sched); }) ==
        ErrorKind::VariantDomain);
}

TEST_CASE("parity average and jobs") {
  const Coin h = named_coin("hadamard");
  const std::vector<std::int64_t> sched{10, 30};
  const auto serial = renyi_gap_series(h, symmetric(), 0.5, sched, {.parity_average = true});
  const auto threaded =
      renyi_gap_series(h, symmetric(), 0.5, sched, {.parity_average = true, .jobs = 3});
  CHECK(serial.finite_values == threaded.finite_values);
  CHECK(serial.parity_average == threaded.parity_average);
  const std::vector<std::int64_t> odd{11, 31};
  const auto next = renyi_gap_series(h, symmetric(), 0.5, odd);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    CHECK(serial.parity_average[i] ==
          doctest::Approx(0.5 * (serial.finite_values[i] + next.finite_values[i])).epsilon(1e-14));
  }
}

TEST_CASE("schedule and order validation") {
  const Coin h = named_coin("hadamard");
  const auto st = symmetric();
  const std::vector<std::int64_t> empty;
  CHECK(kind_of([&] { renyi_gap_series(h, st, 0.5, empty); }) == ErrorKind::DomainError);
  const std::vector<std::int64_t> decreasing{64, 32};
  CHECK(kind_of([&] { renyi_gap_series(h, st, 0.5, decreasing); }) == ErrorKind::DomainError);
  const std::vector<std::int64_t> too_small{1, 4};
  CHECK(kind_of([&] { renyi_gap_series(h, st, 0.5, too_small); }) == ErrorKind::DomainError);
  const std::vector<std::int64_t> too_big{kMaxScheduledTime + 1};
  CHECK(kind_of([&] { renyi_gap_series(h, st, 0.5, too_big); }) == ErrorKind::DomainError);
  const std::vector<std::int64_t> ok{8};
  CHECK(kind_of([&] { renyi_gap_series(h, st, 2.0, ok); }) == ErrorKind::DivergentIntegral);
  CHECK(kind_of([&] { tsallis_scaled_series(h, st, 1.0, ok); }) == ErrorKind::BadOrder);
}

TEST_CASE("report verdicts") {
  const Coin h = named_coin("hadamard");
  const auto st = symmetric();
  const std::vector<std::int64_t> one{64};
  const std::vector<std::int64_t> sched{64, 256, 1024};

  const auto single = convergence_report({renyi_gap_series(h, st, 0.5, one)});
  CHECK(single.verdicts[0].trend == Verdict::NotApplicable);

  auto report = convergence_report({renyi_gap_series(h, st, 0.5, sched),
                                    renyi_gap_series(h, st, 0.0, sched),
                                    tsallis_scaled_series(h, st, 0.5, sched)});
  REQUIRE(report.verdicts.size() == 3);
  CHECK(report.verdicts[1].overall == Verdict::Informational);
  CHECK(report.verdicts[0].overall == Verdict::Pass);
  CHECK(report.all_pass());

  const auto strict = convergence_report({renyi_gap_series(h, st, 0.5, sched)}, {.threshold = 1e-6});
  CHECK(strict.verdicts[0].threshold == Verdict::Fail);
  CHECK(strict.verdicts[0].overall == Verdict::Fail);
  CHECK_FALSE(strict.all_pass());

  std::ostringstream csv;
  write_report_csv(csv, report);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  CHECK(line == "series_id,n,finite_value,limit_value,gap");
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 9);

  const auto j = nlohmann::json::parse(report_json(report));
  CHECK(j["series"].size() == 3);
  CHECK(j["series"][1]["verdict"] == "INFORMATIONAL");
  CHECK(j["all_pass"] == true);
  CHECK(j["threshold"] == 0.05);
  CHECK(j["series"][0]["gaps"].size() == 3);
}
