#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "qwalk/entropy.hpp"
#include "qwalk/error.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/sampling.hpp"

using namespace qwalk;

namespace {

const double kHalfRoot = std::numbers::sqrt2 / 2.0;

Distribution make_dist(std::vector<double> probs) {
  Distribution d;
  d.time = static_cast<std::int64_t>(probs.size()) - 1;
  d.support = parity_support(d.time);
  d.probs = std::move(probs);
  return d;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("OrderParam") {
  CHECK(OrderParam::finite(0.0).value() == 0.0);
  CHECK(kind_of([] { OrderParam::finite(1.0); }) == ErrorKind::BadOrder);
  CHECK(kind_of([] { OrderParam::finite(-0.5); }) == ErrorKind::BadOrder);
  CHECK(kind_of([] { (void)OrderParam::shannon().value(); }) == ErrorKind::BadOrder);
  CHECK(OrderParam::parse("min").kind() == OrderParam::Kind::Min);
  CHECK(OrderParam::parse("shannon").kind() == OrderParam::Kind::Shannon);
  CHECK(OrderParam::parse("2.5").value() == 2.5);
  CHECK(kind_of([] { OrderParam::parse("two"); }) == ErrorKind::ParseError);
}

TEST_CASE("Tsallis entropy") {
  CHECK(tsallis(make_dist({0.5, 0.5}), 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tsallis(make_dist({0.0, 1.0, 0.0}), 0.5) == 0.0);
  CHECK(tsallis(make_dist({0.0, 1.0, 0.0}), 3.0) == 0.0);
  CHECK(tsallis(make_dist({0.25, 0.5, 0.25}), 2.0) == doctest::Approx(0.625).epsilon(1e-15));
  // Zero sites contribute nothing at order 0: support size 2 -> (2 - 1)/1.
  CHECK(tsallis(make_dist({0.0, 0.5, 0.5}), 0.0) == 1.0);
  CHECK(kind_of([] { tsallis(make_dist({1.0}), 1.0); }) == ErrorKind::BadOrder);
}

TEST_CASE("Renyi entropy") {
  const auto uniform4 = make_dist({0.25, 0.25, 0.25, 0.25});
  CHECK(renyi(uniform4, OrderParam::finite(2.0)) == 2.0);
  CHECK(renyi(uniform4, OrderParam::finite(0.0)) == 2.0);
  CHECK(renyi(uniform4, OrderParam::shannon()) == 2.0);
  CHECK(renyi(uniform4, OrderParam::min()) == 2.0);

  const auto point = make_dist({0.0, 1.0, 0.0});
  for (const auto& order : {OrderParam::finite(0.0), OrderParam::finite(0.5),
                            OrderParam::finite(3.0), OrderParam::shannon(), OrderParam::min()}) {
    CHECK(renyi(point, order) == 0.0);
  }

  const auto three = make_dist({0.25, 0.5, 0.25});
  CHECK(renyi(three, OrderParam::min()) == 1.0);
  CHECK(renyi(three, OrderParam::shannon()) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(renyi(three, OrderParam::finite(2.0)) ==
        doctest::Approx(-std::log2(0.375)).epsilon(1e-15));

  SUBCASE("limits in the order") {
    const auto d = run(named_coin("hadamard"), make_state(1.0, 0.0), 30);
    CHECK(renyi(d, OrderParam::finite(1.0 + 1e-7)) ==
          doctest::Approx(renyi(d, OrderParam::shannon())).epsilon(1e-6));
    CHECK(renyi(d, OrderParam::finite(2000.0)) ==
          doctest::Approx(renyi(d, OrderParam::min())).epsilon(1e-2));
  }
}

TEST_CASE("tiny probabilities do not underflow the power sum") {
  const double tiny = 1e-300;
  std::vector<double> p{1.0 - 2 * tiny, tiny, tiny};
  CHECK(power_sum(p, 0.5) == doctest::Approx(1.0 + 2e-150).epsilon(1e-15));
  CHECK(std::isfinite(renyi(make_dist(p), OrderParam::finite(1.5))));
}

TEST_CASE("Tsallis-Renyi correspondence") {
  CHECK(tsallis_from_renyi(0.0, 0.3) == 0.0);
  CHECK(tsallis_from_renyi(2.0, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(kind_of([] { tsallis_from_renyi(1.0, 1.0); }) == ErrorKind::BadOrder);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = run(random_coin(rng), random_state(rng), 5 + trial * 3);
    for (double alpha : {0.0, 0.3, 0.5, 1.5, 2.0, 4.0}) {
      CHECK(std::abs(tsallis_from_renyi(renyi(d, OrderParam::finite(alpha)), alpha) -
                     tsallis(d, alpha)) < 1e-12);
    }
  }
}

TEST_CASE("Renyi is nonincreasing in the order and bounded below by min-entropy") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = run(random_coin(rng), random_state(rng), 1 + trial * 7);
    const std::vector<OrderParam> grid{OrderParam::finite(0.0), OrderParam::finite(0.5),
                                       OrderParam::shannon(),   OrderParam::finite(2.0),
                                       OrderParam::finite(5.0), OrderParam::min()};
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(renyi(d, grid[i]) <= renyi(d, grid[i - 1]) + 1e-12);
    }
    const double floor = renyi(d, OrderParam::min());
    for (double alpha : {0.0, 0.7, 3.0, 9.0}) {
      CHECK(renyi(d, OrderParam::finite(alpha)) >= floor - 1e-12);
    }
  }
}

TEST_CASE("EnsemblePrior") {
  CHECK(kind_of([] { EnsemblePrior({}); }) == ErrorKind::BadParameter);
  CHECK(kind_of([] {
          EnsemblePrior({{make_state(1.0, 0.0), 0.6}, {make_state(0.0, 1.0), 0.6}});
        }) == ErrorKind::BadParameter);
  CHECK(kind_of([] {
          EnsemblePrior({{make_state(1.0, 0.0), 1.5}, {make_state(0.0, 1.0), -0.5}});
        }) == ErrorKind::BadParameter);

  const auto prior = ensemble_from_json(
      R"([{"alpha": "1+0j", "beta": "0+0j", "weight": 0.25},
          {"alpha": "0.6", "beta": "0+0.8j", "weight": 0.75}])");
  REQUIRE(prior.size() == 2);
  CHECK(prior.entries()[1].state.beta() == Complex(0.0, 0.8));
  CHECK(prior.weights() == std::vector<double>{0.25, 0.75});
  const auto again = ensemble_from_json(to_json(prior));
  CHECK(again.entries()[1].state.alpha() == prior.entries()[1].state.alpha());
  CHECK(again.weights() == prior.weights());

  CHECK(kind_of([] { ensemble_from_json("{}"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { ensemble_from_json(R"([{"alpha": "1"}])"); }) == ErrorKind::ParseError);
}

namespace {

struct Ensemble {
  Coin coin;
  EnsemblePrior prior;
  std::vector<std::pair<double, Distribution>> outcomes;
};

Ensemble walk_ensemble(std::uint64_t seed, std::int64_t n, std::size_t states) {
  std::mt19937_64 rng(seed);
  const Coin coin = random_coin(rng);
  std::vector<EnsemblePrior::Entry> entries;
  std::vector<double> raw;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < states; ++i) total += raw.emplace_back(u(rng));
  for (std::size_t i = 0; i < states; ++i) entries.push_back({random_state(rng), raw[i] / total});
  // Renormalize so the weights sum to 1 to within rounding.
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < states; ++i) sum += entries[i].weight;
  entries.back().weight = 1.0 - sum;
  EnsemblePrior prior(entries);
  std::vector<std::pair<double, Distribution>> outcomes;
  for (const auto& e : prior.entries()) outcomes.emplace_back(e.weight, run(coin, e.state, n));
  return {coin, prior, outcomes};
}

}  // namespace

TEST_CASE("conditional Renyi: reduced forms equal the defining expressions") {
  for (std::uint64_t seed : {61u, 67u, 71u}) {
    const auto ens = walk_ensemble(seed, 10, 3);
    for (double alpha : {0.5, 2.0, 0.0, 3.5}) {
      for (Variant v : kAllVariants) {
        if (v == Variant::A && alpha == 0.0) continue;
        const double reduced = conditional_renyi(v, ens.coin, ens.prior, 10, alpha);
        const double direct = conditional_renyi_direct(v, ens.outcomes, alpha);
        CHECK(std::abs(reduced - direct) < 1e-12);
      }
    }
  }
}

TEST_CASE("conditional Renyi special cases") {
  const Coin h = named_coin("hadamard");
  const auto sym = make_state(kHalfRoot, Complex(0, kHalfRoot));
  const EnsemblePrior single({{sym, 1.0}});
  const auto d = run(h, sym, 12);
  for (double alpha : {0.5, 2.0}) {
    const double r = renyi(d, OrderParam::finite(alpha));
    for (Variant v : kAllVariants) {
      CHECK(conditional_renyi(v, h, single, 12, alpha) == doctest::Approx(r).epsilon(1e-13));
    }
  }

  SUBCASE("shared distribution collapses every variant") {
    const auto shared = run(h, make_state(0.6, Complex(0, 0.8)), 9);
    const std::vector<std::pair<double, Distribution>> outcomes{{0.2, shared}, {0.8, shared}};
    for (double alpha : {0.5, 2.0}) {
      const double r = renyi(shared, OrderParam::finite(alpha));
      for (Variant v : kAllVariants) {
        CHECK(conditional_renyi_direct(v, outcomes, alpha) == doctest::Approx(r).epsilon(1e-13));
      }
    }
  }

  SUBCASE("RW and C on two basis states") {
    const EnsemblePrior two({{make_state(1.0, 0.0), 0.5}, {make_state(0.0, 1.0), 0.5}});
    const double r_l = renyi(run(h, make_state(1.0, 0.0), 10), OrderParam::finite(0.5));
    const double r_r = renyi(run(h, make_state(0.0, 1.0), 10), OrderParam::finite(0.5));
    CHECK(conditional_renyi(Variant::RW, h, two, 10, 0.5) == std::max(r_l, r_r));
    CHECK(conditional_renyi(Variant::C, h, two, 10, 0.5) ==
          doctest::Approx(0.5 * (r_l + r_r)).epsilon(1e-15));
    const std::vector<std::pair<double, Distribution>> outcomes{
        {0.5, run(h, make_state(1.0, 0.0), 10)}, {0.5, run(h, make_state(0.0, 1.0), 10)}};
    CHECK(std::abs(conditional_renyi_direct(Variant::RW, outcomes, 0.5) - std::max(r_l, r_r)) <
          1e-12);
  }

  CHECK(kind_of([&] { conditional_renyi(Variant::A, h, single, 5, 0.0); }) ==
        ErrorKind::VariantDomain);
  CHECK(kind_of([&] { conditional_renyi(Variant::H, h, single, 5, 1.0); }) ==
        ErrorKind::BadOrder);
}

TEST_CASE("RW dominates C below order 1, and is dominated above") {
  for (std::uint64_t seed : {73u, 79u, 83u, 89u}) {
    const auto ens = walk_ensemble(seed, 15, 3);
    for (double alpha : {0.0, 0.25, 0.75}) {
      CHECK(conditional_renyi(Variant::RW, ens.coin, ens.prior, 15, alpha) >=
            conditional_renyi(Variant::C, ens.coin, ens.prior, 15, alpha) - 1e-12);
    }
    for (double alpha : {1.5, 3.0}) {
      CHECK(conditional_renyi(Variant::RW, ens.coin, ens.prior, 15, alpha) <=
            conditional_renyi(Variant::C, ens.coin, ens.prior, 15, alpha) + 1e-12);
    }
  }
}

TEST_CASE("variant names") {
  for (Variant v : kAllVariants) CHECK(parse_variant(to_string(v)) == v);
  CHECK(kind_of([] { parse_variant("X"); }) == ErrorKind::ParseError);
}
