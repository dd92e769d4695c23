#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/coin.hpp"
#include "qwalk/error.hpp"
#include "qwalk/sampling.hpp"

using namespace qwalk;

namespace {

const double kHalfRoot = std::numbers::sqrt2 / 2.0;

bool near(Complex x, Complex y, double tol = 1e-15) { return std::abs(x - y) <= tol; }

void check_unitary(const Coin& c) {
  CHECK(std::abs(std::norm(c.a()) + std::norm(c.b()) - 1.0) < kInvariantTol);
  CHECK(std::abs(std::norm(c.c()) + std::norm(c.d()) - 1.0) < kInvariantTol);
  CHECK(std::abs(c.a() * std::conj(c.c()) + c.b() * std::conj(c.d())) < kInvariantTol);
  CHECK(std::abs(std::abs(c.delta()) - 1.0) < kInvariantTol);
  CHECK(std::abs(c.a() * c.d() - c.b() * c.c() - c.delta()) < kInvariantTol);
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

TEST_CASE("make_coin derives c and d") {
  SUBCASE("hadamard") {
    const Coin h = make_coin(kHalfRoot, kHalfRoot, -1.0);
    CHECK(near(h.c(), kHalfRoot));
    CHECK(near(h.d(), -kHalfRoot));
    CHECK(h.nondegenerate());
  }
  SUBCASE("identity is valid but degenerate") {
    const Coin id = make_coin(1.0, 0.0, 1.0);
    CHECK(near(id.c(), 0.0));
    CHECK(near(id.d(), 1.0));
    CHECK_FALSE(id.nondegenerate());
  }
  SUBCASE("complex entries") {
    const Coin c = make_coin(0.8, Complex(0, 0.6), Complex(0, 1));
    CHECK(near(c.c(), -0.6));
    CHECK(near(c.d(), Complex(0, 0.8)));
    check_unitary(c);
  }
}

TEST_CASE("make_coin rejects bad input") {
  CHECK(kind_of([] { make_coin(0.8, 0.8, -1.0); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { make_coin(0.8, 0.6, 1.1); }) == ErrorKind::BadDeterminant);
  // Within the construction tolerance.
  CHECK_NOTHROW(make_coin(0.8, 0.6 + 1e-11, -1.0));
}

TEST_CASE("named coins") {
  const Coin h = named_coin("hadamard");
  CHECK(near(h.a(), kHalfRoot));
  CHECK(near(h.b(), kHalfRoot));
  CHECK(near(h.c(), kHalfRoot));
  CHECK(near(h.d(), -kHalfRoot));

  const Coin r4 = rotation_coin(std::numbers::pi / 4);
  CHECK(near(r4.a(), h.a()));
  CHECK(near(r4.d(), h.d()));

  const Coin r3 = named_coin("rotation(pi/3)");
  CHECK(near(r3.a(), 0.5));
  CHECK(near(r3.b(), std::sqrt(3.0) / 2));
  CHECK(near(r3.c(), std::sqrt(3.0) / 2));
  CHECK(near(r3.d(), -0.5));
  CHECK(near(named_coin("rotation(1.0471975511965976)").b(), r3.b()));

  CHECK(kind_of([] { named_coin("grover"); }) == ErrorKind::UnknownName);
}

TEST_CASE("make_state") {
  const QubitState l = make_state(1.0, 0.0);
  CHECK(l.alpha() == Complex(1.0));
  const QubitState sym = make_state(kHalfRoot, Complex(0, kHalfRoot));
  CHECK(sym.beta() == Complex(0, kHalfRoot));
  CHECK_NOTHROW(make_state(0.6, Complex(0, 0.8)));
  CHECK(kind_of([] { make_state(0.6, 0.6); }) == ErrorKind::NotNormalized);
}

TEST_CASE("decompose") {
  const auto hd = decompose(named_coin("hadamard"));
  CHECK(near(hd.p[0][0], kHalfRoot));
  CHECK(near(hd.p[0][1], kHalfRoot));
  CHECK(hd.p[1][0] == Complex{});
  CHECK(hd.q[0][0] == Complex{});
  CHECK(near(hd.q[1][1], -kHalfRoot));

  const auto id = decompose(make_coin(1.0, 0.0, 1.0));
  CHECK(id.p[0][0] == Complex(1.0));
  CHECK(id.q[1][1] == Complex(1.0));
  CHECK(id.p[0][1] == Complex{});
}

TEST_CASE("random coins: unitarity and exact P + Q reassembly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Coin c = random_coin(rng);
    check_unitary(c);
    const auto parts = decompose(c);
    const auto u = c.matrix();
    for (int r = 0; r < 2; ++r) {
      for (int col = 0; col < 2; ++col) {
        CHECK(parts.p[r][col] + parts.q[r][col] == u[r][col]);
      }
    }
    CHECK(parts.r[0][0] == c.c());
    CHECK(parts.r[0][1] == c.d());
    CHECK(parts.s[1][0] == c.a());
    CHECK(parts.s[1][1] == c.b());
  }
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("0.70710678+0j") == Complex(0.70710678, 0.0));
  CHECK(parse_complex("1") == Complex(1.0, 0.0));
  CHECK(parse_complex("-0.5-2j") == Complex(-0.5, -2.0));
  CHECK(parse_complex("1e-3+2.5e+1j") == Complex(1e-3, 25.0));
  CHECK(parse_complex("j") == Complex(0.0, 1.0));
  CHECK(parse_complex("-0.8i") == Complex(0.0, -0.8));
  CHECK(kind_of([] { parse_complex("abc"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_complex(""); }) == ErrorKind::ParseError);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 100; ++i) {
    const Complex z(gauss(rng), gauss(rng));
    CHECK(parse_complex(format_complex(z)) == z);
  }
}
