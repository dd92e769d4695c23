#include "qwalk/coin.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

Coin make_coin(Complex a, Complex b, Complex delta) {
  const double norm = std::norm(a) + std::norm(b);
  if (!(std::abs(norm - 1.0) <= kConstructionTol)) {
    throw Error(ErrorKind::NotNormalized,
                "|a|^2 + |b|^2 = " + std::to_string(norm));
  }
  if (!(std::abs(std::abs(delta) - 1.0) <= kConstructionTol)) {
    throw Error(ErrorKind::BadDeterminant,
                "|delta| = " + std::to_string(std::abs(delta)));
  }
  return Coin(a, b, -delta * std::conj(b), delta * std::conj(a), delta);
}

Coin rotation_coin(double theta) {
  return make_coin(std::cos(theta), std::sin(theta), -1.0);
}

namespace {

double parse_real(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::ParseError,
                "not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Coin named_coin(std::string_view name) {
  if (name == "hadamard") {
    return make_coin(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2, -1.0);
  }
  if (name == "identity") return make_coin(1.0, 0.0, 1.0);
  constexpr std::string_view prefix = "rotation(";
  if (name.starts_with(prefix) && name.ends_with(")")) {
    auto arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    double theta = 0.0;
    // Allow "pi/3"-style arguments besides plain radians.
    if (arg.starts_with("pi/")) {
      theta = std::numbers::pi / parse_real(arg.substr(3));
    } else if (arg == "pi") {
      theta = std::numbers::pi;
    } else {
      theta = parse_real(arg);
    }
    return rotation_coin(theta);
  }
  throw Error(ErrorKind::UnknownName, "unknown coin '" + std::string(name) + "'");
}

QubitState make_state(Complex alpha, Complex beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (!(std::abs(norm - 1.0) <= kConstructionTol)) {
    throw Error(ErrorKind::NotNormalized,
                "|alpha|^2 + |beta|^2 = " + std::to_string(norm));
  }
  return QubitState(alpha, beta);
}

CoinDecomposition decompose(const Coin& coin) {
  const Complex zero{};
  CoinDecomposition out;
  out.p = {{{coin.a(), coin.b()}, {zero, zero}}};
  out.q = {{{zero, zero}, {coin.c(), coin.d()}}};
  out.r = {{{coin.c(), coin.d()}, {zero, zero}}};
  out.s = {{{zero, zero}, {coin.a(), coin.b()}}};
  return out;
}

double cross_term(const Coin& coin, const QubitState& state) {
  const Complex t = coin.a() * state.alpha() * std::conj(coin.b() * state.beta());
  return 2.0 * t.real();
}

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty complex literal");
  const char last = text.back();
  if (last != 'j' && last != 'i') return {parse_real(text), 0.0};

  auto body = text.substr(0, text.size() - 1);
  // The split point is the last sign that is not the leading one and not part
  // of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
        body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (body.empty() || body == "+") return {0.0, 1.0};
    if (body == "-") return {0.0, -1.0};
    return {0.0, parse_real(body)};
  }
  auto imag_text = body.substr(split);
  double imag = 0.0;
  if (imag_text == "+") {
    imag = 1.0;
  } else if (imag_text == "-") {
    imag = -1.0;
  } else {
    imag = parse_real(imag_text);
  }
  return {parse_real(body.substr(0, split)), imag};
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

}  // namespace qwalk
