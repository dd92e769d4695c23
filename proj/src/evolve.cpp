#include "qwalk/evolve.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "qwalk/error.hpp"

namespace qwalk {

AmplitudeField::AmplitudeField(std::int64_t time, std::vector<Amplitude> amplitudes)
    : time_(time), amps_(std::move(amplitudes)) {
  if (time_ < 0 || amps_.size() != static_cast<std::size_t>(time_ + 1)) {
    throw std::invalid_argument("AmplitudeField: expected n+1 amplitudes");
  }
}

AmplitudeField::Amplitude AmplitudeField::at(std::int64_t x) const {
  const std::int64_t offset = x + time_;
  if (offset < 0 || offset > 2 * time_ || offset % 2 != 0) return {};
  return amps_[static_cast<std::size_t>(offset / 2)];
}

double AmplitudeField::norm() const {
  std::vector<double> p;
  p.reserve(amps_.size());
  for (const auto& [l, r] : amps_) p.push_back(std::norm(l) + std::norm(r));
  return compensated_sum(p);
}

AmplitudeField initial_field(const QubitState& state) {
  return AmplitudeField(0, {{state.alpha(), state.beta()}});
}

namespace {

using Wide = std::complex<long double>;

// Coin entries rescaled in extended precision so that each row has unit norm;
// the rounded double entries of e.g. the Hadamard coin do not, and the excess
// would otherwise compound once per step.
std::array<Wide, 4> unit_rows(const Coin& coin) {
  std::array<Wide, 4> m{Wide(coin.a()), Wide(coin.b()), Wide(coin.c()), Wide(coin.d())};
  const long double top = std::sqrt(std::norm(m[0]) + std::norm(m[1]));
  const long double bottom = std::sqrt(std::norm(m[2]) + std::norm(m[3]));
  m[0] /= top;
  m[1] /= top;
  m[2] /= bottom;
  m[3] /= bottom;
  return m;
}

Complex apply(const Wide& x, const Wide& y, const Complex& u, const Complex& v) {
  const long double ur = u.real(), ui = u.imag(), vr = v.real(), vi = v.imag();
  const long double re = x.real() * ur - x.imag() * ui + y.real() * vr - y.imag() * vi;
  const long double im = x.real() * ui + x.imag() * ur + y.real() * vi + y.imag() * vr;
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

AmplitudeField step(const AmplitudeField& field, const Coin& coin) {
  const auto& old = field.amplitudes();
  const std::size_t n = old.size() - 1;
  std::vector<AmplitudeField::Amplitude> next(n + 2);
  const auto [a, b, c, d] = unit_rows(coin);
  // New index j sits at x = -(n+1) + 2j; its left-mover comes from old index j
  // (x+1) and its right-mover from old index j-1 (x-1).
  for (std::size_t j = 0; j <= n; ++j) {
    next[j][0] = apply(a, b, old[j][0], old[j][1]);
    next[j + 1][1] = apply(c, d, old[j][0], old[j][1]);
  }
  return AmplitudeField(field.time() + 1, std::move(next));
}

Distribution to_distribution(const AmplitudeField& field) {
  Distribution out;
  out.time = field.time();
  out.support = parity_support(field.time());
  out.probs.reserve(field.amplitudes().size());
  for (const auto& [l, r] : field.amplitudes()) {
    out.probs.push_back(std::norm(l) + std::norm(r));
  }
  return out;
}

Distribution run(const Coin& coin, const QubitState& state, std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::DomainError, "negative step count");
  AmplitudeField field = initial_field(state);
  for (std::int64_t t = 0; t < n; ++t) field = step(field, coin);
  return to_distribution(field);
}

}  // namespace qwalk
