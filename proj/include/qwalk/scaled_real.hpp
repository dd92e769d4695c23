#pragma once

#include <cstdint>

namespace qwalk {

/// A real number mantissa * 2^exponent with |mantissa| in [1, 2) (or exactly
/// zero). Arithmetic renormalizes after every operation, so long products
/// such as |a|^(2n) times large Jacobi values neither underflow nor overflow.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;
  ScaledReal(double value);  // NOLINT(google-explicit-constructor)

  static ScaledReal from_parts(double mantissa, std::int64_t exponent);

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }
  int sign() const noexcept { return (mantissa_ > 0) - (mantissa_ < 0); }

  /// Nearest double; underflows to zero and throws DivergentScale instead of
  /// returning infinity.
  double to_double() const;
  /// log2 |value|; -inf for zero.
  double log2_abs() const;

  ScaledReal pow(std::int64_t power) const;

  ScaledReal operator-() const { return from_parts(-mantissa_, exponent_); }
  ScaledReal& operator+=(const ScaledReal& rhs);
  ScaledReal& operator-=(const ScaledReal& rhs) { return *this += -rhs; }
  ScaledReal& operator*=(const ScaledReal& rhs);
  ScaledReal& operator/=(const ScaledReal& rhs);

  friend ScaledReal operator+(ScaledReal lhs, const ScaledReal& rhs) { return lhs += rhs; }
  friend ScaledReal operator-(ScaledReal lhs, const ScaledReal& rhs) { return lhs -= rhs; }
  friend ScaledReal operator*(ScaledReal lhs, const ScaledReal& rhs) { return lhs *= rhs; }
  friend ScaledReal operator/(ScaledReal lhs, const ScaledReal& rhs) { return lhs /= rhs; }

 private:
  void normalize();

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

}  // namespace qwalk
