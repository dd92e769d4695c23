#include "qwalk/scaled_real.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

// Exponents this large only arise from a runaway recurrence.
constexpr std::int64_t kExponentLimit = std::int64_t{1} << 52;

}  // namespace

ScaledReal::ScaledReal(double value) : mantissa_(value), exponent_(0) { normalize(); }

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  ScaledReal out;
  out.mantissa_ = mantissa;
  out.exponent_ = exponent;
  out.normalize();
  return out;
}

void ScaledReal::normalize() {
  if (!std::isfinite(mantissa_)) {
    throw Error(ErrorKind::DivergentScale, "non-finite mantissa");
  }
  if (mantissa_ == 0.0) {
    exponent_ = 0;
    return;
  }
  int shift = 0;
  mantissa_ = 2.0 * std::frexp(mantissa_, &shift);
  exponent_ += shift - 1;
  if (exponent_ > kExponentLimit || exponent_ < -kExponentLimit) {
    throw Error(ErrorKind::DivergentScale,
                "exponent " + std::to_string(exponent_) + " out of range");
  }
}

double ScaledReal::to_double() const {
  if (is_zero()) return 0.0;
  if (exponent_ > std::numeric_limits<double>::max_exponent) {
    throw Error(ErrorKind::DivergentScale, "value exceeds double range");
  }
  if (exponent_ < std::numeric_limits<double>::min_exponent - 60) return 0.0 * mantissa_;
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

double ScaledReal::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(std::abs(mantissa_)) + static_cast<double>(exponent_);
}

ScaledReal ScaledReal::pow(std::int64_t power) const {
  if (power < 0) return ScaledReal(1.0) / pow(-power);
  ScaledReal result(1.0);
  ScaledReal base = *this;
  while (power > 0) {
    if (power & 1) result *= base;
    base *= base;
    power >>= 1;
  }
  return result;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  const std::int64_t diff = exponent_ - rhs.exponent_;
  // Beyond 64 binary orders the smaller operand cannot affect the sum.
  if (diff > 64) return *this;
  if (diff < -64) return *this = rhs;
  if (diff >= 0) {
    mantissa_ += std::ldexp(rhs.mantissa_, static_cast<int>(-diff));
  } else {
    mantissa_ = std::ldexp(mantissa_, static_cast<int>(diff)) + rhs.mantissa_;
    exponent_ = rhs.exponent_;
  }
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::DivergentScale, "division by zero");
  mantissa_ /= rhs.mantissa_;
  exponent_ -= rhs.exponent_;
  normalize();
  return *this;
}

}  // namespace qwalk
