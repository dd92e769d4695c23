#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>

namespace qwalk {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Tolerance applied to user-supplied coin and state parameters.
inline constexpr double kConstructionTol = 1e-10;
/// Tolerance of the internal unitarity invariants.
inline constexpr double kInvariantTol = 1e-12;

/// A 2x2 unitary coin
///
///     U = [[a, b], [c, d]],   c = -delta * conj(b),   d = delta * conj(a)
///
/// with delta = det U. Only (a, b, delta) are free; c and d are derived, so a
/// Coin obtained from make_coin is unitary by construction.
class Coin {
 public:
  const Complex& a() const noexcept { return a_; }
  const Complex& b() const noexcept { return b_; }
  const Complex& c() const noexcept { return c_; }
  const Complex& d() const noexcept { return d_; }
  const Complex& delta() const noexcept { return delta_; }

  double abs_a() const { return std::abs(a_); }
  double abs_b() const { return std::abs(b_); }

  Matrix2 matrix() const { return {{{a_, b_}, {c_, d_}}}; }

  /// True when abcd != 0, the regime covered by the limit theorems and the
  /// closed-form probabilities.
  bool nondegenerate() const noexcept {
    return a_ != Complex{} && b_ != Complex{} && c_ != Complex{} &&
           d_ != Complex{};
  }

  friend Coin make_coin(Complex a, Complex b, Complex delta);

 private:
  Coin(Complex a, Complex b, Complex c, Complex d, Complex delta)
      : a_(a), b_(b), c_(c), d_(d), delta_(delta) {}

  Complex a_, b_, c_, d_, delta_;
};

Coin make_coin(Complex a, Complex b, Complex delta);

/// Rotation coin: a = cos(theta), b = sin(theta), delta = -1.
Coin rotation_coin(double theta);

/// "hadamard", "identity", or "rotation(<theta in radians>)".
Coin named_coin(std::string_view name);

/// Initial chirality state alpha|L> + beta|R>.
class QubitState {
 public:
  const Complex& alpha() const noexcept { return alpha_; }
  const Complex& beta() const noexcept { return beta_; }

  friend QubitState make_state(Complex alpha, Complex beta);

 private:
  QubitState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {}

  Complex alpha_, beta_;
};

QubitState make_state(Complex alpha, Complex beta);

/// P and Q split the coin into its left- and right-moving rows (P + Q = U);
/// R and S are the auxiliary matrices of the path-counting expansion.
struct CoinDecomposition {
  Matrix2 p;
  Matrix2 q;
  Matrix2 r;
  Matrix2 s;
};

CoinDecomposition decompose(const Coin& coin);

/// 2 Re(a alpha conj(b beta)), the interference term that recurs in every
/// closed form.
double cross_term(const Coin& coin, const QubitState& state);

/// Parses "re+imj", "re-imj", "re", "imj" (whitespace-free). Also accepts a
/// trailing "i" in place of "j".
Complex parse_complex(std::string_view text);

/// Formats with 17 significant digits in the "re+imj" form parse_complex reads.
std::string format_complex(Complex z);

}  // namespace qwalk
