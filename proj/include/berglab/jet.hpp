#pragma once

#include <array>
#include <functional>

namespace berglab {

/// Truncated Taylor expansion of a function at one point, carrying derivatives
/// 0..order(). Arithmetic propagates derivatives exactly (Leibniz, quotient
/// and composition recurrences on normalized Taylor coefficients), so nothing
/// here differentiates numerically.
class Jet {
 public:
  static constexpr int kMaxOrder = 8;

  Jet() = default;

  static Jet constant(double value, int order = kMaxOrder);
  /// The identity function x ↦ x at `x`.
  static Jet variable(double x, int order = kMaxOrder);
  /// Build from derivative values f, f', f'', ...; order = size − 1.
  static Jet from_derivatives(const double* derivatives, int count);

  int order() const noexcept { return order_; }
  double value() const noexcept { return taylor_[0]; }
  /// k-th derivative; throws DerivativeUnavailable when k > order().
  double derivative(int k) const;
  /// Normalized Taylor coefficient f^{(k)}/k!.
  double taylor(int k) const;

  /// d/dx; the result carries one derivative fewer.
  Jet differentiate() const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(double c);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, double c) { return lhs *= c; }
  friend Jet operator*(double c, Jet rhs) { return rhs *= c; }
  friend Jet operator-(Jet j) { return j *= -1.0; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(const Jet& lhs, const Jet& rhs);

  friend Jet exp(const Jet& j);
  friend Jet log(const Jet& j);
  /// j^p for real p; requires j.value() > 0 unless p is a nonnegative integer.
  friend Jet pow(const Jet& j, double p);

 private:
  std::array<double, kMaxOrder + 1> taylor_{};
  int order_ = 0;
};

/// A function that can report its jet of a requested order at a point.
using JetFunction = std::function<Jet(double x, int order)>;

}  // namespace berglab
