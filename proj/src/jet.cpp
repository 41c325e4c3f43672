#include "berglab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "berglab/error.hpp"

namespace berglab {
namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

void check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder) {
    throw Error(ErrorCode::kDerivativeUnavailable,
                "jet order " + std::to_string(order) + " outside 0.." +
                    std::to_string(Jet::kMaxOrder));
  }
}

}  // namespace

Jet Jet::constant(double value, int order) {
  check_order(order);
  Jet j;
  j.order_ = order;
  j.taylor_[0] = value;
  return j;
}

Jet Jet::variable(double x, int order) {
  Jet j = constant(x, order);
  if (order >= 1) j.taylor_[1] = 1.0;
  return j;
}

Jet Jet::from_derivatives(const double* derivatives, int count) {
  check_order(count - 1);
  Jet j;
  j.order_ = count - 1;
  for (int k = 0; k < count; ++k) j.taylor_[k] = derivatives[k] / factorial(k);
  return j;
}

double Jet::derivative(int k) const { return taylor(k) * factorial(k); }

double Jet::taylor(int k) const {
  if (k < 0 || k > order_) {
    throw Error(ErrorCode::kDerivativeUnavailable,
                "derivative " + std::to_string(k) + " requested from a jet of order " +
                    std::to_string(order_));
  }
  return taylor_[k];
}

Jet Jet::differentiate() const {
  if (order_ == 0) {
    throw Error(ErrorCode::kDerivativeUnavailable, "cannot differentiate an order-0 jet");
  }
  Jet d;
  d.order_ = order_ - 1;
  for (int k = 0; k < order_; ++k) d.taylor_[k] = (k + 1) * taylor_[k + 1];
  return d;
}

Jet Jet::truncated(int order) const {
  check_order(order);
  Jet j = *this;
  j.order_ = std::min(order, order_);
  for (int k = j.order_ + 1; k <= kMaxOrder; ++k) j.taylor_[k] = 0.0;
  return j;
}

Jet& Jet::operator+=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) taylor_[k] += rhs.taylor_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  for (int k = 0; k <= order_; ++k) taylor_[k] -= rhs.taylor_[k];
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (int k = 0; k <= order_; ++k) taylor_[k] *= c;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  Jet out;
  out.order_ = std::min(lhs.order_, rhs.order_);
  for (int k = 0; k <= out.order_; ++k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i) s += lhs.taylor_[i] * rhs.taylor_[k - i];
    out.taylor_[k] = s;
  }
  return out;
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  Jet out;
  out.order_ = std::min(lhs.order_, rhs.order_);
  const double b0 = rhs.taylor_[0];
  for (int k = 0; k <= out.order_; ++k) {
    double s = lhs.taylor_[k];
    for (int i = 1; i <= k; ++i) s -= rhs.taylor_[i] * out.taylor_[k - i];
    out.taylor_[k] = s / b0;
  }
  return out;
}

Jet exp(const Jet& j) {
  Jet out;
  out.order_ = j.order_;
  out.taylor_[0] = std::exp(j.taylor_[0]);
  for (int k = 1; k <= j.order_; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += i * j.taylor_[i] * out.taylor_[k - i];
    out.taylor_[k] = s / k;
  }
  return out;
}

Jet log(const Jet& j) {
  Jet out;
  out.order_ = j.order_;
  const double a0 = j.taylor_[0];
  out.taylor_[0] = std::log(a0);
  for (int k = 1; k <= j.order_; ++k) {
    double s = j.taylor_[k];
    for (int i = 1; i < k; ++i) s -= static_cast<double>(i) / k * out.taylor_[i] * j.taylor_[k - i];
    out.taylor_[k] = s / a0;
  }
  return out;
}

Jet pow(const Jet& j, double p) {
  const double a0 = j.taylor_[0];
  if (a0 == 0.0 && p >= 0.0 && p == std::floor(p)) {
    // Integer power of a jet vanishing at the point: repeated products.
    Jet out = Jet::constant(1.0, j.order_);
    for (int i = 0; i < static_cast<int>(p); ++i) out = out * j;
    return out;
  }
  Jet out;
  out.order_ = j.order_;
  out.taylor_[0] = std::pow(a0, p);
  for (int k = 1; k <= j.order_; ++k) {
    double s = 0.0;
    for (int i = 1; i <= k; ++i) s += (p * i - (k - i)) * j.taylor_[i] * out.taylor_[k - i];
    out.taylor_[k] = s / (k * a0);
  }
  return out;
}

}  // namespace berglab
