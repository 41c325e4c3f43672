#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "berglab/error.hpp"

namespace berglab {

/// Power series Σ c_k t^k truncated at order K. `polynomial` marks a series
/// whose coefficients beyond K are known to vanish (so evaluation is exact
/// once all K+1 terms are summed). T is double in production and an exact
/// rational type in the identity tests.
template <class T>
class BasicPowerSeries {
 public:
  BasicPowerSeries() : coefficients_{T(0)} {}
  explicit BasicPowerSeries(std::vector<T> coefficients, bool polynomial = false)
      : coefficients_(std::move(coefficients)), polynomial_(polynomial) {
    if (coefficients_.empty()) coefficients_.push_back(T(0));
    if constexpr (std::is_floating_point_v<T>) {
      for (const T& c : coefficients_) {
        if (!std::isfinite(c)) throw Error(ErrorCode::kValidationError, "non-finite coefficient");
      }
    }
  }

  int order() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  bool polynomial() const noexcept { return polynomial_; }
  const std::vector<T>& coefficients() const noexcept { return coefficients_; }
  T coefficient(int k) const {
    return k >= 0 && k <= order() ? coefficients_[static_cast<std::size_t>(k)] : T(0);
  }

  /// t^p · S.
  BasicPowerSeries shifted(int p) const {
    std::vector<T> c(static_cast<std::size_t>(p), T(0));
    c.insert(c.end(), coefficients_.begin(), coefficients_.end());
    return BasicPowerSeries(std::move(c), polynomial_);
  }

  /// d^times/dt^times, term by term (the order drops by `times`).
  BasicPowerSeries derivative(int times = 1) const {
    std::vector<T> c = coefficients_;
    for (int d = 0; d < times; ++d) {
      if (c.size() <= 1) return BasicPowerSeries(std::vector<T>{T(0)}, polynomial_);
      std::vector<T> next(c.size() - 1);
      for (std::size_t k = 1; k < c.size(); ++k) next[k - 1] = T(static_cast<long long>(k)) * c[k];
      c = std::move(next);
    }
    return BasicPowerSeries(std::move(c), polynomial_);
  }

  BasicPowerSeries truncated(int order) const {
    std::vector<T> c(static_cast<std::size_t>(order) + 1, T(0));
    for (int k = 0; k <= std::min(order, this->order()); ++k) c[k] = coefficients_[k];
    return BasicPowerSeries(std::move(c), polynomial_ && order >= this->order());
  }

  friend BasicPowerSeries operator+(const BasicPowerSeries& a, const BasicPowerSeries& b) {
    const int K = std::max(a.order(), b.order());
    std::vector<T> c(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) c[k] = a.coefficient(k) + b.coefficient(k);
    return BasicPowerSeries(std::move(c), a.polynomial_ && b.polynomial_);
  }

  friend bool operator==(const BasicPowerSeries& a, const BasicPowerSeries& b) {
    const int K = std::max(a.order(), b.order());
    for (int k = 0; k <= K; ++k) {
      if (!(a.coefficient(k) == b.coefficient(k))) return false;
    }
    return true;
  }

 private:
  std::vector<T> coefficients_;
  bool polynomial_ = false;
};

using TruncatedPowerSeries = BasicPowerSeries<double>;

/// Dimension of degree-k spherical harmonics on S^{n−1}:
/// (n+k−3)!(n+2k−2)/(k!(n−2)!), with N_{0,2} = 1 and N_{k,2} = 2.
/// Exact; throws InvalidArgument if the value does not fit in 64 bits.
std::uint64_t zonal_dimension(int k, int n);

/// log N_{k,n}, exact while the integer fits and via log-gamma beyond.
double log_zonal_dimension(int k, int n);

/// Running sum with a geometric tail certificate. Terms are passed as
/// log-magnitudes so that sums of numbers outside double range work. Once the
/// ratio of successive nonzero terms has stayed below 1 for `run_length`
/// consecutive terms, the tail is bounded by |last|·q/(1−q) with q the largest
/// ratio in that run, and the sum counts as certified when that bound is at
/// most tol·|sum|.
class TailCertifiedSum {
 public:
  explicit TailCertifiedSum(double tol, int run_length = 10);

  /// Adds sign·exp(log_abs). Returns true when the sum is certified.
  bool add_log(double log_abs, int sign = 1);
  bool add(double term);

  bool certified() const noexcept { return certified_; }
  int terms() const noexcept { return terms_; }
  double log_abs_sum() const noexcept { return log_sum_; }
  int sign() const noexcept { return sign_; }
  double value() const noexcept { return sign_ * std::exp(log_sum_); }
  /// log of the current tail bound (+∞ until a decaying run is observed).
  double log_tail_bound() const noexcept { return log_tail_; }
  double tail_bound() const noexcept { return std::exp(log_tail_); }

 private:
  double tol_;
  int run_length_;
  int terms_ = 0;
  double log_sum_;
  int sign_ = 1;
  double log_last_;
  int decaying_run_ = 0;
  std::vector<double> recent_log_ratios_;
  double log_tail_;
  bool certified_ = false;
};

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms_used = 0;
};

/// Σ c_k t^k with the geometric tail certificate. Polynomials that exhaust
/// their coefficients are exact (tail 0); otherwise running out of
/// coefficients before certification throws NoDecay.
SeriesValue series_eval_with_tail(const TruncatedPowerSeries& series, double t, double tol);

/// Which side of the coefficient identities to compute.
enum class CoefficientRoute {
  kFactor,             // multiply c_k by the closed-form factor
  kShiftDifferentiate  // polynomial calculus on F
};

/// Σ (k+m−1)!/k!·c_k t^k = (t^{m−1}F)^{(m−1)}.
template <class T>
BasicPowerSeries<T> holo_coeff_transform(const BasicPowerSeries<T>& f, int m,
                                         CoefficientRoute route = CoefficientRoute::kFactor) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be ≥ 1");
  if (route == CoefficientRoute::kShiftDifferentiate) {
    return f.shifted(m - 1).derivative(m - 1);
  }
  std::vector<T> c(f.coefficients());
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (int j = 1; j < m; ++j) c[k] = c[k] * T(static_cast<long long>(k) + j);
  }
  return BasicPowerSeries<T>(std::move(c), f.polynomial());
}

/// Σ N_{k,n}·c_k t^k = [(t^{n−2}F)^{(n−2)} + t(t^{n−3}F)^{(n−2)}]/(n−2)!.
/// The shift route needs n ≥ 3; n = 2 is only available as the factor route.
template <class T>
BasicPowerSeries<T> harm_coeff_transform(const BasicPowerSeries<T>& f, int n,
                                         CoefficientRoute route = CoefficientRoute::kFactor) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  if (route == CoefficientRoute::kShiftDifferentiate) {
    if (n < 3) throw Error(ErrorCode::kInvalidArgument, "polynomial route needs n ≥ 3");
    const BasicPowerSeries<T> a = f.shifted(n - 2).derivative(n - 2);
    const BasicPowerSeries<T> b = f.shifted(n - 3).derivative(n - 2).shifted(1);
    BasicPowerSeries<T> sum = (a + b).truncated(f.order());
    T factorial(1);
    for (int j = 2; j <= n - 2; ++j) factorial = factorial * T(static_cast<long long>(j));
    std::vector<T> c(sum.coefficients());
    for (T& x : c) x = x / factorial;
    return BasicPowerSeries<T>(std::move(c), f.polynomial());
  }
  std::vector<T> c(f.coefficients());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = c[k] * T(static_cast<unsigned long long>(zonal_dimension(static_cast<int>(k), n)));
  }
  return BasicPowerSeries<T>(std::move(c), f.polynomial());
}

}  // namespace berglab
