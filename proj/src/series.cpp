#include "berglab/series.hpp"

#include <limits>

#include "berglab/special.hpp"

namespace berglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::uint64_t zonal_dimension(int k, int n) {
  if (k < 0 || n < 2) throw Error(ErrorCode::kInvalidArgument, "need k ≥ 0 and n ≥ 2");
  if (n == 2) return k == 0 ? 1 : 2;
  // C(n+k−3, k)·(n+2k−2)/(n−2); the binomial is built with the smaller index.
  using Wide = unsigned __int128;
  const int top = n + k - 3;
  const int low = std::min(k, n - 3);
  Wide binom = 1;
  constexpr Wide kLimit = Wide(1) << 100;
  for (int i = 1; i <= low; ++i) {
    binom = binom * static_cast<Wide>(top - low + i) / static_cast<Wide>(i);
    if (binom > kLimit) throw Error(ErrorCode::kInvalidArgument, "zonal dimension overflows");
  }
  const Wide value = binom * static_cast<Wide>(n + 2 * k - 2) / static_cast<Wide>(n - 2);
  if (value > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "zonal dimension overflows");
  }
  return static_cast<std::uint64_t>(value);
}

double log_zonal_dimension(int k, int n) {
  try {
    return std::log(static_cast<double>(zonal_dimension(k, n)));
  } catch (const Error&) {
    if (k < 0 || n < 2) throw;
  }
  return std::log(static_cast<double>(n + 2 * k - 2)) - std::log(static_cast<double>(n - 2)) +
         special::lgamma(n + k - 2.0) - special::lgamma(k + 1.0) - special::lgamma(n - 2.0);
}

TailCertifiedSum::TailCertifiedSum(double tol, int run_length)
    : tol_(tol), run_length_(run_length), log_sum_(-kInf), log_last_(-kInf), log_tail_(kInf) {}

bool TailCertifiedSum::add(double term) {
  if (term == 0.0) return add_log(-kInf, 1);
  return add_log(std::log(std::abs(term)), term < 0.0 ? -1 : 1);
}

bool TailCertifiedSum::add_log(double log_abs, int sign) {
  ++terms_;
  if (log_abs == -kInf) return certified_;  // zero terms neither extend nor break a run

  if (log_last_ != -kInf) {
    const double log_ratio = log_abs - log_last_;
    if (log_ratio < 0.0) {
      ++decaying_run_;
      recent_log_ratios_.push_back(log_ratio);
      if (static_cast<int>(recent_log_ratios_.size()) > run_length_) {
        recent_log_ratios_.erase(recent_log_ratios_.begin());
      }
    } else {
      decaying_run_ = 0;
      recent_log_ratios_.clear();
    }
  }

  if (log_sum_ == -kInf) {
    log_sum_ = log_abs;
    sign_ = sign;
  } else if (sign == sign_) {
    log_sum_ = special::log_add_exp(log_sum_, log_abs);
  } else if (log_abs > log_sum_) {
    log_sum_ = log_abs + std::log1p(-std::exp(log_sum_ - log_abs));
    sign_ = sign;
  } else if (log_abs == log_sum_) {
    log_sum_ = -kInf;
  } else {
    log_sum_ += std::log1p(-std::exp(log_abs - log_sum_));
  }
  log_last_ = log_abs;

  if (decaying_run_ >= run_length_) {
    const double q = *std::max_element(recent_log_ratios_.begin(), recent_log_ratios_.end());
    // |last|·q/(1−q) in logs.
    log_tail_ = log_last_ + q - std::log(-std::expm1(q));
    certified_ = log_sum_ != -kInf && log_tail_ <= std::log(tol_) + log_sum_;
  } else {
    log_tail_ = kInf;
    certified_ = false;
  }
  return certified_;
}

SeriesValue series_eval_with_tail(const TruncatedPowerSeries& series, double t, double tol) {
  TailCertifiedSum sum(tol);
  double power = 1.0;
  for (int k = 0; k <= series.order(); ++k) {
    if (sum.add(series.coefficient(k) * power)) {
      return {sum.value(), sum.tail_bound(), k + 1};
    }
    power *= t;
  }
  if (series.polynomial()) return {sum.value(), 0.0, series.order() + 1};
  throw Error(ErrorCode::kNoDecay, "series terms did not decay geometrically within " +
                                       std::to_string(series.order() + 1) + " terms");
}

}  // namespace berglab
