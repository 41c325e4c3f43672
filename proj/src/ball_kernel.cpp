#include "berglab/ball_kernel.hpp"

#include <cmath>
#include <functional>
#include <memory>

#include "berglab/error.hpp"
#include "berglab/series.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {

namespace {

// Moment lookup that grows its table on demand, either privately or through a
// shared cache.
class MomentSource {
 public:
  MomentSource(const RadialWeightProfile& profile, double alpha, const SeriesOptions& options)
      : profile_(profile), alpha_(alpha), options_(options) {}

  double log_moment(int j) {
    if (!table_ || j > table_->k_max()) grow(j);
    return table_->log_values[static_cast<std::size_t>(j)];
  }

 private:
  void grow(int j) {
    const int current = table_ ? table_->k_max() : -1;
    const int target = std::max({j, 2 * current + 1, 63});
    if (options_.cache) {
      table_ = options_.cache->get(profile_, alpha_, target, options_.quadrature);
      return;
    }
    auto next = table_ ? std::make_shared<MomentTable>(*table_)
                       : std::make_shared<MomentTable>(
                             moment_table(profile_, alpha_, -1, options_.quadrature));
    extend_moment_table(*next, profile_, target, options_.quadrature);
    table_ = std::move(next);
  }

  const RadialWeightProfile& profile_;
  double alpha_;
  const SeriesOptions& options_;
  std::shared_ptr<const MomentTable> table_;
};

void check_point(const RadialWeightProfile& profile, double t) {
  const double end = profile.support_end();
  if (!(t >= 0.0) || !(t < end)) {
    throw Error(ErrorCode::kOutOfSupport,
                "t = " + text::shortest(t) + " is outside [0, " + text::shortest(end) + ")");
  }
}

// Σ_k exp(log_coefficient(k)) t^k / ρ_{2k+offset}(α), times exp(log_prefactor).
KernelEvaluation sum_ball_series(const RadialWeightProfile& profile, double alpha, int dimension,
                                 double t, const SeriesOptions& options, double log_prefactor,
                                 int offset, const std::function<double(int)>& log_coefficient) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be ≥ 0");
  check_point(profile, t);
  MomentSource moments(profile, alpha, options);

  KernelEvaluation out;
  out.alpha = alpha;
  out.dimension = dimension;
  out.coordinate = t;

  TailCertifiedSum sum(options.tol);
  const double log_t = t > 0.0 ? std::log(t) : 0.0;
  int limit = std::min(default_series_terms(alpha, dimension), options.k_cap);
  int k = 0;
  while (true) {
    const double log_term = log_coefficient(k) + k * log_t - moments.log_moment(2 * k + offset);
    const bool done = sum.add_log(log_term);
    ++k;
    if (t == 0.0 || done) break;
    if (k >= limit) {
      if (limit >= options.k_cap) {
        throw Error(ErrorCode::kNoDecay,
                    "kernel series not certified within " + std::to_string(options.k_cap) +
                        " terms at t = " + text::shortest(t));
      }
      limit = std::min(2 * limit, options.k_cap);
    }
  }
  out.terms_used = k;
  out.log_value = log_prefactor + sum.log_abs_sum();
  out.value = std::exp(out.log_value);
  out.tail_bound = t == 0.0 ? 0.0 : std::exp(log_prefactor + sum.log_tail_bound());
  return out;
}

}  // namespace

int default_series_terms(double alpha, int dimension) {
  const double terms = 10.0 * (alpha + dimension) + 200.0;
  return terms > 1e9 ? 1'000'000'000 : static_cast<int>(terms);
}

KernelEvaluation harmonic_ball_diag(const RadialWeightProfile& profile, double alpha, int n,
                                    double t, const SeriesOptions& options) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  const double log_prefactor = special::lgamma(0.5 * n) - std::log(2.0) -
                               0.5 * n * std::log(special::kPi);
  return sum_ball_series(profile, alpha, n, t, options, log_prefactor, n - 1,
                         [n](int k) { return log_zonal_dimension(k, n); });
}

KernelEvaluation holomorphic_ball_diag(const RadialWeightProfile& profile, double alpha, int m,
                                       double t, const SeriesOptions& options) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be ≥ 1");
  const double log_prefactor = -std::log(2.0) - m * std::log(special::kPi);
  // log((k+m−1)!/k!) = log Γ(k+m) − log Γ(k+1)
  return sum_ball_series(profile, alpha, m, t, options, log_prefactor, 2 * m - 1, [m](int k) {
    return m == 1 ? 0.0 : special::log_gamma_ratio(k + m, k + 1.0);
  });
}

double harmonic_ball_diag_dt(const RadialWeightProfile& profile, double alpha, int n, double t,
                             double step, const SeriesOptions& options) {
  const double lo = std::max(0.0, t - step);
  const double hi = t + step;
  return (harmonic_ball_diag(profile, alpha, n, hi, options).value -
          harmonic_ball_diag(profile, alpha, n, lo, options).value) /
         (hi - lo);
}

}  // namespace berglab
