#include "berglab/halfspace_kernel.hpp"

#include <cmath>
#include <optional>

#include "berglab/error.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {

namespace {

using special::kPi;

struct LogIntegral {
  double log_value;
  double rel_error;
};

// Peak of ξ^p e^{−2hξ}/ρ̃(ξ) when ρ^α = y^{qα} e^{−λαy}, where
// −log ρ̃ = (qα+1)log(2ξ+λα) + const. Stationarity gives the quadratic
// 4hξ² − (2p + 2s − 2hλα)ξ − pλα = 0 with s = qα+1.
std::optional<PeakHint> gamma_form_peak(const VerticalWeightProfile& profile, double alpha,
                                        double p, double h) {
  double q = 0.0, lambda = 0.0;
  if (!profile.gamma_form(q, lambda)) return std::nullopt;
  const double s = q * alpha + 1.0;
  const double la = lambda * alpha;
  const double b = 2.0 * p + 2.0 * s - 2.0 * h * la;
  const double xi = (b + std::sqrt(b * b + 16.0 * h * p * la)) / (8.0 * h);
  if (xi > 0.0) {
    const double curv = -p / (xi * xi) - 4.0 * s / ((2.0 * xi + la) * (2.0 * xi + la));
    return PeakHint{xi, curv < 0.0 ? 1.0 / std::sqrt(-curv) : 0.0};
  }
  const double slope0 = -2.0 * h + 2.0 * s / la;  // p = 0 here
  return PeakHint{0.0, slope0 < 0.0 ? 1.0 / -slope0 : 0.0};
}

// log ∫₀^∞ ξ^p e^{−2hξ} / ρ̃(ξ) dξ with ρ̃ the transform of ρ^α.
LogIntegral log_transform_integral(const VerticalWeightProfile& profile, double alpha, double p,
                                   double h, const HalfspaceOptions& options) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be ≥ 0");
  QuadratureSpec outer = options.quadrature;
  outer.rel_tol = options.tol;
  QuadratureSpec inner = options.quadrature;
  inner.rel_tol = options.tol / 10.0;

  const auto log_f = [&](double xi) {
    const TransformResult tr =
        log_laplace_transform_rho(profile, xi, alpha, options.transform, inner);
    if (!tr.converged || !std::isfinite(tr.log_value)) {
      throw Error(ErrorCode::kInnerTransformFailure,
                  "Laplace transform of " + profile.describe() + " failed at ξ = " +
                      text::shortest(xi));
    }
    return special::xlogy(p, xi) - 2.0 * h * xi - tr.log_value;
  };
  const LogQuadratureResult r = integrate_log(log_f, Interval::half_line(0.0), outer,
                                              gamma_form_peak(profile, alpha, p, h));
  if (!r.converged) {
    throw Error(ErrorCode::kNoConvergence, "outer kernel integral did not reach tol " +
                                               text::shortest(options.tol));
  }
  return {r.log_value, r.rel_error};
}

KernelEvaluation make_evaluation(double log_constant, const LogIntegral& integral, double alpha,
                                 int dimension, double coordinate) {
  KernelEvaluation out;
  out.log_value = log_constant + integral.log_value;
  out.value = std::exp(out.log_value);
  out.terms_used = 0;
  out.tail_bound = integral.rel_error * out.value;
  out.alpha = alpha;
  out.dimension = dimension;
  out.coordinate = coordinate;
  return out;
}

}  // namespace

KernelEvaluation harmonic_halfspace_diag(const VerticalWeightProfile& profile, double alpha,
                                         int n, double y, const HalfspaceOptions& options) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  if (!(y > 0.0)) throw Error(ErrorCode::kOutOfSupport, "need y > 0");
  const double log_constant = (2.0 - n) * std::log(2.0) - 0.5 * (n - 1.0) * std::log(kPi) -
                              special::lgamma(0.5 * (n - 1.0));
  return make_evaluation(log_constant, log_transform_integral(profile, alpha, n - 2.0, y, options),
                         alpha, n, y);
}

KernelEvaluation siegel_holo_diag(const VerticalWeightProfile& profile, double alpha,
                                  const SiegelPoint& point, const HalfspaceOptions& options) {
  if (point.m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be ≥ 1");
  if (!(point.s > 0.0)) throw Error(ErrorCode::kOutOfSupport, "need s > 0");
  const double log_constant = (point.m - 2.0) * std::log(2.0) - point.m * std::log(kPi);
  return make_evaluation(log_constant,
                         log_transform_integral(profile, alpha, point.m - 1.0, point.s, options),
                         alpha, point.m, point.s);
}

double siegel_hessian_det(const LogWeightProvider& phi, int m, double t) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be ≥ 1");
  if (!(t > 0.0)) throw Error(ErrorCode::kOutOfSupport, "need t > 0");
  const auto d = phi(t);
  return d[2] / 4.0 * std::pow(-d[1], m - 1);
}

double siegel_hessian_det(const VerticalWeightProfile& profile, int m, double t) {
  return siegel_hessian_det(
      [&profile](double y) {
        const auto r = eval_with_derivatives(profile, y, 2);
        const double l1 = r[1] / r[0];
        return std::array<double, 3>{-std::log(r[0]), -l1, -(r[2] / r[0] - l1 * l1)};
      },
      m, t);
}

BridgeCheck halfspace_siegel_bridge_check(const VerticalWeightProfile& profile, double alpha,
                                          int n, double y, const HalfspaceOptions& options) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  BridgeCheck out;
  const KernelEvaluation harmonic = harmonic_halfspace_diag(profile, alpha, n, y, options);
  const KernelEvaluation siegel = siegel_holo_diag(profile, alpha, {y, n - 1}, options);
  const double log_factor = (5.0 - 2.0 * n) * std::log(2.0) + 0.5 * (n - 1.0) * std::log(kPi) -
                            special::lgamma(0.5 * (n - 1.0));
  out.lhs = harmonic.value;
  out.rhs = std::exp(log_factor + siegel.log_value);
  out.relative_gap = std::abs(std::expm1(log_factor + siegel.log_value - harmonic.log_value));
  return out;
}

}  // namespace berglab
