#include "berglab/asymptotics.hpp"

#include <cmath>

#include "berglab/error.hpp"
#include "berglab/oracles.hpp"
#include "berglab/parallel.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {

namespace {

using special::kPi;

struct RadialDerivs {
  double phi, d1, d2;
};

RadialDerivs radial_at(const RadialWeightProfile& profile, double t) {
  const auto d = eval_with_derivatives(profile, t, 2);
  return {d[0], d[1], d[2]};
}

// (−tφ'/φ)'
double log_slope_derivative(const RadialDerivs& r, double t) {
  return -(r.d1 + t * r.d2) / r.phi + t * r.d1 * r.d1 / (r.phi * r.phi);
}

}  // namespace

double radial_hessian_det(const RadialWeightProfile& profile, int m, double t) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be ≥ 1");
  const RadialDerivs r = radial_at(profile, t);
  return std::pow(-r.d1 / r.phi, m - 1) * log_slope_derivative(r, t);
}

LeadingTerm thm2_leading(const RadialWeightProfile& profile, int n, double t) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "the x ≠ 0 limit needs t > 0");
  const RadialDerivs r = radial_at(profile, t);
  const double constant = 2.0 * special::tgamma(0.5 * n) * std::pow(t, 0.5 * n - 1.0) /
                          (std::pow(kPi, 0.5 * n) * special::tgamma(n - 1.0));
  LeadingTerm out;
  out.value = constant * std::pow(-r.d1 / r.phi, n - 2) * log_slope_derivative(r, t);
  out.hypotheses_hold = check_radial_psh(profile) &&
                        (profile.unbounded_support() || check_defining(profile).is_defining);
  return out;
}

LeadingTerm thm3_leading(const VerticalWeightProfile& profile, int n, double y) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  const auto d = eval_with_derivatives(profile, y, 2);
  const double l1 = d[1] / d[0];
  const double l1_prime = d[2] / d[0] - l1 * l1;
  const double constant = std::pow(2.0, 3.0 - 2.0 * n) /
                          (std::pow(kPi, 0.5 * (n - 1.0)) * special::tgamma(0.5 * (n - 1.0)));
  LeadingTerm out;
  out.value = constant * std::pow(l1, n - 2) * -l1_prime;
  out.hypotheses_hold = check_vertical_hypotheses(profile) &&
                        vanishes_to_first_order_at_zero(profile) &&
                        profile.declared_admissible();
  return out;
}

double holo_leading(const RadialWeightProfile& profile, int m, double t) {
  return radial_hessian_det(profile, m, t);
}

double holo_leading(const VerticalWeightProfile& profile, int m, double s) {
  return siegel_hessian_det(profile, m, s);
}

double thm1_root_gap(double kernel_value, double alpha, double rho_at_x) {
  return thm1_root_gap_log(std::log(kernel_value), alpha, std::log(rho_at_x));
}

double thm1_root_gap_log(double log_kernel, double alpha, double log_rho_at_x) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be > 0");
  return std::abs(std::expm1(log_kernel / alpha + log_rho_at_x));
}

std::vector<double> laplace_endpoint_expansion(const JetFunction& F, const JetFunction& S,
                                               double b, int J) {
  if (J < 0) throw Error(ErrorCode::kInvalidArgument, "J must be ≥ 0");
  if (J + 1 > Jet::kMaxOrder) {
    throw Error(ErrorCode::kDerivativeUnavailable,
                "expansion order " + std::to_string(J) + " needs derivatives beyond order " +
                    std::to_string(Jet::kMaxOrder));
  }
  const Jet slope = S(b, J + 1).differentiate();
  if (!(slope.value() > 0.0)) {
    throw Error(ErrorCode::kNonpositiveSlope,
                "S'(b) = " + text::shortest(slope.value()) + " must be positive");
  }
  std::vector<double> e(static_cast<std::size_t>(J) + 1);
  Jet g = F(b, J);
  double sign = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (g.order() < J - j) {
      throw Error(ErrorCode::kDerivativeUnavailable, "F does not supply enough derivatives");
    }
    e[static_cast<std::size_t>(j)] = sign * g.value();
    if (j < J) g = (g / slope).differentiate();
    sign = -sign;
  }
  return e;
}

double origin_leading(const RadialWeightProfile& profile, int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  const RadialDerivs r = radial_at(profile, 0.0);
  if (r.d1 == 0.0) {
    throw Error(ErrorCode::kHigherVanishing,
                "φ'(0) = 0: the origin expansion has fractional powers of α");
  }
  return std::pow(-r.d1 / r.phi, 0.5 * n);
}

double n2_laplacian_leading(const RadialWeightProfile& profile, double t) {
  const RadialDerivs r = radial_at(profile, t);
  // h = −log φ: h' = −φ'/φ, h'' = −φ''/φ + (φ'/φ)².
  const double h1 = -r.d1 / r.phi;
  const double h2 = -r.d2 / r.phi + (r.d1 / r.phi) * (r.d1 / r.phi);
  return (4.0 * t * h2 + 4.0 * h1) / (2.0 * kPi);
}

double gamma_doubling_check(int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be ≥ 2");
  const double lhs = 2.0 * special::tgamma(0.5 * n) /
                     (std::pow(kPi, 0.5 * n) * special::tgamma(n - 1.0));
  const double rhs = std::pow(2.0, 3.0 - n) /
                     (std::pow(kPi, 0.5 * (n - 1.0)) * special::tgamma(0.5 * (n - 1.0)));
  return std::abs(lhs - rhs) / std::abs(rhs);
}

std::vector<double> richardson_fit(std::span<const double> alphas, std::span<const double> values,
                                   int depth, double power) {
  if (alphas.size() != values.size()) {
    throw Error(ErrorCode::kInvalidArgument, "grid and values differ in length");
  }
  if (depth < 0) throw Error(ErrorCode::kInvalidArgument, "depth must be ≥ 0");
  depth = std::min(depth, 4);
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (!(alphas[i] > alphas[i - 1])) {
      throw Error(ErrorCode::kDegenerateGrid, "α grid must be strictly increasing");
    }
  }
  const std::size_t points = static_cast<std::size_t>(depth) + 1;
  if (alphas.size() < points) {
    throw Error(ErrorCode::kDegenerateGrid, "need at least depth+1 grid points");
  }
  const std::size_t first = alphas.size() - points;
  std::vector<double> h(points), c(points);
  for (std::size_t i = 0; i < points; ++i) {
    h[i] = std::pow(alphas[first + i], -power);
    c[i] = values[first + i];
  }
  // Newton divided differences, then expansion to monomial coefficients.
  for (std::size_t level = 1; level < points; ++level) {
    for (std::size_t i = points - 1; i >= level; --i) {
      c[i] = (c[i] - c[i - 1]) / (h[i] - h[i - level]);
    }
  }
  std::vector<double> poly{c[points - 1]};
  for (std::size_t i = points - 1; i-- > 0;) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= h[i] * poly[j];
    }
    next[0] += c[i];
    poly = std::move(next);
  }
  return poly;
}

// ---------------------------------------------------------------------------

namespace {

const RadialWeightProfile& radial(const AsymptoticRequest& request) {
  if (const auto* p = std::get_if<RadialWeightProfile>(&request.weight)) return *p;
  throw Error(ErrorCode::kInvalidArgument, "this theorem needs a radial weight");
}

const VerticalWeightProfile& vertical(const AsymptoticRequest& request) {
  if (const auto* p = std::get_if<VerticalWeightProfile>(&request.weight)) return *p;
  throw Error(ErrorCode::kInvalidArgument, "this theorem needs a vertical weight");
}

bool is_unit_power(const RadialWeightProfile& p) {
  if (p.factors().size() != 1) return false;
  const auto* f = std::get_if<RadialWeightProfile::Power>(&p.factors()[0]);
  return f && f->exponent == 1.0;
}

bool is_unit_exponential(const RadialWeightProfile& p) {
  if (p.factors().size() != 1) return false;
  const auto* f = std::get_if<RadialWeightProfile::Exponential>(&p.factors()[0]);
  return f && f->rate == 1.0;
}

bool is_unit_vertical_power(const VerticalWeightProfile& p) {
  if (p.factors().size() != 1) return false;
  const auto* f = std::get_if<VerticalWeightProfile::Power>(&p.factors()[0]);
  return f && f->exponent == 1.0;
}

[[noreturn]] void no_oracle(const std::string& weight) {
  throw Error(ErrorCode::kUnsupportedSelector, "no closed form for weight " + weight);
}

double log_weight_at(const AsymptoticRequest& request) {
  const double x = request.theorem == Theorem::kOrigin ? 0.0 : request.coordinate;
  return std::visit([x](const auto& p) { return p.log_value(x); }, request.weight);
}

double log_harmonic(const AsymptoticRequest& request, double alpha, double x) {
  const int n = request.dimension;
  if (std::holds_alternative<VerticalWeightProfile>(request.weight)) {
    const auto& p = vertical(request);
    if (request.source == KernelSource::kOracle) {
      if (!is_unit_vertical_power(p)) no_oracle(p.describe());
      return log_oracle_harm_diag({OracleGeometry::kHalfSpace, KernelKind::kHarmonic, alpha, n, x});
    }
    HalfspaceOptions options;
    options.tol = std::max(request.tol, 1e-11);
    return harmonic_halfspace_diag(p, alpha, n, x, options).log_value;
  }
  const auto& p = radial(request);
  if (request.source == KernelSource::kOracle) {
    if (is_unit_power(p)) {
      return log_oracle_harm_diag({OracleGeometry::kRealBall, KernelKind::kHarmonic, alpha, n, x});
    }
    if (is_unit_exponential(p)) {
      return log_oracle_harm_diag({OracleGeometry::kFock, KernelKind::kHarmonic, alpha, n, x});
    }
    no_oracle(p.describe());
  }
  SeriesOptions options;
  options.tol = std::max(request.tol, 1e-14);
  return harmonic_ball_diag(p, alpha, n, x, options).log_value;
}

double log_holomorphic(const AsymptoticRequest& request, double alpha) {
  const int m = request.dimension;
  const double x = request.coordinate;
  if (std::holds_alternative<VerticalWeightProfile>(request.weight)) {
    const auto& p = vertical(request);
    if (request.source == KernelSource::kOracle) {
      if (!is_unit_vertical_power(p) || m != 1) no_oracle(p.describe());
      return log_oracle_holo_diag(
          {OracleGeometry::kHalfPlane, KernelKind::kHolomorphic, alpha, 1, x});
    }
    HalfspaceOptions options;
    options.tol = std::max(request.tol, 1e-11);
    return siegel_holo_diag(p, alpha, {x, m}, options).log_value;
  }
  const auto& p = radial(request);
  if (request.source == KernelSource::kOracle) {
    if (!is_unit_power(p)) no_oracle(p.describe());
    return log_oracle_holo_diag(
        {OracleGeometry::kComplexBall, KernelKind::kHolomorphic, alpha, m, x});
  }
  SeriesOptions options;
  options.tol = std::max(request.tol, 1e-14);
  return holomorphic_ball_diag(p, alpha, m, x, options).log_value;
}

}  // namespace

double request_log_kernel(const AsymptoticRequest& request, double alpha) {
  switch (request.theorem) {
    case Theorem::kHolomorphic:
      return log_holomorphic(request, alpha);
    case Theorem::kOrigin:
      return log_harmonic(request, alpha, 0.0);
    case Theorem::kHalfSpace:
      vertical(request);
      return log_harmonic(request, alpha, request.coordinate);
    case Theorem::kBall:
      radial(request);
      return log_harmonic(request, alpha, request.coordinate);
    case Theorem::kRootGap:
      return log_harmonic(request, alpha, request.coordinate);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown theorem");
}

AsymptoticReport asymptotic_report(const AsymptoticRequest& request) {
  AsymptoticReport report;
  report.alpha_grid = request.alphas;
  const std::size_t count = request.alphas.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (!(request.alphas[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be > 0");
    if (i > 0 && !(request.alphas[i] > request.alphas[i - 1])) {
      throw Error(ErrorCode::kDegenerateGrid, "α grid must be strictly increasing");
    }
  }

  const int d = request.dimension;
  switch (request.theorem) {
    case Theorem::kBall: {
      const LeadingTerm lt = thm2_leading(radial(request), d, request.coordinate);
      report.prediction = lt.value;
      report.hypotheses_hold = lt.hypotheses_hold;
      break;
    }
    case Theorem::kHalfSpace: {
      const LeadingTerm lt = thm3_leading(vertical(request), d, request.coordinate);
      report.prediction = lt.value;
      report.hypotheses_hold = lt.hypotheses_hold;
      break;
    }
    case Theorem::kOrigin:
      report.prediction = origin_leading(radial(request), d);
      break;
    case Theorem::kHolomorphic:
      report.prediction = std::visit(
          [&](const auto& p) { return holo_leading(p, d, request.coordinate); }, request.weight);
      break;
    case Theorem::kRootGap:
      report.prediction = 1.0;
      break;
  }

  report.log_kernel_values.assign(count, 0.0);
  parallel_for(count, configured_threads(), [&](std::size_t i) {
    report.log_kernel_values[i] = request_log_kernel(request, request.alphas[i]);
  });

  const double log_rho = log_weight_at(request);
  report.scaled_values.resize(count);
  report.ratios.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = request.alphas[i];
    const double log_k = report.log_kernel_values[i];
    double log_scaled = 0.0;
    switch (request.theorem) {
      case Theorem::kBall:
      case Theorem::kHalfSpace:
        log_scaled = (1.0 - d) * std::log(a) + a * log_rho + log_k;
        break;
      case Theorem::kOrigin:
        log_scaled = 0.5 * d * (std::log(kPi) - std::log(a)) + a * log_rho + log_k;
        break;
      case Theorem::kHolomorphic:
        log_scaled = d * (std::log(kPi) - std::log(a)) + a * log_rho + log_k;
        break;
      case Theorem::kRootGap:
        log_scaled = log_k / a + log_rho;
        break;
    }
    report.scaled_values[i] = std::exp(log_scaled);
    report.ratios[i] = report.scaled_values[i] / report.prediction;
  }

  if (count >= 2) {
    report.fitted_coefficients = richardson_fit(request.alphas, report.scaled_values,
                                                std::min<int>(4, static_cast<int>(count) - 2));
  }
  report.converged = count > 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double gap = std::abs(report.ratios[i] - 1.0);
    if (!std::isfinite(gap)) report.converged = false;
    if (i > 0 && !(gap < std::abs(report.ratios[i - 1] - 1.0))) report.converged = false;
  }
  report.achieved_gap = count ? std::abs(report.ratios.back() - 1.0) : 0.0;
  return report;
}

}  // namespace berglab
