#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "berglab/ball_kernel.hpp"
#include "berglab/halfspace_kernel.hpp"
#include "berglab/jet.hpp"
#include "berglab/weights.hpp"

namespace berglab {

/// det[∂∂̄ log(1/φ(|z|²))] in C^m: (−φ'/φ)^{m−1}·(−tφ'/φ)', where
/// (−tφ'/φ)' = −(φ' + tφ'')/φ + t(φ')²/φ².
double radial_hessian_det(const RadialWeightProfile& profile, int m, double t);

/// A predicted limit together with whether the weight passed the hypothesis
/// checks it is stated under. The value is computed either way.
struct LeadingTerm {
  double value = 0.0;
  bool hypotheses_hold = false;
};

/// Limit of α^{1−n}φ(t)^α R_α(x,x) for |x|² = t > 0:
/// 2Γ(n/2)t^{n/2−1}/(π^{n/2}Γ(n−1)) · (−φ'/φ)^{n−2} · (−tφ'/φ)'.
LeadingTerm thm2_leading(const RadialWeightProfile& profile, int n, double t);

/// Limit of α^{1−n}ρ(y)^α R_α(x,x) on the upper half-space:
/// 2^{3−2n}/(π^{(n−1)/2}Γ((n−1)/2)) · (ρ'/ρ)^{n−2} · (−ρ'/ρ)'.
LeadingTerm thm3_leading(const VerticalWeightProfile& profile, int n, double y);

/// Limit of α^{−m}π^m ρ^α K_α: the complex Hessian determinant of log(1/ρ),
/// on the ball (radial weight, t = |z|²) or the Siegel domain (height s).
double holo_leading(const RadialWeightProfile& profile, int m, double t);
double holo_leading(const VerticalWeightProfile& profile, int m, double s);

/// |R^{1/α}·ρ(x) − 1|.
double thm1_root_gap(double kernel_value, double alpha, double rho_at_x);
/// Same from logarithms, for kernel values outside double range.
double thm1_root_gap_log(double log_kernel, double alpha, double log_rho_at_x);

/// Coefficients e_0..e_J with
/// ∫^b F e^{αS} ≈ e^{αS(b)}/(αS'(b)) Σ_j e_j α^{−j},  e_j = (−1)^j (L^j F)(b),
/// L g = (g/S')'. Repeated integration by parts at the right endpoint.
std::vector<double> laplace_endpoint_expansion(const JetFunction& F, const JetFunction& S,
                                               double b, int J);

/// a₀ = (−φ'(0)/φ(0))^{n/2}, the limit of π^{n/2}α^{−n/2}φ(0)^αR_α(0,0).
/// Throws HigherVanishing when φ'(0) = 0.
double origin_leading(const RadialWeightProfile& profile, int n);

/// (1/2π)(4t h'' + 4h')(t) with h = log(1/φ): the plane Laplacian of
/// log(1/ρ) divided by 2π.
double n2_laplacian_leading(const RadialWeightProfile& profile, double t);

/// Relative gap between 2Γ(n/2)/(π^{n/2}Γ(n−1)) and
/// 2^{3−n}/(π^{(n−1)/2}Γ((n−1)/2)).
double gamma_doubling_check(int n);

/// Coefficients c_0..c_depth of the polynomial in α^{−power} through the last
/// depth+1 points. Exact when the data follow the model. Depth is capped at 4.
std::vector<double> richardson_fit(std::span<const double> alphas, std::span<const double> values,
                                   int depth, double power = 1.0);

// ---------------------------------------------------------------------------

enum class Theorem { kRootGap, kBall, kHalfSpace, kOrigin, kHolomorphic };
enum class KernelSource { kSeries, kOracle };

using WeightProfile = std::variant<RadialWeightProfile, VerticalWeightProfile>;

struct AsymptoticRequest {
  Theorem theorem = Theorem::kBall;
  WeightProfile weight = RadialWeightProfile::power(1.0);
  int dimension = 3;        // n, or m for the holomorphic case
  double coordinate = 0.25; // t = |x|², or y / s for vertical weights
  std::vector<double> alphas;
  KernelSource source = KernelSource::kSeries;
  double tol = 1e-12;
};

struct AsymptoticReport {
  std::vector<double> alpha_grid;
  std::vector<double> log_kernel_values;
  std::vector<double> scaled_values;
  double prediction = 0.0;
  bool hypotheses_hold = true;
  std::vector<double> ratios;
  std::vector<double> fitted_coefficients;  // Richardson fit of scaled_values
  bool converged = false;                   // |ratio − 1| decreasing along the grid
  double achieved_gap = 0.0;                // |ratio − 1| at the largest α
};

/// Kernel value (as a logarithm) at one α for the request's geometry.
double request_log_kernel(const AsymptoticRequest& request, double alpha);

/// Evaluates the request's kernel over the α grid (in parallel, assembled in
/// grid order) and compares the normalised values with the predicted limit.
/// Theorem 1 reports R^{1/α}ρ against the limit 1.
AsymptoticReport asymptotic_report(const AsymptoticRequest& request);

}  // namespace berglab
