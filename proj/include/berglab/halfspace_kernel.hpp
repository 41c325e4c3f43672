#pragma once

#include <array>
#include <functional>

#include "berglab/ball_kernel.hpp"
#include "berglab/quadrature.hpp"
#include "berglab/weights.hpp"

namespace berglab {

/// Diagonal point of the Siegel domain {(z, x+iy) : y > |z|²} in C^m,
/// reduced to its invariant height s = y − |z|².
struct SiegelPoint {
  double s = 1.0;
  int m = 1;
};

struct HalfspaceOptions {
  double tol = 1e-10;  // outer; the inner transform runs at tol/10
  QuadratureSpec quadrature{};
  TransformMode transform = TransformMode::kClosedFormIfAvailable;
};

/// R_α(x,x) = 2^{2−n}/(π^{(n−1)/2}Γ((n−1)/2)) ∫₀^∞ e^{−2yr} r^{n−2}/ρ̃(r) dr,
/// with ρ̃ the Laplace transform of ρ^α.
KernelEvaluation harmonic_halfspace_diag(const VerticalWeightProfile& profile, double alpha,
                                         int n, double y, const HalfspaceOptions& options = {});

/// K_α = 2^{m−2}/π^m ∫₀^∞ ξ^{m−1} e^{−2sξ}/ρ̃(ξ) dξ.
KernelEvaluation siegel_holo_diag(const VerticalWeightProfile& profile, double alpha,
                                  const SiegelPoint& point, const HalfspaceOptions& options = {});

/// φ''(t)/4 · (−φ'(t))^{m−1} for φ = log(1/ρ). The provider returns
/// (φ, φ', φ'') at t.
using LogWeightProvider = std::function<std::array<double, 3>(double)>;
double siegel_hessian_det(const LogWeightProvider& phi, int m, double t);
double siegel_hessian_det(const VerticalWeightProfile& profile, int m, double t);

struct BridgeCheck {
  double lhs = 0.0;  // harmonic half-space kernel in R^n
  double rhs = 0.0;  // 2^{5−2n}π^{(n−1)/2}/Γ((n−1)/2) · Siegel kernel with m = n−1, s = y
  double relative_gap = 0.0;
};

BridgeCheck halfspace_siegel_bridge_check(const VerticalWeightProfile& profile, double alpha,
                                          int n, double y, const HalfspaceOptions& options = {});

}  // namespace berglab
