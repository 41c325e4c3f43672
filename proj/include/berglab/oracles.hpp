#pragma once

#include <string_view>

namespace berglab {

// Hypergeometric series by direct summation. Parameters with b = c = 0
// (the n = 2 case of the ball and Fock formulas) take the limit
// (b)_k/(c)_k = 2 for k ≥ 1.

double hyp2f1(double a, double b, double c, double x, double tol = 1e-15);
/// log ₂F₁ for a positive value; terms are summed in the log domain.
double log_hyp2f1(double a, double b, double c, double x, double tol = 1e-15);

double hyp1f1(double a, double c, double x, double tol = 1e-15);
double log_hyp1f1(double a, double c, double x, double tol = 1e-15);

enum class OracleGeometry { kDisc, kHalfPlane, kComplexBall, kRealBall, kHalfSpace, kFock };
enum class KernelKind { kHolomorphic, kHarmonic };

std::string_view to_string(OracleGeometry geometry) noexcept;

struct OracleSelector {
  OracleGeometry geometry = OracleGeometry::kDisc;
  KernelKind kind = KernelKind::kHolomorphic;
  double alpha = 0.0;
  int dimension = 1;        // m for the complex geometries, n for the real ones
  double coordinate = 0.0;  // t = |x|² on balls and R^n, y on half-spaces
};

/// Disc (α+1)/π (1−t)^{−α−2}; half-plane (α+1)/(4π) y^{−α−2};
/// complex ball Γ(α+m+1)/(Γ(α+1)π^m) (1−t)^{−α−m−1}.
double oracle_holo_diag(const OracleSelector& sel);
double log_oracle_holo_diag(const OracleSelector& sel);

/// Real ball Γ(α+n/2+1)/(Γ(α+1)π^{n/2}) ₂F₁(α+n/2+1, n−2; n/2−1; t);
/// half-space Γ(n+α)2^{3−2n}/(π^{(n−1)/2}Γ(α+1)Γ((n−1)/2)) y^{−n−α};
/// Fock α^{n/2}/π^{n/2} ₁F₁(n−2; n/2−1; αt).
/// At α = 0 the ball value is cross-checked against the rational formula and
/// a disagreement above 1e−10 throws ValidationError.
double oracle_harm_diag(const OracleSelector& sel);
double log_oracle_harm_diag(const OracleSelector& sel);

/// Unweighted harmonic kernel of the unit ball at x = y, |x|² = t:
/// Γ(n/2)/(2π^{n/2}) ((n−4)t⁴ + (8t−2n−4)t² + n)/(1−t)^{n+2}.
double unweighted_ball_diag(int n, double t);

/// Unweighted harmonic kernel of the upper half-space at x = y:
/// 2Γ(n/2)(n−1)/(π^{n/2}(2y)^n).
double unweighted_halfspace_diag(int n, double y);

}  // namespace berglab
