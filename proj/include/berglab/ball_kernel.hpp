#pragma once

#include "berglab/quadrature.hpp"
#include "berglab/weights.hpp"

namespace berglab {

/// One diagonal kernel value. For large α the value leaves double range long
/// before the logarithm does, so callers normalising by φ^α should work with
/// log_value.
struct KernelEvaluation {
  double value = 0.0;
  double log_value = 0.0;
  int terms_used = 0;
  double tail_bound = 0.0;  // absolute bound on the omitted series tail
  double alpha = 0.0;
  int dimension = 0;
  double coordinate = 0.0;  // t = |x|² or y
};

struct SeriesOptions {
  double tol = 1e-13;
  QuadratureSpec quadrature{};
  int k_cap = 200000;             // hard limit on series terms
  MomentCache* cache = nullptr;   // shared tables; a private table is used when null
};

/// Default number of series terms before the limit is raised: 10(α+n)+200.
int default_series_terms(double alpha, int dimension);

/// R_α(x,x) = Γ(n/2)/(2π^{n/2}) Σ_k N_{k,n} t^k / ρ_{2k+n−1}(α), t = |x|².
KernelEvaluation harmonic_ball_diag(const RadialWeightProfile& profile, double alpha, int n,
                                    double t, const SeriesOptions& options = {});

/// K_α(z,z) = 1/(2π^m) Σ_k (k+m−1)!/k! t^k / ρ_{2k+2m−1}(α), t = |z|².
KernelEvaluation holomorphic_ball_diag(const RadialWeightProfile& profile, double alpha, int m,
                                       double t, const SeriesOptions& options = {});

/// Central difference of t ↦ R_α in t. A diagnostic only: no error bound.
double harmonic_ball_diag_dt(const RadialWeightProfile& profile, double alpha, int n, double t,
                             double step = 1e-5, const SeriesOptions& options = {});

}  // namespace berglab
