#pragma once

#include <vector>

namespace berglab::special {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// log|Γ(x)| for x not a nonpositive integer. Lanczos (g = 7, 9 terms) for
/// x ≥ 1/2, reflection below.
double lgamma(double x);

/// Γ(x). Integer arguments up to 171 go through an exact factorial product and
/// half-integers through the recurrence from √π; everything else is Lanczos.
double tgamma(double x);

/// log(Γ(a) / Γ(b)) for a, b > 0, accurate when both are large and close
/// (Stirling differences instead of subtracting two huge log-gammas).
double log_gamma_ratio(double a, double b);

/// log B(a, b).
double log_beta(double a, double b);

/// Rising factorial (a)_k by the recurrence (a)_{k+1} = (a)_k (a + k).
double pochhammer(double a, int k);

/// (a)_0 .. (a)_k_max by recurrence.
std::vector<double> pochhammer_sequence(double a, int k_max);

/// k log(x) with the convention 0·log(0) = 0.
double xlogy(double k, double x);

/// Numerically stable log(exp(a) + exp(b)).
double log_add_exp(double a, double b);

}  // namespace berglab::special
