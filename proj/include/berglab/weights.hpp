#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "berglab/jet.hpp"

namespace berglab {

/// Radial weight profile φ on [0, T), T ∈ {1, ∞}, with ρ(x) = φ(|x|²).
///
/// A profile is a product of one or more parametric factors, each with
/// closed-form derivatives; products differentiate by the Leibniz rule.
class RadialWeightProfile {
 public:
  struct Polynomial {
    std::vector<double> coefficients;  // φ(t) = Σ c_j t^j
  };
  struct Power {
    double exponent;  // (1 − t)^p
  };
  struct Exponential {
    double rate;  // e^{−βt}
  };
  using Factor = std::variant<Polynomial, Power, Exponential>;

  static RadialWeightProfile polynomial(std::vector<double> coefficients);
  static RadialWeightProfile power(double p);
  static RadialWeightProfile exponential(double beta);
  static RadialWeightProfile product(std::span<const RadialWeightProfile> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }

  /// 1 for ball weights, +∞ for weights on all of R^n.
  double support_end() const noexcept;
  bool unbounded_support() const noexcept;

  /// Jet of φ at t (no support check).
  Jet jet(double t, int order) const;
  double value(double t) const;
  /// log φ(t), computed factorwise (exact for the exponential family).
  double log_value(double t) const;

  /// Canonical weight-grammar string; also the cache key for moment tables.
  std::string describe() const;

  friend RadialWeightProfile operator*(const RadialWeightProfile& a,
                                       const RadialWeightProfile& b);

 private:
  explicit RadialWeightProfile(std::vector<Factor> factors);
  std::vector<Factor> factors_;
};

/// Vertical weight ρ(y) on (0, ∞) for the half-space and Siegel domain.
class VerticalWeightProfile {
 public:
  struct Power {
    double exponent;  // y^p
  };
  struct ExpDecay {};  // e^{−y}
  struct Saturating {
    double scale;  // y / (y + c)
  };
  using Factor = std::variant<Power, ExpDecay, Saturating>;

  static VerticalWeightProfile power(double p);
  static VerticalWeightProfile exp_decay();
  static VerticalWeightProfile saturating(double c);
  static VerticalWeightProfile product(std::span<const VerticalWeightProfile> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }

  Jet jet(double y, int order) const;
  double value(double y) const;
  double log_value(double y) const;

  /// Declared admissibility (∫ e^{ty} ρ dy = ∞ for every t > 0). Analytic per
  /// family: false as soon as an e^{−y} factor is present.
  bool declared_admissible() const noexcept;

  /// When ρ = y^q e^{−λy}, returns true and fills (q, λ); the Laplace
  /// transform of ρ^α then has the closed form Γ(qα+1)/(2t+λα)^{qα+1}.
  bool gamma_form(double& q, double& lambda) const noexcept;

  std::string describe() const;

  friend VerticalWeightProfile operator*(const VerticalWeightProfile& a,
                                         const VerticalWeightProfile& b);

 private:
  explicit VerticalWeightProfile(std::vector<Factor> factors);
  std::vector<Factor> factors_;
};

/// φ(t), φ'(t), ..., φ^{(order)}(t). Throws OutOfSupport / UnsupportedOrder.
std::vector<double> eval_with_derivatives(const RadialWeightProfile& profile, double t,
                                          int order);
std::vector<double> eval_with_derivatives(const VerticalWeightProfile& profile, double y,
                                          int order);

struct DefiningReport {
  bool is_defining = false;
  double boundary_value = 0.0;
  double boundary_slope = 0.0;
};

/// φ(1) = 0 and φ'(1) < 0 (first-order vanishing at the sphere).
DefiningReport check_defining(const RadialWeightProfile& profile);

/// (tφ'/φ)'(t) < 0 at every grid point.
bool check_radial_psh(const RadialWeightProfile& profile, std::span<const double> grid);
bool check_radial_psh(const RadialWeightProfile& profile);

/// ρ' > 0 and (ρ'/ρ)' < 0 at every grid point.
bool check_vertical_hypotheses(const VerticalWeightProfile& profile,
                               std::span<const double> grid);
bool check_vertical_hypotheses(const VerticalWeightProfile& profile);

/// ρ(0) = 0 < ρ'(0).
bool vanishes_to_first_order_at_zero(const VerticalWeightProfile& profile);

/// Positivity on a sampled grid (the profile invariant).
bool check_positive(const RadialWeightProfile& profile);
bool check_positive(const VerticalWeightProfile& profile);

/// Default hypothesis grids: 64 Chebyshev points, excluding a 1e−3 collar at
/// t = 1 for ball weights.
std::vector<double> default_radial_grid(const RadialWeightProfile& profile);
std::vector<double> default_vertical_grid();
std::vector<double> chebyshev_points(double a, double b, int count);

/// Weight grammar: `poly:c0,c1,...`, `power:p`, `exp:beta`, products joined
/// with `*`; vertical weights `vert-power:p`, `vert-expdecay`, `vert-sat:c`.
RadialWeightProfile parse_radial_weight(std::string_view text);
VerticalWeightProfile parse_vertical_weight(std::string_view text);
bool is_vertical_weight_spec(std::string_view text);

}  // namespace berglab
