#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "berglab/weights.hpp"

namespace berglab {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_depth = 40;
  int panel_order = 15;  // embedded Gauss 7 / Kronrod 15
  int max_panels = 20000;
};

/// Integration range: a finite [a, b] or the half line [a, ∞).
struct Interval {
  double a = 0.0;
  double b = 1.0;

  static Interval finite(double a, double b) { return {a, b}; }
  static Interval half_line(double a = 0.0) {
    return {a, std::numeric_limits<double>::infinity()};
  }
  bool semi_infinite() const noexcept { return b == std::numeric_limits<double>::infinity(); }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// Globally adaptive G7/K15 quadrature with bisection. [a, ∞) is mapped to
/// [0, 1) by u = (r − a)/(1 + r − a). Breakpoints (in the original variable)
/// seed the initial panels. Non-convergence is reported through the flag with
/// the best value, not thrown.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, Interval interval,
                                    const QuadratureSpec& spec = {},
                                    std::span<const double> breakpoints = {});

/// Location and width of the maximum of a log-integrand.
struct PeakHint {
  double location = 0.0;
  double scale = 0.0;  // ≤ 0 means unknown
};

struct LogQuadratureResult {
  double log_value = -std::numeric_limits<double>::infinity();
  double rel_error = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// ∫ exp(log_f) over the interval, returned as a logarithm. The integrand is
/// rescaled by its maximum (located from the hint and a coarse scan, refined by
/// golden section), so values far outside double range are fine.
LogQuadratureResult integrate_log(const std::function<double(double)>& log_f, Interval interval,
                                  const QuadratureSpec& spec = {},
                                  std::optional<PeakHint> hint = std::nullopt);

// ---------------------------------------------------------------------------
// Weight moments ρ_k(α) = ∫ r^k φ(r²)^α dr over [0, √T).

struct MomentResult {
  double value = 0.0;      // exp(log_value); may underflow
  double log_value = 0.0;
  double error_estimate = 0.0;  // absolute, same scale as value
  double rel_error = 0.0;
  bool underflow = false;  // value < 1e−290: use log_value
  bool converged = true;
};

MomentResult moment(const RadialWeightProfile& profile, int k, double alpha,
                    const QuadratureSpec& spec = {});

/// Stationary point and width of r ↦ k log r + α log φ(r²), from closed-form
/// derivatives of φ.
PeakHint moment_peak(const RadialWeightProfile& profile, int k, double alpha);

struct MomentTable {
  std::string profile;  // canonical weight string
  double alpha = 0.0;
  bool finite_support = true;
  std::vector<double> values;  // ρ_k(α), k = 0..k_max (may underflow; see log_values)
  std::vector<double> log_values;
  std::vector<double> error_estimates;
  std::vector<double> rel_errors;

  int k_max() const noexcept { return static_cast<int>(log_values.size()) - 1; }
  /// ρ_j / ρ_k computed as exp(log ρ_j − log ρ_k).
  double ratio(int j, int k) const;
  /// Positivity, log-convexity and (finite support) monotonicity in k.
  bool check_invariants() const;
};

MomentTable moment_table(const RadialWeightProfile& profile, double alpha, int k_max,
                         const QuadratureSpec& spec = {});

/// Appends entries up to new_k_max (no-op if already that long).
void extend_moment_table(MomentTable& table, const RadialWeightProfile& profile, int new_k_max,
                         const QuadratureSpec& spec = {});

/// Thread-safe cache of immutable tables keyed by (profile, α).
class MomentCache {
 public:
  std::shared_ptr<const MomentTable> get(const RadialWeightProfile& profile, double alpha,
                                         int min_k_max, const QuadratureSpec& spec = {});
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const MomentTable>> tables_;
};

// ---------------------------------------------------------------------------
// Laplace transform ρ̃(t) = ∫_0^∞ ρ(y)^α e^{−2ty} dy.

enum class TransformMode {
  kNumeric,
  kClosedFormIfAvailable,
};

struct TransformResult {
  double log_value = 0.0;
  double rel_error = 0.0;
  bool closed_form = false;
  bool converged = true;
};

TransformResult log_laplace_transform_rho(const VerticalWeightProfile& profile, double t,
                                          double alpha = 1.0,
                                          TransformMode mode = TransformMode::kNumeric,
                                          const QuadratureSpec& spec = {});

double laplace_transform_rho(const VerticalWeightProfile& profile, double t,
                             const QuadratureSpec& spec = {}, double alpha = 1.0,
                             TransformMode mode = TransformMode::kNumeric);

}  // namespace berglab
