#include "berglab/verify.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>

#include "berglab/asymptotics.hpp"
#include "berglab/ball_kernel.hpp"
#include "berglab/cli.hpp"
#include "berglab/error.hpp"
#include "berglab/halfspace_kernel.hpp"
#include "berglab/oracles.hpp"
#include "berglab/quadrature.hpp"
#include "berglab/series.hpp"
#include "berglab/text.hpp"
#include "berglab/weights.hpp"

namespace berglab {

namespace {

using Checks = std::vector<CheckResult>;

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// |got − want| / |want| ≤ tol, reported as the error against 0.
void within(Checks& out, std::string name, double got, double want, double tol) {
  const double e = rel_err(got, want);
  out.push_back({std::move(name), got, want, tol, e <= tol});
}

// A bound: got ≤ limit.
void at_most(Checks& out, std::string name, double got, double limit) {
  out.push_back({std::move(name), got, limit, 0.0, got <= limit});
}

void holds(Checks& out, std::string name, bool ok) {
  out.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, 0.0, ok});
}

std::string tag(std::initializer_list<std::pair<const char*, double>> parts) {
  std::string s;
  for (const auto& [k, v] : parts) {
    s += ':';
    s += k;
    s += '=';
    s += text::shortest(v);
  }
  return s;
}

// --- 1 ---------------------------------------------------------------------

Checks suite_ball() {
  Checks out;
  const auto w = RadialWeightProfile::power(1.0);
  for (int n : {3, 4, 5}) {
    for (double alpha : {0.0, 1.0, 5.0, 10.0}) {
      for (double t : {0.0, 0.25, 0.49}) {
        const double series = harmonic_ball_diag(w, alpha, n, t).value;
        const double oracle =
            oracle_harm_diag({OracleGeometry::kRealBall, KernelKind::kHarmonic, alpha, n, t});
        const std::string at = tag({{"n", n}, {"alpha", alpha}, {"t", t}});
        within(out, "ball-series-vs-2F1" + at, series, oracle, 1e-8);
        if (alpha == 0.0) {
          within(out, "ball-series-vs-rational" + at, series, unweighted_ball_diag(n, t), 1e-10);
        }
      }
    }
  }
  return out;
}

// --- 2 ---------------------------------------------------------------------

Checks suite_fock() {
  Checks out;
  const auto w = RadialWeightProfile::exponential(1.0);
  for (int n : {3, 4}) {
    for (double alpha : {1.0, 4.0}) {
      for (double t : {0.0, 0.5, 1.0}) {
        const double series = harmonic_ball_diag(w, alpha, n, t).value;
        const double oracle =
            oracle_harm_diag({OracleGeometry::kFock, KernelKind::kHarmonic, alpha, n, t});
        within(out, "fock-series-vs-1F1" + tag({{"n", n}, {"alpha", alpha}, {"t", t}}), series,
               oracle, 1e-8);
      }
    }
  }
  return out;
}

// --- 3 ---------------------------------------------------------------------

Checks suite_halfspace() {
  Checks out;
  const auto w = VerticalWeightProfile::power(1.0);
  HalfspaceOptions closed;
  closed.tol = 1e-11;
  HalfspaceOptions numeric;
  numeric.tol = 1e-7;
  numeric.transform = TransformMode::kNumeric;
  for (int n : {2, 3, 4}) {
    for (double alpha : {0.0, 1.0, 3.0}) {
      for (double y : {0.5, 1.0, 2.0}) {
        const double oracle =
            oracle_harm_diag({OracleGeometry::kHalfSpace, KernelKind::kHarmonic, alpha, n, y});
        const std::string at = tag({{"n", n}, {"alpha", alpha}, {"y", y}});
        within(out, "halfspace-closed-transform" + at,
               harmonic_halfspace_diag(w, alpha, n, y, closed).value, oracle, 1e-8);
        within(out, "halfspace-numeric-transform" + at,
               harmonic_halfspace_diag(w, alpha, n, y, numeric).value, oracle, 1e-4);
      }
    }
  }
  return out;
}

// --- 4, 5 ------------------------------------------------------------------

AsymptoticReport report_for(Theorem theorem, WeightProfile weight, int d, double x,
                            std::vector<double> alphas,
                            KernelSource source = KernelSource::kSeries) {
  AsymptoticRequest r;
  r.theorem = theorem;
  r.weight = std::move(weight);
  r.dimension = d;
  r.coordinate = x;
  r.alphas = std::move(alphas);
  r.source = source;
  return asymptotic_report(r);
}

Checks suite_thm2() {
  Checks out;
  const auto rep = report_for(Theorem::kBall, RadialWeightProfile::polynomial({1.0, 0.0, -1.0}),
                              3, 0.25, {40.0, 80.0, 160.0});
  at_most(out, "thm2-gap-at-160", std::abs(rep.ratios[2] - 1.0), 0.10);
  for (std::size_t i = 1; i < rep.ratios.size(); ++i) {
    const double prev = std::abs(rep.ratios[i - 1] - 1.0);
    at_most(out, "thm2-gap-halving:alpha=" + text::shortest(rep.alpha_grid[i]),
            std::abs(rep.ratios[i] - 1.0), 0.7 * prev);
  }
  return out;
}

Checks suite_thm2_oracle() {
  Checks out;
  const auto rep = report_for(Theorem::kBall, RadialWeightProfile::power(1.0), 3, 0.25,
                              {50.0, 100.0, 200.0, 400.0, 1000.0}, KernelSource::kOracle);
  at_most(out, "thm2-oracle-gap-at-1000", std::abs(rep.ratios.back() - 1.0), 0.02);
  within(out, "thm2-richardson-c0", rep.fitted_coefficients.at(0), rep.prediction, 0.01);
  return out;
}

// --- 6 ---------------------------------------------------------------------

Checks suite_thm3() {
  Checks out;
  const int n = 3;
  const std::vector<double> grid = {50.0, 100.0, 200.0, 500.0};
  const auto rep = report_for(Theorem::kHalfSpace, VerticalWeightProfile::power(1.0), n, 1.0, grid);
  double prev_gap = INFINITY;
  bool trend = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid[i];
    const double gamma_ratio =
        std::exp(std::lgamma(n + a) - std::lgamma(a + 1.0) - (n - 1) * std::log(a));
    within(out, "thm3-power-ratio-vs-gamma:alpha=" + text::shortest(a), rep.ratios[i],
           gamma_ratio, 1e-8);
    const double gap = std::abs(gamma_ratio - 1.0);
    trend = trend && gap < prev_gap;
    prev_gap = gap;
  }
  holds(out, "thm3-gamma-ratio-trend", trend);
  at_most(out, "thm3-power-gap-at-500", std::abs(rep.ratios.back() - 1.0), 0.02);

  const auto sat =
      report_for(Theorem::kHalfSpace, VerticalWeightProfile::saturating(1.0), n, 1.0, {160.0});
  at_most(out, "thm3-saturating-gap-at-160", std::abs(sat.ratios.back() - 1.0), 0.10);
  return out;
}

// --- 7 ---------------------------------------------------------------------

Checks suite_thm1() {
  Checks out;
  const int n = 3;
  const auto rep = report_for(Theorem::kRootGap, RadialWeightProfile::power(1.0), n, 0.25,
                              {50.0, 100.0, 200.0});
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    const double a = rep.alpha_grid[i];
    at_most(out, "thm1-gap-bound:alpha=" + text::shortest(a), std::abs(rep.ratios[i] - 1.0),
            2.0 * (n - 1) * std::log(a) / a);
  }
  holds(out, "thm1-gap-monotone", rep.converged);
  return out;
}

// --- 8 ---------------------------------------------------------------------

Checks suite_stokes() {
  Checks out;
  const int n = 3;
  const auto w = RadialWeightProfile::power(1.0);
  const auto origin = report_for(Theorem::kOrigin, w, n, 0.0, {100.0, 200.0});
  at_most(out, "stokes-origin-gap-at-200", std::abs(origin.ratios.back() - 1.0), 0.05);
  // The α^{1−n} scaling applied at t = 0, where φ(0) = 1.
  const auto flat = [&](double alpha) {
    return std::exp((1.0 - n) * std::log(alpha) + harmonic_ball_diag(w, alpha, n, 0.0).log_value);
  };
  const double growth = flat(200.0) / flat(100.0);
  out.push_back({"stokes-flat-scaling-growth", growth, 1.3, 0.0, growth >= 1.3});
  return out;
}

// --- 9 ---------------------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

Checks suite_identities() {
  Checks out;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> coeff(-50, 50), degree(0, 12), dim(3, 8);
  int holo_ok = 0, harm_ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (Rational& x : c) x = Rational(coeff(rng), 1 + std::abs(coeff(rng)));
    const BasicPowerSeries<Rational> f(c, true);
    const int m = dim(rng) - 2, n = dim(rng);
    holo_ok += holo_coeff_transform(f, m, CoefficientRoute::kFactor) ==
               holo_coeff_transform(f, m, CoefficientRoute::kShiftDifferentiate);
    harm_ok += harm_coeff_transform(f, n, CoefficientRoute::kFactor) ==
               harm_coeff_transform(f, n, CoefficientRoute::kShiftDifferentiate);
  }
  out.push_back({"holo-coefficient-identity-exact", double(holo_ok), 50.0, 0.0, holo_ok == 50});
  out.push_back({"harm-coefficient-identity-exact", double(harm_ok), 50.0, 0.0, harm_ok == 50});

  for (int n = 2; n <= 8; ++n) {
    at_most(out, "gamma-doubling:n=" + std::to_string(n), gamma_doubling_check(n), 1e-13);
  }

  struct BridgePoint {
    VerticalWeightProfile w;
    double alpha;
    int n;
    double y;
  };
  const BridgePoint points[] = {
      {VerticalWeightProfile::power(1.0), 1.0, 3, 1.0},
      {VerticalWeightProfile::power(1.0), 3.0, 4, 0.5},
      {VerticalWeightProfile::power(2.0), 2.0, 2, 2.0},
      {VerticalWeightProfile::exp_decay(), 1.0, 3, 1.0},
      {VerticalWeightProfile::saturating(1.0), 2.0, 3, 1.0},
      {VerticalWeightProfile::saturating(2.0), 5.0, 5, 0.75},
  };
  HalfspaceOptions bridge_options;
  bridge_options.tol = 1e-11;
  for (const BridgePoint& p : points) {
    const BridgeCheck b = halfspace_siegel_bridge_check(p.w, p.alpha, p.n, p.y, bridge_options);
    at_most(out,
            "bridge:" + p.w.describe() + tag({{"alpha", p.alpha}, {"n", p.n}, {"y", p.y}}),
            b.relative_gap, 1e-8);
  }

  const RadialWeightProfile radial[] = {RadialWeightProfile::power(1.0),
                                        RadialWeightProfile::polynomial({1.0, 0.0, -1.0}),
                                        RadialWeightProfile::exponential(1.0)};
  for (const auto& w : radial) {
    for (double t : {0.1, 0.25, 0.5}) {
      within(out, "n2-laplacian:" + w.describe() + tag({{"t", t}}), thm2_leading(w, 2, t).value,
             n2_laplacian_leading(w, t), 1e-12);
    }
  }
  return out;
}

// --- 10 --------------------------------------------------------------------

using Decimal = boost::multiprecision::cpp_dec_float_100;

Checks suite_laplace() {
  Checks out;
  // ∫₀¹ x e^{αx} dx with F(x) = x, S(x) = x, endpoint b = 1.
  const JetFunction F = [](double x, int order) { return Jet::variable(x, order); };
  const JetFunction S = F;
  const std::vector<double> e = laplace_endpoint_expansion(F, S, 1.0, 1);
  within(out, "laplace-e0", e.at(0), 1.0, 0.0);
  within(out, "laplace-e1-sign", e.at(1), -1.0, 0.0);

  double prev = INFINITY;
  bool decreasing = true;
  for (double alpha : {20.0, 40.0, 80.0}) {
    const Decimal a(alpha);
    const Decimal ea = exp(a);
    const Decimal exact = ea * (1 / a - 1 / (a * a)) + 1 / (a * a);
    const Decimal approx = ea / a * (Decimal(e[0]) + Decimal(e[1]) / a);
    const double scaled = static_cast<double>(abs(exact - approx) * a * a / ea);
    at_most(out, "laplace-scaled-error:alpha=" + text::shortest(alpha), scaled, 1.0);
    decreasing = decreasing && scaled < prev;
    prev = scaled;
  }
  holds(out, "laplace-scaled-error-decreasing", decreasing);
  return out;
}

// --- 11 --------------------------------------------------------------------

std::string sweep_csv(const char* threads) {
  const char* saved = std::getenv("BERGLAB_THREADS");
  const std::string restore = saved ? saved : "";
  ::setenv("BERGLAB_THREADS", threads, 1);
  RunConfig c;
  c.command = Command::kSweep;
  c.geometry = "ball";
  c.weight = "poly:1,0,-1";
  c.n = 3;
  c.t = 0.25;
  c.alphas = {10.0, 20.0, 40.0, 80.0};
  std::ostringstream os;
  run(c, os);
  if (saved) {
    ::setenv("BERGLAB_THREADS", restore.c_str(), 1);
  } else {
    ::unsetenv("BERGLAB_THREADS");
  }
  return os.str();
}

Checks suite_properties() {
  Checks out;
  const RadialWeightProfile weights[] = {RadialWeightProfile::power(1.0),
                                         RadialWeightProfile::polynomial({1.0, 0.0, -1.0}),
                                         RadialWeightProfile::power(2.0),
                                         RadialWeightProfile::exponential(1.0)};
  for (const auto& w : weights) {
    for (double alpha : {0.0, 1.0, 10.0, 100.0}) {
      if (alpha == 0.0 && w.unbounded_support()) continue;
      const MomentTable table = moment_table(w, alpha, 60);
      holds(out, "moments-positive-log-convex:" + w.describe() + tag({{"alpha", alpha}}),
            table.check_invariants());
    }
  }

  const auto unit = RadialWeightProfile::power(1.0);
  const auto doubled = RadialWeightProfile::polynomial({2.0, -2.0});
  for (double alpha : {1.0, 10.0, 40.0}) {
    for (double t : {0.0, 0.25, 0.6}) {
      const auto a = harmonic_ball_diag(unit, alpha, 3, t);
      const auto b = harmonic_ball_diag(doubled, alpha, 3, t);
      // φ^α R_α in logs: the factor 2^α cancels against R's 2^{−α}.
      const double la = a.log_value + alpha * std::log1p(-t);
      const double lb = b.log_value + alpha * std::log(2.0 - 2.0 * t);
      within(out, "weight-scaling" + tag({{"alpha", alpha}, {"t", t}}), std::exp(lb - la), 1.0,
             1e-9);
    }
  }

  for (const auto& w : weights) {
    for (double alpha : {0.0, 5.0, 50.0}) {
      if (alpha == 0.0 && w.unbounded_support()) continue;
      double prev = -INFINITY;
      bool increasing = true;
      for (int i = 0; i <= 10; ++i) {
        const double t = 0.08 * i;
        const double v = harmonic_ball_diag(w, alpha, 3, t).log_value;
        increasing = increasing && v > prev;
        prev = v;
      }
      holds(out, "kernel-increasing-in-t:" + w.describe() + tag({{"alpha", alpha}}), increasing);
    }
  }

  const std::string one = sweep_csv("1");
  const std::string four = sweep_csv("4");
  holds(out, "sweep-csv-thread-independent", one == four && !one.empty());
  return out;
}

using Suite = std::function<Checks()>;

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> suites = {
      {"ball", suite_ball},           {"fock", suite_fock},
      {"halfspace", suite_halfspace}, {"thm2", suite_thm2},
      {"thm2-oracle", suite_thm2_oracle}, {"thm3", suite_thm3},
      {"thm1", suite_thm1},           {"stokes", suite_stokes},
      {"identities", suite_identities}, {"laplace", suite_laplace},
      {"properties", suite_properties},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, suite] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

bool is_suite_name(std::string_view name) {
  for (const std::string& s : suite_names()) {
    if (s == name) return true;
  }
  return false;
}

std::vector<CheckResult> run_suite(std::string_view name) {
  std::vector<CheckResult> out;
  for (const auto& [suite_name, suite] : registry()) {
    if (name == "all" || name == suite_name) {
      Checks part = suite();
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  if (out.empty() && !is_suite_name(name)) {
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + std::string(name) + "'");
  }
  return out;
}

std::string format_check(const CheckResult& check) {
  std::string name = check.name;
  std::replace(name.begin(), name.end(), ',', ';');
  return std::string(check.pass ? "PASS" : "FAIL") + ',' + name + ',' +
         text::sci15(check.got) + ',' + text::sci15(check.want) + ',' + text::sci15(check.tol);
}

}  // namespace berglab
