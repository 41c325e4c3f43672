#include "berglab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "berglab/error.hpp"
#include "berglab/parallel.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kronrod abscissae (descending, last is the centre); odd indices are the
// Gauss 7 nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  int depth;
};

Panel gauss_kronrod(const std::function<double(double)>& g, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double pair = g(c - x) + g(c + x);
    resk += kWgk[j] * pair;
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  double err = std::abs((resk - resg) * h);
  if (!std::isfinite(resk)) err = kInf;
  return {a, b, resk * h, err, depth};
}

bool by_error(const Panel& x, const Panel& y) { return x.error < y.error; }

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, Interval interval,
                                    const QuadratureSpec& spec,
                                    std::span<const double> breakpoints) {
  if (!(interval.a < interval.b)) {
    if (interval.a == interval.b) return {0.0, 0.0, true, 0};
    throw Error(ErrorCode::kInvalidArgument, "integration interval is reversed");
  }
  const bool semi = interval.semi_infinite();
  const double a0 = interval.a;
  int evaluations = 0;

  std::function<double(double)> g;
  if (semi) {
    g = [&](double u) {
      ++evaluations;
      const double one_minus = 1.0 - u;
      if (one_minus <= 0.0) return 0.0;
      const double v = f(a0 + u / one_minus);
      return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
    };
  } else {
    g = [&](double x) {
      ++evaluations;
      return f(x);
    };
  }

  const auto to_local = [&](double x) { return semi ? (x - a0) / (1.0 + x - a0) : x; };
  const double lo = semi ? 0.0 : interval.a;
  const double hi = semi ? 1.0 : interval.b;

  std::vector<double> cuts{lo, hi};
  for (double bp : breakpoints) {
    if (!std::isfinite(bp)) continue;
    const double u = to_local(bp);
    if (u > lo && u < hi) cuts.push_back(u);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    heap.push_back(gauss_kronrod(g, cuts[i], cuts[i + 1], 0));
  }
  std::make_heap(heap.begin(), heap.end(), by_error);

  const auto totals = [&] {
    // Summed in position order so the result is independent of heap layout.
    std::vector<Panel> all(heap);
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double v = 0.0, e = 0.0;
    for (const Panel& p : all) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  bool converged = false;
  int panels = static_cast<int>(heap.size());
  while (true) {
    const double target = std::max(spec.rel_tol * std::abs(value), spec.abs_tol);
    if (error <= target) {
      std::tie(value, error) = totals();
      if (error <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
        converged = true;
        break;
      }
    }
    if (heap.empty() || panels >= spec.max_panels) break;
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel worst = heap.back();
    heap.pop_back();
    if (worst.depth >= spec.max_depth || !(worst.b - worst.a > 0.0)) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(g, worst.a, mid, worst.depth + 1);
    const Panel right = gauss_kronrod(g, mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    ++panels;
  }
  if (!converged) std::tie(value, error) = totals();
  return {value, error, converged, evaluations};
}

// ---------------------------------------------------------------------------

namespace {

double safe_eval(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isnan(v) ? -kInf : v;
}

// Golden-section maximisation of f over [lo, hi] in a parameter s, x = map(s).
template <class Map>
double golden_max(const std::function<double(double)>& f, double lo, double hi, Map map) {
  constexpr double kR = 0.6180339887498949;
  double c = hi - kR * (hi - lo);
  double d = lo + kR * (hi - lo);
  double fc = safe_eval(f, map(c));
  double fd = safe_eval(f, map(d));
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (std::abs(lo) + std::abs(hi) + 1e-300); ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kR * (hi - lo);
      fc = safe_eval(f, map(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kR * (hi - lo);
      fd = safe_eval(f, map(d));
    }
  }
  return map(0.5 * (lo + hi));
}

}  // namespace

LogQuadratureResult integrate_log(const std::function<double(double)>& log_f, Interval interval,
                                  const QuadratureSpec& spec, std::optional<PeakHint> hint) {
  const bool semi = interval.semi_infinite();
  const double a = interval.a;
  const double b = interval.b;

  // Scan parameter s: x = a + (b − a)s on finite ranges, x = a + 10^s on [a, ∞).
  const auto map = [&](double s) { return semi ? a + std::pow(10.0, s) : a + (b - a) * s; };
  std::vector<double> params;
  if (semi) {
    for (int i = 0; i <= 96; ++i) params.push_back(-12.0 + 24.0 * i / 96.0);
  } else {
    for (double e : {1e-12, 1e-9, 1e-6, 1e-4}) params.push_back(e);
    for (int i = 0; i < 96; ++i) params.push_back((i + 0.5) / 96.0);
    for (double e : {1e-4, 1e-6, 1e-9, 1e-12}) params.push_back(1.0 - e);
  }

  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double v = safe_eval(log_f, map(params[i]));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  double peak = map(params[best]);
  double peak_value = best_value;
  double scale = 0.0;
  if (hint && hint->location >= a && hint->location <= b) {
    const double hv = safe_eval(log_f, hint->location);
    if (hv >= peak_value) {
      peak = hint->location;
      peak_value = hv;
      scale = hint->scale;
    }
  }
  if (peak_value == -kInf) return {-kInf, 0.0, true, static_cast<int>(params.size())};

  if (scale <= 0.0) {
    // Refine the scan maximum, then read the width off the curvature.
    const double lo = params[best == 0 ? 0 : best - 1];
    const double hi = params[std::min(best + 1, params.size() - 1)];
    if (hi > lo) {
      const double refined = golden_max(log_f, lo, hi, map);
      const double rv = safe_eval(log_f, refined);
      if (rv >= peak_value) {
        peak = refined;
        peak_value = rv;
      }
    }
    const double h = std::max(1e-4 * std::abs(peak - a), 1e-7) *
                     (semi ? 1.0 : std::min(1.0, b - a));
    if (peak - h > a && (semi || peak + h < b)) {
      const double curv =
          (safe_eval(log_f, peak + h) - 2.0 * peak_value + safe_eval(log_f, peak - h)) / (h * h);
      if (std::isfinite(curv) && curv < 0.0) scale = 1.0 / std::sqrt(-curv);
    }
  }

  std::vector<double> breaks{peak};
  if (scale > 0.0) {
    for (double m : {1.0, 3.0, 8.0, 20.0}) {
      breaks.push_back(peak - m * scale);
      breaks.push_back(peak + m * scale);
    }
  }

  const double shift = peak_value;
  const auto f = [&](double x) {
    const double l = log_f(x);
    if (std::isnan(l)) return 0.0;
    return std::exp(l - shift);
  };
  const QuadratureResult q = integrate_adaptive(f, interval, spec, breaks);
  LogQuadratureResult out;
  out.converged = q.converged;
  out.evaluations = q.evaluations + static_cast<int>(params.size());
  if (q.value <= 0.0) {
    out.log_value = -kInf;
    out.rel_error = kInf;
    return out;
  }
  out.log_value = shift + std::log(q.value);
  out.rel_error = q.error_estimate / q.value;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Returns the log-integrand slope k + 2αtφ'/φ at t = r².
double moment_slope(const RadialWeightProfile& profile, int k, double alpha, double t) {
  const Jet j = profile.jet(t, 1);
  return k + 2.0 * alpha * t * j.derivative(1) / j.value();
}

double moment_curvature(const RadialWeightProfile& profile, int k, double alpha, double r) {
  const double t = r * r;
  const Jet j = profile.jet(t, 2);
  const double q = j.derivative(1) / j.value();
  const double q2 = j.derivative(2) / j.value();
  return -k / (r * r) + 2.0 * alpha * q + 4.0 * alpha * t * (q2 - q * q);
}

}  // namespace

PeakHint moment_peak(const RadialWeightProfile& profile, int k, double alpha) {
  const bool bounded = !profile.unbounded_support();
  if (alpha == 0.0) {
    if (!bounded) throw Error(ErrorCode::kInvalidArgument, "moments of φ^0 diverge on R^n");
    return {1.0, k > 0 ? 1.0 / k : 0.0};
  }
  std::vector<double> ts;
  if (bounded) {
    // Geometric below 1/512 so that very large α (peak near 0) is still bracketed.
    for (int i = 0; i < 120; ++i) ts.push_back(std::pow(10.0, -300.0 + 297.3 * i / 120.0));
    for (int i = 1; i < 512; ++i) ts.push_back(i / 512.0);
    for (double e : {1e-4, 1e-6, 1e-9, 1e-12}) ts.push_back(1.0 - e);
  } else {
    for (int i = 0; i <= 192; ++i) ts.push_back(std::pow(10.0, -12.0 + 24.0 * i / 192.0));
  }

  if (k == 0 && moment_slope(profile, k, alpha, ts.front()) <= 0.0) {
    const double g2 = 2.0 * alpha * profile.jet(0.0, 1).derivative(1) / profile.value(0.0);
    return {0.0, g2 < 0.0 ? 1.0 / std::sqrt(-g2) : 0.0};
  }
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    double lo = ts[i], hi = ts[i + 1];
    if (moment_slope(profile, k, alpha, lo) > 0.0 && moment_slope(profile, k, alpha, hi) <= 0.0) {
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (moment_slope(profile, k, alpha, mid) > 0.0 ? lo : hi) = mid;
      }
      const double r = std::sqrt(0.5 * (lo + hi));
      const double g2 = moment_curvature(profile, k, alpha, r);
      return {r, g2 < 0.0 ? 1.0 / std::sqrt(-g2) : 0.0};
    }
  }
  // Still increasing at the last grid point: the mass sits at r = 1.
  if (bounded) {
    const double s = moment_slope(profile, k, alpha, ts.back());
    return {1.0, s > 0.0 ? 1.0 / s : 0.0};
  }
  return {std::sqrt(ts.back()), 0.0};
}

MomentResult moment(const RadialWeightProfile& profile, int k, double alpha,
                    const QuadratureSpec& spec) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "moment order must be ≥ 0");
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be ≥ 0");
  const bool bounded = !profile.unbounded_support();
  const PeakHint hint = moment_peak(profile, k, alpha);
  const auto log_f = [&](double r) {
    const double t = r * r;
    if (bounded && t >= 1.0) return -kInf;
    double l = special::xlogy(k, r);
    if (alpha != 0.0) l += alpha * profile.log_value(t);
    return l;
  };
  const Interval range = bounded ? Interval::finite(0.0, 1.0) : Interval::half_line(0.0);
  const LogQuadratureResult q = integrate_log(log_f, range, spec, hint);
  if (!std::isfinite(q.log_value)) {
    throw Error(ErrorCode::kNoConvergence, "moment k = " + std::to_string(k) + " at α = " +
                                               text::shortest(alpha) + " is not representable");
  }
  MomentResult out;
  out.log_value = q.log_value;
  out.value = std::exp(q.log_value);
  out.rel_error = q.rel_error;
  out.error_estimate = q.rel_error * out.value;
  out.underflow = out.value < 1e-290;
  out.converged = q.converged;
  return out;
}

double MomentTable::ratio(int j, int k) const {
  return std::exp(log_values.at(static_cast<std::size_t>(j)) -
                  log_values.at(static_cast<std::size_t>(k)));
}

bool MomentTable::check_invariants() const {
  const auto slack = [&](std::size_t i) { return 2.0 * rel_errors[i] + 1e-14; };
  for (std::size_t k = 0; k < log_values.size(); ++k) {
    if (!std::isfinite(log_values[k])) return false;
  }
  for (std::size_t k = 0; k + 2 < log_values.size(); ++k) {
    const double tol = slack(k) + slack(k + 1) + slack(k + 2);
    if (2.0 * log_values[k + 1] > log_values[k] + log_values[k + 2] + tol) return false;
  }
  if (finite_support) {
    for (std::size_t k = 0; k + 1 < log_values.size(); ++k) {
      if (log_values[k + 1] > log_values[k] + slack(k) + slack(k + 1)) return false;
    }
  }
  return true;
}

void extend_moment_table(MomentTable& table, const RadialWeightProfile& profile, int new_k_max,
                         const QuadratureSpec& spec) {
  const std::size_t old_size = table.log_values.size();
  const std::size_t new_size = static_cast<std::size_t>(new_k_max) + 1;
  if (new_size <= old_size) return;
  std::vector<MomentResult> fresh(new_size - old_size);
  parallel_for(fresh.size(), configured_threads(), [&](std::size_t i) {
    fresh[i] = moment(profile, static_cast<int>(old_size + i), table.alpha, spec);
  });
  for (const MomentResult& m : fresh) {
    if (!m.converged || !std::isfinite(m.log_value)) {
      throw Error(ErrorCode::kNoConvergence, "moment quadrature did not converge for " +
                                                 table.profile + " at α = " +
                                                 text::shortest(table.alpha));
    }
    table.values.push_back(m.value);
    table.log_values.push_back(m.log_value);
    table.error_estimates.push_back(m.error_estimate);
    table.rel_errors.push_back(m.rel_error);
  }
}

MomentTable moment_table(const RadialWeightProfile& profile, double alpha, int k_max,
                         const QuadratureSpec& spec) {
  MomentTable table;
  table.profile = profile.describe();
  table.alpha = alpha;
  table.finite_support = !profile.unbounded_support();
  extend_moment_table(table, profile, k_max, spec);
  return table;
}

std::shared_ptr<const MomentTable> MomentCache::get(const RadialWeightProfile& profile,
                                                    double alpha, int min_k_max,
                                                    const QuadratureSpec& spec) {
  const std::string key =
      profile.describe() + "|" + text::shortest(alpha) + "|" + text::shortest(spec.rel_tol);
  std::shared_ptr<const MomentTable> existing;
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) existing = it->second;
  }
  if (existing && existing->k_max() >= min_k_max) return existing;

  // Grow geometrically so repeated small extensions stay cheap.
  int target = min_k_max;
  if (existing) target = std::max(min_k_max, existing->k_max() + existing->k_max() / 2);
  auto grown = std::make_shared<MomentTable>();
  if (existing) {
    *grown = *existing;
  } else {
    grown->profile = profile.describe();
    grown->alpha = alpha;
    grown->finite_support = !profile.unbounded_support();
  }
  extend_moment_table(*grown, profile, target, spec);

  std::lock_guard lock(mutex_);
  auto& slot = tables_[key];
  if (!slot || slot->k_max() < grown->k_max()) slot = grown;
  return slot;
}

std::size_t MomentCache::size() const {
  std::lock_guard lock(mutex_);
  return tables_.size();
}

// ---------------------------------------------------------------------------

TransformResult log_laplace_transform_rho(const VerticalWeightProfile& profile, double t,
                                          double alpha, TransformMode mode,
                                          const QuadratureSpec& spec) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "α must be ≥ 0");
  double q = 0.0, lambda = 0.0;
  const bool gamma = profile.gamma_form(q, lambda);
  const double rate = 2.0 * t + (gamma ? lambda * alpha : 0.0);
  if (!(t > 0.0) && !(gamma && rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Laplace transform needs t > 0");
  }
  if (mode == TransformMode::kClosedFormIfAvailable && gamma) {
    const double s = q * alpha + 1.0;
    return {special::lgamma(s) - s * std::log(rate), 0.0, true, true};
  }

  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "numeric Laplace transform needs t > 0");

  // Integrate in u = 2ty so the mass sits at u = O(1) whatever t is:
  // ρ̃(t) = (2t)^{−1} ∫ ρ(u/2t)^α e^{−u} du.
  const double inv = 1.0 / (2.0 * t);
  const auto slope = [&](double u) {
    const Jet j = profile.jet(u * inv, 1);
    return alpha * inv * j.derivative(1) / j.value() - 1.0;
  };
  std::optional<PeakHint> hint;
  if (alpha == 0.0) {
    hint = PeakHint{0.0, 1.0};
  } else {
    double prev = 1e-12;
    if (slope(prev) <= 0.0) {
      hint = PeakHint{0.0, 1.0 / std::abs(slope(prev))};
    } else {
      for (int i = 1; i <= 240 && !hint; ++i) {
        const double u = std::pow(10.0, -12.0 + 24.0 * i / 240.0);
        if (slope(u) <= 0.0) {
          double lo = prev, hi = u;
          for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (slope(mid) > 0.0 ? lo : hi) = mid;
          }
          const double us = 0.5 * (lo + hi);
          const Jet j = profile.jet(us * inv, 2);
          const double l1 = j.derivative(1) / j.value();
          const double curv = alpha * inv * inv * (j.derivative(2) / j.value() - l1 * l1);
          hint = PeakHint{us, curv < 0.0 ? 1.0 / std::sqrt(-curv) : 0.0};
        }
        prev = u;
      }
    }
  }

  const auto log_f = [&](double u) {
    double l = -u;
    if (alpha != 0.0) l += alpha * profile.log_value(u * inv);
    return l;
  };
  const LogQuadratureResult r = integrate_log(log_f, Interval::half_line(0.0), spec, hint);
  return {r.log_value + std::log(inv), r.rel_error, false, r.converged};
}

double laplace_transform_rho(const VerticalWeightProfile& profile, double t,
                             const QuadratureSpec& spec, double alpha, TransformMode mode) {
  return std::exp(log_laplace_transform_rho(profile, t, alpha, mode, spec).log_value);
}

}  // namespace berglab
