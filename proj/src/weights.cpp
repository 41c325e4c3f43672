#include "berglab/weights.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "berglab/error.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {
namespace {

constexpr int kMaxProfileOrder = 4;
constexpr int kDefaultGridSize = 64;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Generalized binomial coefficient C(p, j).
double binomial(double p, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= (p - i) / (i + 1);
  return r;
}

double inv_factorial(int j) {
  double r = 1.0;
  for (int i = 2; i <= j; ++i) r /= i;
  return r;
}

Jet jet_from_taylor(const double* taylor, int order) {
  double derivs[Jet::kMaxOrder + 1];
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) fact *= k;
    derivs[k] = taylor[k] * fact;
  }
  return Jet::from_derivatives(derivs, order + 1);
}

Jet radial_factor_jet(const RadialWeightProfile::Factor& factor, double t, int order) {
  double taylor[Jet::kMaxOrder + 1] = {};
  std::visit(
      Overloaded{
          [&](const RadialWeightProfile::Polynomial& p) {
            const auto& c = p.coefficients;
            for (int j = 0; j <= order; ++j) {
              // Σ_{i≥j} c_i C(i, j) t^{i−j}, Horner in t.
              double s = 0.0;
              for (int i = static_cast<int>(c.size()) - 1; i >= j; --i) {
                s = s * t + c[i] * binomial(i, j);
              }
              taylor[j] = s;
            }
          },
          [&](const RadialWeightProfile::Power& p) {
            for (int j = 0; j <= order; ++j) {
              const double coeff = binomial(p.exponent, j);
              taylor[j] = coeff == 0.0 ? 0.0
                                       : coeff * ((j % 2) ? -1.0 : 1.0) *
                                             std::pow(1.0 - t, p.exponent - j);
            }
          },
          [&](const RadialWeightProfile::Exponential& e) {
            const double base = std::exp(-e.rate * t);
            for (int j = 0; j <= order; ++j) {
              taylor[j] = std::pow(-e.rate, j) * inv_factorial(j) * base;
            }
          },
      },
      factor);
  return jet_from_taylor(taylor, order);
}

Jet vertical_factor_jet(const VerticalWeightProfile::Factor& factor, double y, int order) {
  double taylor[Jet::kMaxOrder + 1] = {};
  std::visit(Overloaded{
                 [&](const VerticalWeightProfile::Power& p) {
                   for (int j = 0; j <= order; ++j) {
                     const double coeff = binomial(p.exponent, j);
                     taylor[j] = coeff == 0.0 ? 0.0 : coeff * std::pow(y, p.exponent - j);
                   }
                 },
                 [&](const VerticalWeightProfile::ExpDecay&) {
                   const double base = std::exp(-y);
                   for (int j = 0; j <= order; ++j) {
                     taylor[j] = ((j % 2) ? -1.0 : 1.0) * inv_factorial(j) * base;
                   }
                 },
                 [&](const VerticalWeightProfile::Saturating& s) {
                   // y/(y+c) = 1 − c/(y+c)
                   const double w = y + s.scale;
                   taylor[0] = y / w;
                   double inv_pow = 1.0 / w;
                   for (int j = 1; j <= order; ++j) {
                     inv_pow /= w;
                     taylor[j] = -s.scale * ((j % 2) ? -1.0 : 1.0) * inv_pow;
                   }
                 },
             },
             factor);
  return jet_from_taylor(taylor, order);
}

std::string join_coefficients(const std::vector<double>& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += text::shortest(c[i]);
  }
  return out;
}

void check_order(int order) {
  if (order < 0 || order > kMaxProfileOrder) {
    throw Error(ErrorCode::kUnsupportedOrder,
                "derivative order " + std::to_string(order) + " not in 0..4");
  }
}

double parse_number(std::string_view token, std::string_view context) {
  const auto v = text::parse_double(token);
  if (!v) {
    throw Error(ErrorCode::kParseError,
                "bad number '" + std::string(token) + "' in weight '" + std::string(context) + "'");
  }
  return *v;
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialWeightProfile

RadialWeightProfile::RadialWeightProfile(std::vector<Factor> factors)
    : factors_(std::move(factors)) {}

RadialWeightProfile RadialWeightProfile::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "polynomial weight needs coefficients");
  }
  return RadialWeightProfile({Polynomial{std::move(coefficients)}});
}

RadialWeightProfile RadialWeightProfile::power(double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::kInvalidArgument, "power weight needs p > 0");
  return RadialWeightProfile({Power{p}});
}

RadialWeightProfile RadialWeightProfile::exponential(double beta) {
  if (!(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "exponential weight needs beta > 0");
  }
  return RadialWeightProfile({Exponential{beta}});
}

RadialWeightProfile RadialWeightProfile::product(
    std::span<const RadialWeightProfile> factors) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty weight product");
  std::vector<Factor> all;
  for (const auto& f : factors) all.insert(all.end(), f.factors_.begin(), f.factors_.end());
  return RadialWeightProfile(std::move(all));
}

RadialWeightProfile operator*(const RadialWeightProfile& a, const RadialWeightProfile& b) {
  const RadialWeightProfile both[] = {a, b};
  return RadialWeightProfile::product(both);
}

double RadialWeightProfile::support_end() const noexcept {
  return unbounded_support() ? std::numeric_limits<double>::infinity() : 1.0;
}

bool RadialWeightProfile::unbounded_support() const noexcept {
  for (const auto& f : factors_) {
    if (!std::holds_alternative<Exponential>(f)) return false;
  }
  return true;
}

Jet RadialWeightProfile::jet(double t, int order) const {
  Jet out = radial_factor_jet(factors_.front(), t, order);
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    out = out * radial_factor_jet(factors_[i], t, order);
  }
  return out;
}

double RadialWeightProfile::value(double t) const { return jet(t, 0).value(); }

double RadialWeightProfile::log_value(double t) const {
  double s = 0.0;
  for (const auto& f : factors_) {
    s += std::visit(Overloaded{
                        [&](const Polynomial& p) {
                          double v = 0.0;
                          for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
                            v = v * t + *it;
                          }
                          return std::log(v);
                        },
                        [&](const Power& p) { return p.exponent * std::log1p(-t); },
                        [&](const Exponential& e) { return -e.rate * t; },
                    },
                    f);
  }
  return s;
}

std::string RadialWeightProfile::describe() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += std::visit(
        Overloaded{
            [](const Polynomial& p) { return "poly:" + join_coefficients(p.coefficients); },
            [](const Power& p) { return "power:" + text::shortest(p.exponent); },
            [](const Exponential& e) { return "exp:" + text::shortest(e.rate); },
        },
        f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// VerticalWeightProfile

VerticalWeightProfile::VerticalWeightProfile(std::vector<Factor> factors)
    : factors_(std::move(factors)) {}

VerticalWeightProfile VerticalWeightProfile::power(double p) {
  if (!(p >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "vertical power needs p >= 0");
  return VerticalWeightProfile({Power{p}});
}

VerticalWeightProfile VerticalWeightProfile::exp_decay() {
  return VerticalWeightProfile({ExpDecay{}});
}

VerticalWeightProfile VerticalWeightProfile::saturating(double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::kInvalidArgument, "vert-sat needs c > 0");
  return VerticalWeightProfile({Saturating{c}});
}

VerticalWeightProfile VerticalWeightProfile::product(
    std::span<const VerticalWeightProfile> factors) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty weight product");
  std::vector<Factor> all;
  for (const auto& f : factors) all.insert(all.end(), f.factors_.begin(), f.factors_.end());
  return VerticalWeightProfile(std::move(all));
}

VerticalWeightProfile operator*(const VerticalWeightProfile& a,
                                const VerticalWeightProfile& b) {
  const VerticalWeightProfile both[] = {a, b};
  return VerticalWeightProfile::product(both);
}

Jet VerticalWeightProfile::jet(double y, int order) const {
  Jet out = vertical_factor_jet(factors_.front(), y, order);
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    out = out * vertical_factor_jet(factors_[i], y, order);
  }
  return out;
}

double VerticalWeightProfile::value(double y) const { return jet(y, 0).value(); }

double VerticalWeightProfile::log_value(double y) const {
  double s = 0.0;
  for (const auto& f : factors_) {
    s += std::visit(Overloaded{
                        [&](const Power& p) { return special::xlogy(p.exponent, y); },
                        [&](const ExpDecay&) { return -y; },
                        [&](const Saturating& c) { return std::log(y) - std::log(y + c.scale); },
                    },
                    f);
  }
  return s;
}

bool VerticalWeightProfile::declared_admissible() const noexcept {
  for (const auto& f : factors_) {
    if (std::holds_alternative<ExpDecay>(f)) return false;
  }
  return true;
}

bool VerticalWeightProfile::gamma_form(double& q, double& lambda) const noexcept {
  q = 0.0;
  lambda = 0.0;
  for (const auto& f : factors_) {
    if (const auto* p = std::get_if<Power>(&f)) {
      q += p->exponent;
    } else if (std::holds_alternative<ExpDecay>(f)) {
      lambda += 1.0;
    } else {
      return false;
    }
  }
  return true;
}

std::string VerticalWeightProfile::describe() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += std::visit(Overloaded{
                          [](const Power& p) { return "vert-power:" + text::shortest(p.exponent); },
                          [](const ExpDecay&) { return std::string("vert-expdecay"); },
                          [](const Saturating& s) { return "vert-sat:" + text::shortest(s.scale); },
                      },
                      f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations

std::vector<double> eval_with_derivatives(const RadialWeightProfile& profile, double t,
                                          int order) {
  check_order(order);
  if (!std::isfinite(t) || t < 0.0 || t > profile.support_end()) {
    throw Error(ErrorCode::kOutOfSupport,
                "t = " + text::shortest(t) + " outside the support of " + profile.describe());
  }
  const Jet j = profile.jet(t, order);
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
  return out;
}

std::vector<double> eval_with_derivatives(const VerticalWeightProfile& profile, double y,
                                          int order) {
  check_order(order);
  if (!std::isfinite(y) || y < 0.0) {
    throw Error(ErrorCode::kOutOfSupport,
                "y = " + text::shortest(y) + " outside (0, inf) for " + profile.describe());
  }
  const Jet j = profile.jet(y, order);
  std::vector<double> out(order + 1);
  for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
  return out;
}

DefiningReport check_defining(const RadialWeightProfile& profile) {
  DefiningReport report;
  if (profile.unbounded_support()) {
    report.boundary_value = std::numeric_limits<double>::quiet_NaN();
    report.boundary_slope = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const Jet j = profile.jet(1.0, 1);
  report.boundary_value = j.derivative(0);
  report.boundary_slope = j.derivative(1);
  report.is_defining =
      std::abs(report.boundary_value) <= 1e-12 && report.boundary_slope < -1e-12;
  return report;
}

namespace {

void check_radial_grid_point(const RadialWeightProfile& profile, double t) {
  if (!std::isfinite(t) || t < 0.0 || t >= profile.support_end()) {
    throw Error(ErrorCode::kOutOfSupport,
                "grid point " + text::shortest(t) + " outside the open support");
  }
}

}  // namespace

bool check_radial_psh(const RadialWeightProfile& profile, std::span<const double> grid) {
  for (double t : grid) check_radial_grid_point(profile, t);
  for (double t : grid) {
    const Jet j = profile.jet(t, 2);
    const double f = j.derivative(0), f1 = j.derivative(1), f2 = j.derivative(2);
    const double q = f1 / f;
    // (tφ'/φ)' = φ'/φ + tφ''/φ − t(φ'/φ)²
    const double d = q + t * f2 / f - t * q * q;
    if (!(d < 0.0)) return false;
  }
  return true;
}

bool check_radial_psh(const RadialWeightProfile& profile) {
  return check_radial_psh(profile, default_radial_grid(profile));
}

bool check_vertical_hypotheses(const VerticalWeightProfile& profile,
                               std::span<const double> grid) {
  for (double y : grid) {
    if (!std::isfinite(y) || !(y > 0.0)) {
      throw Error(ErrorCode::kOutOfSupport, "grid point " + text::shortest(y) + " not in (0, inf)");
    }
  }
  for (double y : grid) {
    const Jet j = profile.jet(y, 2);
    const double r = j.derivative(0), r1 = j.derivative(1), r2 = j.derivative(2);
    const double q = r1 / r;
    if (!(r1 > 0.0)) return false;
    if (!(r2 / r - q * q < 0.0)) return false;
  }
  return true;
}

bool check_vertical_hypotheses(const VerticalWeightProfile& profile) {
  return check_vertical_hypotheses(profile, default_vertical_grid());
}

bool vanishes_to_first_order_at_zero(const VerticalWeightProfile& profile) {
  const Jet j = profile.jet(0.0, 1);
  return std::abs(j.derivative(0)) <= 1e-12 && j.derivative(1) > 1e-12;
}

bool check_positive(const RadialWeightProfile& profile) {
  for (double t : default_radial_grid(profile)) {
    if (!(profile.value(t) > 0.0)) return false;
  }
  return true;
}

bool check_positive(const VerticalWeightProfile& profile) {
  for (double y : default_vertical_grid()) {
    if (!(profile.value(y) > 0.0)) return false;
  }
  return true;
}

std::vector<double> chebyshev_points(double a, double b, int count) {
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) {
    const double c = std::cos((2.0 * j + 1.0) * special::kPi / (2.0 * count));
    out[count - 1 - j] = 0.5 * (a + b) + 0.5 * (b - a) * c;
  }
  return out;
}

std::vector<double> default_radial_grid(const RadialWeightProfile& profile) {
  if (profile.unbounded_support()) return chebyshev_points(0.0, 20.0, kDefaultGridSize);
  return chebyshev_points(0.0, 1.0 - 1e-3, kDefaultGridSize);
}

std::vector<double> default_vertical_grid() {
  auto grid = chebyshev_points(std::log(1e-3), std::log(1e3), kDefaultGridSize);
  for (double& g : grid) g = std::exp(g);
  return grid;
}

// ---------------------------------------------------------------------------
// Grammar

RadialWeightProfile parse_radial_weight(std::string_view text_in) {
  const std::string_view whole = text::trim(text_in);
  if (whole.empty()) throw Error(ErrorCode::kParseError, "empty weight spec");
  std::vector<RadialWeightProfile> factors;
  for (std::string_view token : text::split(whole, '*')) {
    token = text::trim(token);
    const auto colon = token.find(':');
    const std::string_view name = token.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
    try {
      if (name == "poly") {
        std::vector<double> c;
        for (auto part : text::split(args, ',')) c.push_back(parse_number(part, whole));
        factors.push_back(RadialWeightProfile::polynomial(std::move(c)));
      } else if (name == "power") {
        factors.push_back(RadialWeightProfile::power(parse_number(args, whole)));
      } else if (name == "exp") {
        factors.push_back(RadialWeightProfile::exponential(parse_number(args, whole)));
      } else {
        throw Error(ErrorCode::kParseError,
                    "unknown radial weight family '" + std::string(name) + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      throw Error(ErrorCode::kParseError, e.what());
    }
  }
  return RadialWeightProfile::product(factors);
}

VerticalWeightProfile parse_vertical_weight(std::string_view text_in) {
  const std::string_view whole = text::trim(text_in);
  if (whole.empty()) throw Error(ErrorCode::kParseError, "empty weight spec");
  std::vector<VerticalWeightProfile> factors;
  for (std::string_view token : text::split(whole, '*')) {
    token = text::trim(token);
    const auto colon = token.find(':');
    const std::string_view name = token.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
    try {
      if (name == "vert-power") {
        factors.push_back(VerticalWeightProfile::power(parse_number(args, whole)));
      } else if (name == "vert-expdecay" && colon == std::string_view::npos) {
        factors.push_back(VerticalWeightProfile::exp_decay());
      } else if (name == "vert-sat") {
        factors.push_back(VerticalWeightProfile::saturating(parse_number(args, whole)));
      } else {
        throw Error(ErrorCode::kParseError,
                    "unknown vertical weight family '" + std::string(token) + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParseError) throw;
      throw Error(ErrorCode::kParseError, e.what());
    }
  }
  return VerticalWeightProfile::product(factors);
}

bool is_vertical_weight_spec(std::string_view s) {
  return text::trim(s).substr(0, 5) == "vert-";
}

}  // namespace berglab
