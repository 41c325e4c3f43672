#include "berglab/oracles.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "berglab/error.hpp"
#include "berglab/series.hpp"
#include "berglab/special.hpp"
#include "berglab/text.hpp"

namespace berglab {

namespace {

using special::kPi;

constexpr int kMaxTerms = 1'000'000;

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Σ_k Π(upper)_k / ((c)_k k!) x^k, summed as log-magnitudes with signs.
TailCertifiedSum sum_hypergeometric(std::vector<double> upper, double c, double x, double tol,
                                    const char* name) {
  // n = 2 convention: a zero upper parameter paired with c = 0 contributes the
  // constant ratio 2 from k = 1 on.
  bool doubled = false;
  if (c == 0.0) {
    for (auto it = upper.begin(); it != upper.end(); ++it) {
      if (*it == 0.0) {
        upper.erase(it);
        doubled = true;
        break;
      }
    }
  }

  if (upper.size() == 2 && std::abs(x) >= 1.0) {
    bool terminates = false;
    for (double u : upper) terminates = terminates || nonpositive_integer(u);
    if (!terminates) {
      throw Error(ErrorCode::kNoConvergence,
                  std::string(name) + " series needs |x| < 1, got x = " + text::shortest(x));
    }
  }

  if (upper.size() == 2 && x != 0.0) {
    // Length estimate from the ratio test: the ratio falls below q once
    // k ≳ |x|(a+b−c−1)/(q−|x|), and the geometric tail then needs log(tol)/log(q).
    const double ax = std::abs(x);
    const double q = 0.5 * (1.0 + ax);
    const double excess = std::abs(upper[0]) + std::abs(upper[1]) + std::abs(c) + 1.0;
    const double estimate = ax * excess / (q - ax) + std::log(tol) / std::log(q);
    if (estimate > kMaxTerms) {
      throw Error(ErrorCode::kNoConvergence, std::string(name) +
                                                 " series would need more than 1e6 terms");
    }
  }

  TailCertifiedSum sum(tol);
  double log_term = 0.0;
  int sign = 1;
  sum.add_log(0.0, 1);
  if (x == 0.0) return sum;
  const double log_x = std::log(std::abs(x));
  for (int k = 0; k < kMaxTerms; ++k) {
    // term_{k+1} = term_k · Π(u+k) / ((c+k)(k+1)) · x
    for (double u : upper) {
      if (u + k == 0.0) return sum;  // terminating series: exact
    }
    double num = 0.0;
    for (double u : upper) {
      num += std::log(std::abs(u + k));
      if (u + k < 0.0) sign = -sign;
    }
    double den = std::log(k + 1.0);
    if (!doubled) {
      if (c + k == 0.0) {
        throw Error(ErrorCode::kPoleInC,
                    std::string(name) + ": c = " + text::shortest(c) + " is a nonpositive integer");
      }
      den += std::log(std::abs(c + k));
      if (c + k < 0.0) sign = -sign;
    } else if (k == 0) {
      num += std::log(2.0);
    }
    if (x < 0.0) sign = -sign;
    log_term += num - den + log_x;
    if (sum.add_log(log_term, sign)) return sum;
  }
  throw Error(ErrorCode::kNoConvergence, std::string(name) + " series did not converge");
}

double log_positive(const TailCertifiedSum& sum, const char* name) {
  if (sum.sign() < 0 || sum.log_abs_sum() == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " value is not positive");
  }
  return sum.log_abs_sum();
}

}  // namespace

double hyp2f1(double a, double b, double c, double x, double tol) {
  return sum_hypergeometric({a, b}, c, x, tol, "2F1").value();
}

double log_hyp2f1(double a, double b, double c, double x, double tol) {
  return log_positive(sum_hypergeometric({a, b}, c, x, tol, "2F1"), "2F1");
}

double hyp1f1(double a, double c, double x, double tol) {
  return sum_hypergeometric({a}, c, x, tol, "1F1").value();
}

double log_hyp1f1(double a, double c, double x, double tol) {
  return log_positive(sum_hypergeometric({a}, c, x, tol, "1F1"), "1F1");
}

std::string_view to_string(OracleGeometry geometry) noexcept {
  switch (geometry) {
    case OracleGeometry::kDisc: return "disc";
    case OracleGeometry::kHalfPlane: return "halfplane";
    case OracleGeometry::kComplexBall: return "complex_ball";
    case OracleGeometry::kRealBall: return "real_ball";
    case OracleGeometry::kHalfSpace: return "halfspace";
    case OracleGeometry::kFock: return "fock";
  }
  return "?";
}

namespace {

[[noreturn]] void unsupported(const OracleSelector& sel) {
  throw Error(ErrorCode::kUnsupportedSelector,
              std::string("no ") +
                  (sel.kind == KernelKind::kHolomorphic ? "holomorphic" : "harmonic") +
                  " closed form for geometry " + std::string(to_string(sel.geometry)));
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

double log_oracle_holo_diag(const OracleSelector& sel) {
  if (sel.kind != KernelKind::kHolomorphic) unsupported(sel);
  const double a = sel.alpha;
  require(a > -1.0, "α must be > −1");
  switch (sel.geometry) {
    case OracleGeometry::kDisc:
      require(sel.coordinate >= 0.0 && sel.coordinate < 1.0, "need 0 ≤ t < 1");
      return std::log(a + 1.0) - std::log(kPi) - (a + 2.0) * std::log1p(-sel.coordinate);
    case OracleGeometry::kHalfPlane:
      require(sel.coordinate > 0.0, "need y > 0");
      return std::log(a + 1.0) - std::log(4.0 * kPi) - (a + 2.0) * std::log(sel.coordinate);
    case OracleGeometry::kComplexBall: {
      require(sel.coordinate >= 0.0 && sel.coordinate < 1.0, "need 0 ≤ t < 1");
      require(sel.dimension >= 1, "need m ≥ 1");
      const double m = sel.dimension;
      return special::log_gamma_ratio(a + m + 1.0, a + 1.0) - m * std::log(kPi) -
             (a + m + 1.0) * std::log1p(-sel.coordinate);
    }
    default:
      unsupported(sel);
  }
}

double oracle_holo_diag(const OracleSelector& sel) { return std::exp(log_oracle_holo_diag(sel)); }

double unweighted_ball_diag(int n, double t) {
  require(n >= 2, "need n ≥ 2");
  require(t >= 0.0 && t < 1.0, "need 0 ≤ t < 1");
  const double poly = (n - 4.0) * t * t * t * t + (8.0 * t - 2.0 * n - 4.0) * t * t + n;
  return special::tgamma(0.5 * n) / (2.0 * std::pow(kPi, 0.5 * n)) * poly /
         std::pow(1.0 - t, n + 2.0);
}

double unweighted_halfspace_diag(int n, double y) {
  require(n >= 2, "need n ≥ 2");
  require(y > 0.0, "need y > 0");
  return 2.0 * special::tgamma(0.5 * n) * (n - 1.0) / (std::pow(kPi, 0.5 * n) * std::pow(2.0 * y, n));
}

double log_oracle_harm_diag(const OracleSelector& sel) {
  if (sel.kind != KernelKind::kHarmonic) unsupported(sel);
  const double a = sel.alpha;
  const int n = sel.dimension;
  require(n >= 2, "need n ≥ 2");
  const double half = 0.5 * n;
  switch (sel.geometry) {
    case OracleGeometry::kRealBall: {
      require(a > -1.0, "α must be > −1");
      require(sel.coordinate >= 0.0 && sel.coordinate < 1.0, "need 0 ≤ t < 1");
      const double value = special::log_gamma_ratio(a + half + 1.0, a + 1.0) -
                           half * std::log(kPi) +
                           log_hyp2f1(a + half + 1.0, n - 2.0, half - 1.0, sel.coordinate);
      if (a == 0.0) {
        const double rational = std::log(unweighted_ball_diag(n, sel.coordinate));
        if (std::abs(std::expm1(value - rational)) > 1e-10) {
          throw Error(ErrorCode::kValidationError,
                      "hypergeometric and rational unweighted ball kernels disagree");
        }
      }
      return value;
    }
    case OracleGeometry::kHalfSpace: {
      require(a > -1.0, "α must be > −1");
      require(sel.coordinate > 0.0, "need y > 0");
      return special::log_gamma_ratio(n + a, a + 1.0) + (3.0 - 2.0 * n) * std::log(2.0) -
             0.5 * (n - 1.0) * std::log(kPi) - special::lgamma(0.5 * (n - 1.0)) -
             (n + a) * std::log(sel.coordinate);
    }
    case OracleGeometry::kFock:
      require(a > 0.0, "the Fock weight needs α > 0");
      require(sel.coordinate >= 0.0, "need t ≥ 0");
      return half * (std::log(a) - std::log(kPi)) +
             log_hyp1f1(n - 2.0, half - 1.0, a * sel.coordinate);
    default:
      unsupported(sel);
  }
}

double oracle_harm_diag(const OracleSelector& sel) { return std::exp(log_oracle_harm_diag(sel)); }

}  // namespace berglab
