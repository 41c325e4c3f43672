#include <doctest.h>

#include <cmath>

#include "berglab/ball_kernel.hpp"
#include "berglab/error.hpp"
#include "berglab/halfspace_kernel.hpp"
#include "berglab/oracles.hpp"
#include "oracle_support.hpp"

using namespace berglab;
using doctest::Approx;

TEST_CASE("harmonic ball kernel at small alpha") {
  const auto w = RadialWeightProfile::power(1.0);
  CHECK(harmonic_ball_diag(w, 0, 3, 0).value == Approx(3 / (4 * M_PI)).epsilon(1e-13));
  CHECK(harmonic_ball_diag(w, 1, 3, 0).value == Approx(15 / (8 * M_PI)).epsilon(1e-13));
  CHECK(harmonic_ball_diag(w, 2, 4, 0.25).value ==
        Approx(oracle_harm_diag({OracleGeometry::kRealBall, KernelKind::kHarmonic, 2, 4, 0.25})).epsilon(1e-8));
}

TEST_CASE("harmonic ball kernel against Beta-moment series") {
  const auto w = RadialWeightProfile::polynomial({1.0, 0.0, -1.0});
  for (double alpha : {0.0, 3.0, 25.0}) {
    for (int n : {2, 3, 5}) {
      for (double t : {0.0, 0.3, 0.7}) {
        const double want =
            ref::harmonic_series([alpha](int k) { return ref::power_moment(k, alpha, 2); }, n, t);
        const auto got = harmonic_ball_diag(w, alpha, n, t);
        CAPTURE(alpha);
        CAPTURE(n);
        CAPTURE(t);
        CHECK(got.value == Approx(want).epsilon(1e-10));
        CHECK(got.tail_bound <= 1e-12 * got.value);
        CHECK(got.log_value == Approx(std::log(got.value)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("gaussian weight reproduces the confluent closed form") {
  const auto w = RadialWeightProfile::exponential(1.0);
  for (double t : {0.0, 2.0, 9.0}) {
    const double fock = oracle_harm_diag({OracleGeometry::kFock, KernelKind::kHarmonic, 3, 3, t});
    CHECK(harmonic_ball_diag(w, 3, 3, t).value == Approx(fock).epsilon(1e-10));
  }
}

TEST_CASE("holomorphic ball kernel") {
  const auto w = RadialWeightProfile::power(1.0);
  CHECK(holomorphic_ball_diag(w, 1, 1, 0).value == Approx(2 / M_PI).epsilon(1e-13));
  CHECK(holomorphic_ball_diag(w, 0, 1, 0).value == Approx(1 / M_PI).epsilon(1e-13));
  CHECK(holomorphic_ball_diag(w, 0, 2, 0.5).value == Approx(16 / (M_PI * M_PI)).epsilon(1e-11));
  for (double alpha : {0.5, 6.0}) {
    for (int m : {1, 3}) {
      const double want =
          oracle_holo_diag({OracleGeometry::kComplexBall, KernelKind::kHolomorphic, alpha, m, 0.6});
      CHECK(holomorphic_ball_diag(w, alpha, m, 0.6).value == Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("kernel grows with |x| and has a consistent t-derivative") {
  const auto w = RadialWeightProfile::power(2.0);
  double prev = 0;
  for (double t = 0; t < 0.95; t += 0.05) {
    const double v = harmonic_ball_diag(w, 4, 3, t).value;
    CHECK(v > prev);
    prev = v;
  }
  // exact derivative from the ₂F₁ route for φ = 1 − t: d/dt by the series of the reference oracle
  const auto u = RadialWeightProfile::power(1.0);
  const double h = 1e-5, t = 0.4;
  const double fd = double((ref::real_ball(3, 3, t + h) - ref::real_ball(3, 3, t - h)) / (2 * h));
  CHECK(harmonic_ball_diag_dt(u, 3, 3, t) == Approx(fd).epsilon(1e-6));
}

TEST_CASE("ball kernel errors") {
  const auto w = RadialWeightProfile::power(1.0);
  CHECK_THROWS_AS(harmonic_ball_diag(w, 1, 3, 1.0), Error);
  CHECK_THROWS_AS(harmonic_ball_diag(w, -1, 3, 0.5), Error);
  CHECK_THROWS_AS(harmonic_ball_diag(w, 1, 1, 0.5), Error);
  SeriesOptions tight;
  tight.k_cap = 50;
  try {
    harmonic_ball_diag(w, 1, 3, 0.999, tight);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoDecay);
  }
}

TEST_CASE("shared moment cache gives identical results") {
  MomentCache cache;
  SeriesOptions with_cache;
  with_cache.cache = &cache;
  const auto w = RadialWeightProfile::power(1.0);
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(harmonic_ball_diag(w, 20, 3, t, with_cache).value == Approx(harmonic_ball_diag(w, 20, 3, t).value).epsilon(1e-13));
  }
  CHECK(cache.size() == 1);
}

TEST_CASE("half-space kernel") {
  const auto y1 = VerticalWeightProfile::power(1.0);
  CHECK(harmonic_halfspace_diag(y1, 0, 3, 1).value == Approx(1 / (4 * M_PI)).epsilon(1e-9));
  CHECK(harmonic_halfspace_diag(y1, 1, 3, 1).value == Approx(3 / (4 * M_PI)).epsilon(1e-9));
  CHECK(harmonic_halfspace_diag(VerticalWeightProfile::exp_decay(), 1, 3, 1).value ==
        Approx(3 / (8 * M_PI)).epsilon(1e-9));
  for (int n : {2, 4}) {
    for (double alpha : {0.5, 20.0}) {
      CHECK(harmonic_halfspace_diag(y1, alpha, n, 0.7).value ==
            Approx(double(ref::halfspace_power(alpha, n, 0.7))).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(harmonic_halfspace_diag(y1, 1, 3, 0.0), Error);
}

TEST_CASE("Siegel kernel") {
  const auto one = VerticalWeightProfile::power(0.0);
  const auto y1 = VerticalWeightProfile::power(1.0);
  CHECK(siegel_holo_diag(one, 0, {1.0, 1}).value == Approx(1 / (4 * M_PI)).epsilon(1e-9));
  CHECK(siegel_holo_diag(y1, 1, {1.0, 1}).value == Approx(1 / (2 * M_PI)).epsilon(1e-9));
  CHECK(siegel_holo_diag(one, 0, {2.0, 2}).value == Approx(1 / (16 * M_PI * M_PI)).epsilon(1e-9));
  // half-plane closed form (α+1)/(4π) y^{−α−2}
  CHECK(siegel_holo_diag(y1, 5, {0.5, 1}).value == Approx(6 / (4 * M_PI) * std::pow(0.5, -7.0)).epsilon(1e-9));
}

TEST_CASE("Siegel Hessian determinant") {
  CHECK(siegel_hessian_det(VerticalWeightProfile::exp_decay(), 3, 1.0) == Approx(0.0));
  CHECK(siegel_hessian_det(VerticalWeightProfile::power(1.0), 1, 0.5) == Approx(1.0).epsilon(1e-14));
  CHECK(siegel_hessian_det(VerticalWeightProfile::power(1.0), 2, 1.0) == Approx(0.25).epsilon(1e-14));
  const LogWeightProvider logy = [](double t) { return std::array<double, 3>{-std::log(t), -1 / t, 1 / (t * t)}; };
  CHECK(siegel_hessian_det(logy, 2, 1.0) == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("half-space to Siegel bridge") {
  CHECK(halfspace_siegel_bridge_check(VerticalWeightProfile::power(1.0), 0, 3, 1).relative_gap <= 1e-9);
  CHECK(halfspace_siegel_bridge_check(VerticalWeightProfile::exp_decay(), 1, 3, 1).relative_gap <= 1e-8);
  CHECK(halfspace_siegel_bridge_check(VerticalWeightProfile::power(1.0), 2, 4, 0.5).relative_gap <= 1e-8);
}
