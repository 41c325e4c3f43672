#include <doctest.h>

#include <cmath>

#include "berglab/error.hpp"
#include "berglab/oracles.hpp"
#include "oracle_support.hpp"

using namespace berglab;
using doctest::Approx;

TEST_CASE("hypergeometric series") {
  CHECK(hyp2f1(1.3, 2.1, 0.7, 0.0) == 1.0);
  CHECK(hyp2f1(1, 1, 1, 0.5) == Approx(2.0).epsilon(1e-14));
  CHECK(hyp2f1(1, 2, 1, 0.5) == Approx(4.0).epsilon(1e-14));
  CHECK(hyp1f1(2.5, 1.5, 0.0) == 1.0);
  CHECK(hyp1f1(1, 1, 1) == Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(hyp1f1(2, 1, 1) == Approx(2 * std::exp(1.0)).epsilon(1e-15));
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(hyp2f1(12.5, 1, 0.5, x) == Approx(double(ref::hyp2f1(12.5, 1, 0.5, x))).epsilon(1e-13));
    CHECK(log_hyp2f1(300.5, 2, 1, x) == Approx(std::log(double(ref::hyp2f1(300.5, 2, 1, x)))).epsilon(1e-13));
  }
  CHECK(log_hyp1f1(2, 1, 800.0) == Approx(std::log(801.0) + 800.0).epsilon(1e-14));
}

TEST_CASE("hypergeometric failure modes") {
  CHECK_THROWS_AS(hyp2f1(1, 1, 1, 1.0), Error);
  // terminating series are fine anywhere
  CHECK(hyp2f1(-2, 1, 1, 3.0) == Approx(1 - 6.0 + 9.0));
  try {
    hyp2f1(1, 1, -2, 0.5);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPoleInC);
  }
}

TEST_CASE("holomorphic closed forms") {
  using G = OracleGeometry;
  CHECK(oracle_holo_diag({G::kDisc, KernelKind::kHolomorphic, 1, 1, 0}) == Approx(2 / M_PI).epsilon(1e-15));
  CHECK(oracle_holo_diag({G::kHalfPlane, KernelKind::kHolomorphic, 0, 1, 1}) ==
        Approx(1 / (4 * M_PI)).epsilon(1e-15));
  CHECK(oracle_holo_diag({G::kComplexBall, KernelKind::kHolomorphic, 0, 2, 0.5}) ==
        Approx(16 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("harmonic closed forms") {
  using G = OracleGeometry;
  CHECK(oracle_harm_diag({G::kRealBall, KernelKind::kHarmonic, 0, 3, 0}) == Approx(3 / (4 * M_PI)).epsilon(1e-14));
  CHECK(oracle_harm_diag({G::kHalfSpace, KernelKind::kHarmonic, 1, 3, 1}) == Approx(3 / (4 * M_PI)).epsilon(1e-14));
  CHECK(oracle_harm_diag({G::kFock, KernelKind::kHarmonic, 2, 4, 0}) == Approx(4 / (M_PI * M_PI)).epsilon(1e-14));
  for (int n : {3, 4, 6}) {
    for (double t : {0.0, 0.3, 0.8}) {
      CHECK(oracle_harm_diag({G::kRealBall, KernelKind::kHarmonic, 7, n, t}) ==
            Approx(double(ref::real_ball(7, n, t))).epsilon(1e-13));
      CHECK(oracle_harm_diag({G::kRealBall, KernelKind::kHarmonic, 0, n, t}) ==
            Approx(unweighted_ball_diag(n, t)).epsilon(1e-12));
    }
  }
  CHECK(unweighted_halfspace_diag(3, 1.0) == Approx(double(ref::halfspace_power(0, 3, 1))).epsilon(1e-14));
}

TEST_CASE("oracle selectors are validated") {
  using G = OracleGeometry;
  CHECK_THROWS_AS(oracle_harm_diag({G::kDisc, KernelKind::kHarmonic, 1, 1, 0}), Error);
  CHECK_THROWS_AS(oracle_harm_diag({G::kFock, KernelKind::kHarmonic, 0, 3, 0}), Error);
  CHECK_THROWS_AS(oracle_holo_diag({G::kDisc, KernelKind::kHolomorphic, 1, 1, 1.0}), Error);
  CHECK(to_string(G::kHalfSpace) == "halfspace");
}
