#include <doctest.h>

#include <cmath>
#include <vector>

#include "berglab/error.hpp"
#include "berglab/weights.hpp"

using namespace berglab;
using doctest::Approx;

namespace {

std::vector<double> tenths() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

void check_vec(const std::vector<double>& got, const std::vector<double>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Approx(want[i]).epsilon(1e-14));
}

}  // namespace

TEST_CASE("derivatives of the basic families") {
  check_vec(eval_with_derivatives(RadialWeightProfile::power(1.0), 0.5, 1), {0.5, -1.0});
  check_vec(eval_with_derivatives(RadialWeightProfile::exponential(1.0), 0.0, 2), {1.0, -1.0, 1.0});
  check_vec(eval_with_derivatives(RadialWeightProfile::polynomial({1.0, 0.0, -1.0}), 0.5, 2),
            {0.75, -1.0, -2.0});
}

TEST_CASE("products differentiate by Leibniz") {
  // (1−t)² e^{−t}: value, first and second derivative by hand at t = 0.3.
  const auto w = RadialWeightProfile::power(2.0) * RadialWeightProfile::exponential(1.0);
  const double t = 0.3, e = std::exp(-t), u = 1.0 - t;
  check_vec(eval_with_derivatives(w, t, 2),
            {u * u * e, (-2.0 * u - u * u) * e, (2.0 + 4.0 * u + u * u) * e});
}

TEST_CASE("derivatives agree with central differences") {
  const RadialWeightProfile profiles[] = {
      RadialWeightProfile::power(2.5), RadialWeightProfile::polynomial({2.0, -1.0, -0.5}),
      RadialWeightProfile::exponential(3.0),
      RadialWeightProfile::power(1.0) * RadialWeightProfile::exponential(0.5)};
  const double h = 1e-6;
  for (const auto& w : profiles) {
    for (double t : {0.1, 0.4, 0.7}) {
      const auto d = eval_with_derivatives(w, t, 4);
      for (int k = 1; k <= 4; ++k) {
        const double lo = eval_with_derivatives(w, t - h, k - 1)[k - 1];
        const double hi = eval_with_derivatives(w, t + h, k - 1)[k - 1];
        CHECK(d[k] == Approx((hi - lo) / (2 * h)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("vertical derivatives agree with central differences") {
  const VerticalWeightProfile profiles[] = {
      VerticalWeightProfile::power(1.5), VerticalWeightProfile::saturating(2.0),
      VerticalWeightProfile::power(1.0) * VerticalWeightProfile::exp_decay()};
  const double h = 1e-6;
  for (const auto& w : profiles) {
    for (double y : {0.3, 1.0, 2.5}) {
      const auto d = eval_with_derivatives(w, y, 3);
      for (int k = 1; k <= 3; ++k) {
        const double lo = eval_with_derivatives(w, y - h, k - 1)[k - 1];
        const double hi = eval_with_derivatives(w, y + h, k - 1)[k - 1];
        CHECK(d[k] == Approx((hi - lo) / (2 * h)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("support and order errors") {
  CHECK_THROWS_AS(eval_with_derivatives(RadialWeightProfile::power(1.0), 1.5, 1), Error);
  CHECK_THROWS_AS(eval_with_derivatives(RadialWeightProfile::power(1.0), 0.5, 5), Error);
  try {
    eval_with_derivatives(RadialWeightProfile::power(1.0), -0.1, 0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfSupport);
  }
  CHECK_NOTHROW(eval_with_derivatives(RadialWeightProfile::exponential(1.0), 50.0, 2));
}

TEST_CASE("defining functions") {
  CHECK(check_defining(RadialWeightProfile::power(1.0)).is_defining);
  CHECK_FALSE(check_defining(RadialWeightProfile::polynomial({1.0})).is_defining);
  const auto sq = check_defining(RadialWeightProfile::power(2.0));
  CHECK_FALSE(sq.is_defining);
  CHECK(sq.boundary_slope == Approx(0.0));
}

TEST_CASE("plurisubharmonicity of log 1/phi") {
  CHECK(check_radial_psh(RadialWeightProfile::power(1.0), tenths()));
  CHECK(check_radial_psh(RadialWeightProfile::exponential(1.0), tenths()));
  CHECK(check_radial_psh(RadialWeightProfile::polynomial({1.0, 0.0, -1.0}), tenths()));
  // φ = 1 + t has (tφ'/φ)' = 1/(1+t)² > 0.
  CHECK_FALSE(check_radial_psh(RadialWeightProfile::polynomial({1.0, 1.0}), tenths()));
  CHECK(check_radial_psh(RadialWeightProfile::power(1.0)));
}

TEST_CASE("vertical hypotheses") {
  const std::vector<double> grid = {0.5, 1.0, 2.0};
  CHECK(check_vertical_hypotheses(VerticalWeightProfile::power(1.0), grid));
  CHECK_FALSE(check_vertical_hypotheses(VerticalWeightProfile::exp_decay(), grid));
  CHECK(check_vertical_hypotheses(VerticalWeightProfile::saturating(1.0), grid));
  CHECK(vanishes_to_first_order_at_zero(VerticalWeightProfile::power(1.0)));
  CHECK_FALSE(vanishes_to_first_order_at_zero(VerticalWeightProfile::power(2.0)));
}

TEST_CASE("weight grammar round trip") {
  for (const char* spec : {"power:1", "poly:1,0,-1", "exp:2.5", "power:2*exp:1"}) {
    CAPTURE(spec);
    const auto w = parse_radial_weight(spec);
    CHECK(parse_radial_weight(w.describe()).describe() == w.describe());
    CHECK_FALSE(is_vertical_weight_spec(spec));
  }
  for (const char* spec : {"vert-power:1", "vert-sat:1", "vert-expdecay", "vert-power:1*vert-expdecay"}) {
    CAPTURE(spec);
    const auto w = parse_vertical_weight(spec);
    CHECK(parse_vertical_weight(w.describe()).describe() == w.describe());
    CHECK(is_vertical_weight_spec(spec));
  }
  CHECK(parse_radial_weight("exp:1").unbounded_support());
  CHECK_FALSE(parse_radial_weight("power:1*exp:1").unbounded_support());
}

TEST_CASE("malformed weight specs") {
  for (const char* bad : {"", "power", "power:x", "cosh:1", "poly:", "power:1*"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_radial_weight(bad), Error);
  }
  CHECK_THROWS_AS(parse_vertical_weight("vert-sat"), Error);
  CHECK_THROWS_AS(parse_vertical_weight("power:1"), Error);
}

TEST_CASE("gamma form detection") {
  double q = 0, lambda = 0;
  CHECK(parse_vertical_weight("vert-power:2*vert-expdecay").gamma_form(q, lambda));
  CHECK(q == 2.0);
  CHECK(lambda == 1.0);
  CHECK_FALSE(VerticalWeightProfile::saturating(1.0).gamma_form(q, lambda));
  CHECK_FALSE(VerticalWeightProfile::exp_decay().declared_admissible());
  CHECK(VerticalWeightProfile::power(1.0).declared_admissible());
}
