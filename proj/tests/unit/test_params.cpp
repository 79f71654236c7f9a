#include <doctest.h>

#include <cmath>
#include <vector>

#include "polykin/errors.hpp"
#include "polykin/params.hpp"
#include "support.hpp"

using namespace polykin;

TEST_SUITE("params") {

TEST_CASE("collision frequency") {
  CHECK(collision_frequency(0.0, 0.7) == 1.0);
  CHECK(collision_frequency(0.5, 1.0) == 1.0);
  CHECK(collision_frequency(-0.25, 0.5) == doctest::Approx(1.0 / 1.125).epsilon(1e-15));
  CHECK_THROWS_AS(collision_frequency(1.0, 0.5), OutOfRange);
  CHECK_THROWS_AS(collision_frequency(-0.5, 0.5), OutOfRange);
  CHECK_THROWS_AS(collision_frequency(0.2, 0.0), OutOfRange);
  CHECK_THROWS_AS(collision_frequency(0.2, 1.1), OutOfRange);
  for (double nu : {-0.49, -0.25, 0.0, 0.3, 0.99})
    for (double theta : {0.01, 0.5, 1.0}) CHECK(collision_frequency(nu, theta) > 0.0);
}

TEST_CASE("blend factors") {
  const auto at_zero = blend_factors(0.4, 0.3, 2.0, 0.0);
  CHECK(at_zero.lambda == 1.0);
  CHECK(at_zero.nu_bar == 0.4);

  CHECK(blend_factors(0.0, 0.3, 0.7, 0.25).lambda == 1.0);

  const auto b = blend_factors(0.5, 0.5, 0.1, 0.1);
  CHECK(b.lambda == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
  CHECK(b.nu_bar == doctest::Approx(0.25).epsilon(1e-14));

  SUBCASE("limits and monotonicity in dt") {
    const double nu = 0.6, theta = 0.4, kappa = 0.5;
    const double a = collision_frequency(nu, theta);
    double prev_lambda = 1.0, prev_nu_bar = nu;
    for (double dt : {1e-3, 1e-2, 0.1, 1.0, 10.0, 1e3}) {
      const auto f = blend_factors(nu, theta, kappa, dt);
      CHECK(f.lambda >= prev_lambda);
      CHECK(f.nu_bar <= prev_nu_bar);
      prev_lambda = f.lambda;
      prev_nu_bar = f.nu_bar;
    }
    const auto big = blend_factors(nu, theta, kappa, 1e12);
    CHECK(big.lambda == doctest::Approx(a).epsilon(1e-10));
    CHECK(big.nu_bar == doctest::Approx(0.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(blend_factors(0.0, 1.0, 0.0, 0.1), OutOfRange);
  CHECK_THROWS_AS(blend_factors(0.0, 1.0, 1.0, -0.1), OutOfRange);
}

TEST_CASE("discrete normalizer") {
  SUBCASE("single node at zero") {
    const std::vector<double> nodes{0.0};
    CHECK(normalizer_discrete(2.0, nodes, 1.0) == 1.0);
    CHECK(normalizer_discrete(0.7, nodes, 1.0) == 1.0);
  }

  SUBCASE("closed-form geometric sum for delta = 2") {
    // sum_{k<n} exp(-k h) h = h (1 - e^{-n h}) / (1 - e^{-h})
    for (std::size_t n : {4u, 16u, 256u}) {
      const double i_max = 40.0, h = i_max / static_cast<double>(n);
      const auto grid = build_grid({2, 2, 1.0, n, i_max, 2.0});
      const double expected = (1.0 - std::exp(-h)) / (h * (1.0 - std::exp(-i_max)));
      CHECK(normalizer_discrete(2.0, *grid) == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  SUBCASE("fine grid on [0, 40] for delta = 2") {
    const std::size_t n = 40'000'000;
    const double h = 40.0 / static_cast<double>(n);
    std::vector<double> nodes(n);
    for (std::size_t k = 0; k < n; ++k) nodes[k] = static_cast<double>(k) * h;
    CHECK(std::abs(normalizer_discrete(2.0, nodes, h) - 1.0) < 1e-6);
  }

  SUBCASE("delta = 1 approaches Gamma(3/2) at first order") {
    const double gamma = std::tgamma(1.5);
    double prev_err = 0.0;
    for (std::size_t n : {100'000u, 200'000u, 400'000u, 4'000'000u}) {
      const auto grid = build_grid({2, 2, 1.0, n, 40.0, 1.0});
      const double err = std::abs(1.0 / normalizer_discrete(1.0, *grid) - gamma);
      if (prev_err > 0.0 && n < 1'000'000u) CHECK(prev_err / err == doctest::Approx(2.0).epsilon(0.05));
      prev_err = err;
    }
    CHECK(prev_err < 1e-5);
  }

  SUBCASE("continuous form") {
    CHECK(normalizer_continuous(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(1.0 / normalizer_continuous(1.0) == doctest::Approx(0.886226925452758).epsilon(1e-14));
  }

  SUBCASE("degenerate inputs") {
    CHECK_THROWS_AS(normalizer_discrete(2.0, std::vector<double>{}, 1.0), DegenerateGrid);
    CHECK_THROWS_AS(normalizer_discrete(2.0, std::vector<double>{1000.0}, 1.0), DegenerateGrid);
    CHECK_THROWS_AS(normalizer_discrete(2.0, std::vector<double>{0.0}, 0.0), DegenerateGrid);
  }
}

TEST_CASE("scheme parameter validation") {
  SchemeParams p;
  CHECK(p.validate().empty());
  p.delta = 3.0;
  p.q = 9.0;
  CHECK(p.validate().size() == 1);
  p.q = 8.0;
  CHECK_THROWS_AS(p.validate(), OutOfRange);
  p = {};
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), OutOfRange);
  p = {};
  p.theta = 0.0;
  CHECK_THROWS_AS(p.validate(), OutOfRange);
}

TEST_CASE("derived constants") {
  const auto grid = testing::small_grid();
  SchemeParams p;
  p.nu = 0.5;
  p.theta = 0.5;
  p.kappa = 0.1;
  const auto c = DerivedConstants::compute(p, *grid, 0.1);
  CHECK(c.a_nutheta == doctest::Approx(4.0 / 3.0));
  CHECK(c.lambda == doctest::Approx(7.0 / 6.0));
  CHECK(c.nu_bar == doctest::Approx(0.25));
  CHECK(c.lambda_delta == normalizer_discrete(2.0, *grid));
}

}
