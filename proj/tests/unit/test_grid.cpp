#include <doctest.h>

#include <cmath>

#include "polykin/errors.hpp"
#include "polykin/grid.hpp"
#include "support.hpp"

using namespace polykin;

TEST_SUITE("grid") {

TEST_CASE("layout") {
  const auto g = build_grid({4, 3, 1.0, 4, 2.0, 2.0});
  CHECK(g->dx() == 0.25);
  for (std::size_t i = 0; i < 4; ++i) CHECK(g->x(i) == 0.25 * static_cast<double>(i));
  CHECK(g->dv() == 1.0);
  CHECK(g->axis_node(0) == -1.0);
  CHECK(g->axis_node(1) == 0.0);
  CHECK(g->axis_node(2) == 1.0);
  CHECK(g->di() == 0.5);
  for (std::size_t k = 0; k < 4; ++k) CHECK(g->energy(k) == 0.5 * static_cast<double>(k));
  CHECK(g->velocity_count() == 27);
  CHECK(g->size() == 4 * 27 * 4);
  CHECK(g->node_weight() == doctest::Approx(0.25 * 1.0 * 0.5));
}

TEST_CASE("velocity nodes are symmetric") {
  for (std::size_t n_v : {4u, 5u, 17u}) {
    const auto g = build_grid({2, n_v, 3.0, 1, 1.0, 2.0});
    for (std::size_t a = 0; a < n_v; ++a) CHECK(g->axis_node(a) == -g->axis_node(n_v - 1 - a));
    CHECK(g->axis_node(0) == -3.0);
    CHECK(g->axis_node(n_v - 1) == 3.0);
  }
  const auto odd = build_grid({2, 9, 8.0, 1, 1.0, 2.0});
  CHECK(odd->axis_node(4) == 0.0);
}

TEST_CASE("flat velocity index") {
  const auto g = build_grid({2, 3, 1.0, 2, 1.0, 2.0});
  const std::size_t j = g->velocity_index(2, 0, 1);
  CHECK(g->velocity(j) == Vec3(1.0, -1.0, 0.0));
  CHECK(g->axis1_of(j) == 2);
  CHECK(g->speed_squared(j) == 2.0);
  CHECK(g->index(1, j, 1) == (1 * 27 + j) * 2 + 1);
}

TEST_CASE("energy map follows delta") {
  const auto g = build_grid({2, 2, 1.0, 5, 5.0, 1.0});
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(g->energy_map(k) == doctest::Approx(std::pow(g->energy(k), 2.0)));
  const auto norm = g->norm_weights(8.0);
  const std::size_t j = 0, k = 3;
  CHECK((*norm)[j * 5 + k] ==
        doctest::Approx(std::pow(1.0 + g->speed_squared(j) + g->energy_map(k), 4.0)));
  CHECK(g->norm_weights(8.0) == norm);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(build_grid({1, 3, 1.0, 1, 1.0, 2.0}), InvalidConfig);
  CHECK_THROWS_AS(build_grid({4, 1, 1.0, 1, 1.0, 2.0}), InvalidConfig);
  CHECK_THROWS_AS(build_grid({4, 3, 1.0, 0, 1.0, 2.0}), InvalidConfig);
  CHECK_THROWS_AS(build_grid({4, 3, 0.0, 1, 1.0, 2.0}), InvalidConfig);
  CHECK_THROWS_AS(build_grid({4, 3, 1.0, 1, -1.0, 2.0}), InvalidConfig);
  CHECK_THROWS_AS(build_grid({4, 3, 1.0, 1, 1.0, 0.0}), InvalidConfig);
}

TEST_CASE("foot of the characteristic") {
  const auto g = build_grid({4, 3, 1.0, 1, 1.0, 2.0});

  SUBCASE("zero velocity or zero step lands on the node") {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto f = foot(i, 0.0, 0.3, *g);
      CHECK(f.s == i);
      CHECK(f.a == 1.0);
      const auto z = foot(i, -2.5, 0.0, *g);
      CHECK(z.s == i);
      CHECK(z.a == 1.0);
    }
  }

  SUBCASE("whole-cell shift") {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto f = foot(i, 1.0, 0.25, *g);
      CHECK(f.s == (i + 3) % 4);
      CHECK(f.a == 1.0);
      const auto b = foot(i, -1.0, 0.5, *g);
      CHECK(b.s == (i + 2) % 4);
      CHECK(b.a == 1.0);
    }
  }

  SUBCASE("wrap example") {
    const auto f = foot(0, 1.0, 0.1, *g);
    CHECK(f.s == 3);
    CHECK(f.a == doctest::Approx(0.4).epsilon(1e-14));
  }

  SUBCASE("index-shift covariance") {
    for (double v : {-3.7, -0.2, 0.35, 1.0, 5.5}) {
      const auto f0 = foot(0, v, 0.07, *g);
      for (std::size_t i = 1; i < 4; ++i) {
        const auto fi = foot(i, v, 0.07, *g);
        CHECK(fi.s == (f0.s + i) % 4);
        CHECK(fi.a == f0.a);
      }
      CHECK(f0.a > 0.0);
      CHECK(f0.a <= 1.0);
    }
  }

  SUBCASE("feet within rounding of a node snap to it") {
    const auto g10 = build_grid({10, 3, 1.0, 1, 1.0, 2.0});
    const auto f = foot(0, 1.0, 0.3, *g10); // 0.3 * 10 is not exactly 3 in binary
    CHECK(f.a == 1.0);
    CHECK(f.s == 7);
  }
}

}
