#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numbers>

#include "sticks/action_angle.hpp"
#include "sticks/errors.hpp"
#include "sticks/moment_polytope.hpp"
#include "sticks/sampler.hpp"
#include "test_support.hpp"

using namespace sticks;
using std::numbers::pi;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> along(std::span<const double> p, std::span<const double> v, double t) {
  std::vector<double> out(p.begin(), p.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += t * v[i];
  return out;
}

// Largest t >= 0 with p + t v inside, by bisection on containment.
double bisect_boundary(const MomentPolytope& poly, std::span<const double> p, std::span<const double> v) {
  double lo = 0.0;
  double hi = 1.0;
  while (poly.contains(along(p, v, hi))) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = (lo + hi) / 2.0;
    (poly.contains(along(p, v, mid)) ? lo : hi) = mid;
  }
  return lo;
}

double two_sample_ks(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

std::vector<double> first_diagonals(std::uint64_t seed, std::size_t count) {
  SamplerConfig config;
  config.seed = seed;
  config.thin = 5;
  PolygonChain chain(4, inf, config);
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) {
    chain.next();
    out.push_back(chain.state().coords.diagonals[0]);
  }
  return out;
}

}  // namespace

TEST_CASE("contains: examples") {
  CHECK(MomentPolytope(10, 1.5).contains(std::vector<double>(7, 1.0)));
  CHECK_FALSE(MomentPolytope(6).contains(std::vector<double>{2.1, 1, 1}));
  CHECK_FALSE(MomentPolytope(6, 1.01).contains(std::vector<double>{1.02, 1, 1}));
  CHECK(MomentPolytope(6, 1.01).contains(std::vector<double>{1.01, 1, 1}));
  CHECK_THROWS_AS(MomentPolytope(6).contains(std::vector<double>{1, 1}), DimensionMismatch);
}

TEST_CASE("contains: triangle inequalities of the fan") {
  const MomentPolytope poly(6);
  CHECK(poly.contains(std::vector<double>{1.0, 1.5, 1.0}));
  CHECK_FALSE(poly.contains(std::vector<double>{0.2, 1.5, 1.0}));  // |d1 - d2| <= 1 fails
  CHECK_FALSE(poly.contains(std::vector<double>{1.0, 1.0, 2.5}));  // d3 <= 2 fails
  CHECK_FALSE(poly.contains(std::vector<double>{-0.1, 0.5, 1.0}));
}

TEST_CASE("chord_interval: examples") {
  const std::vector<double> p{1.0};
  const std::vector<double> v{1.0};
  const auto [a0, a1] = MomentPolytope(4).chord_interval(p, v);
  CHECK(a0 == doctest::Approx(-1.0));
  CHECK(a1 == doctest::Approx(1.0));
  const auto [b0, b1] = MomentPolytope(4, 1.5).chord_interval(p, v);
  CHECK(b0 == doctest::Approx(-1.0));
  CHECK(b1 == doctest::Approx(0.5));
  CHECK_THROWS_AS(MomentPolytope(4, 1.5).chord_interval(std::vector<double>{1.7}, v), ExteriorPoint);
}

TEST_CASE("chord_interval: bisection oracle") {
  Rng rng(17);
  for (double radius : {inf, 1.3}) {
    const MomentPolytope poly(6, radius);
    const std::vector<double> p{1, 1, 1};
    for (int k = 0; k < 50; ++k) {
      const auto v = random_direction(3, rng);
      const auto [t0, t1] = poly.chord_interval(p, v);
      const std::vector<double> minus_v{-v[0], -v[1], -v[2]};
      CHECK(std::abs(t1 - bisect_boundary(poly, p, v)) < 1e-9);
      CHECK(std::abs(-t0 - bisect_boundary(poly, p, minus_v)) < 1e-9);
    }
  }
}

TEST_CASE("property: chord endpoints are tight and the chord is feasible") {
  Rng rng(23);
  for (std::size_t n : {5u, 8u, 10u, 14u}) {
    for (double radius : {inf, 1.01, 2.0}) {
      const MomentPolytope poly(n, radius);
      const auto p = testing::random_interior_point(poly, rng).diagonals;
      for (int k = 0; k < 20; ++k) {
        const auto v = random_direction(poly.dimension(), rng);
        const auto [t0, t1] = poly.chord_interval(p, v);
        REQUIRE(t0 <= 0.0);
        REQUIRE(t1 >= 0.0);
        for (int s = 0; s < 100; ++s) REQUIRE(poly.contains(along(p, v, t0 + (t1 - t0) * s / 99.0)));
        CHECK_FALSE(poly.contains(along(p, v, t1 + 1e-6)));
        CHECK_FALSE(poly.contains(along(p, v, t0 - 1e-6)));
      }
    }
  }
}

TEST_CASE("hit_and_run_move: zero step") {
  const MomentPolytope poly(4);
  ChainState state = initial_state(poly, Rng(1));
  const ActionAngle before = state.coords;
  hit_and_run_move(poly, state, std::vector<double>{1.0}, 0.0);
  CHECK(state.coords.diagonals == before.diagonals);
  CHECK(state.coords.angles == before.angles);
  CHECK_THROWS_AS(hit_and_run_move(poly, state, std::vector<double>{1.0}, 1.5), ExteriorPoint);
}

TEST_CASE("hit_and_run_step: feasibility and fixed angles") {
  const MomentPolytope poly(10, 1.01);
  ChainState state = initial_state(poly, Rng(9));
  const auto angles = state.coords.angles;
  for (int k = 0; k < 100000; ++k) {
    hit_and_run_step(poly, state);
    REQUIRE(poly.contains(state.coords.diagonals));
  }
  CHECK(state.coords.angles == angles);
}

TEST_CASE("hit_and_run_step: deterministic for a seed") {
  const MomentPolytope poly(10, 1.01);
  ChainState a = initial_state(poly, Rng(5));
  ChainState b = initial_state(poly, Rng(5));
  for (int k = 0; k < 1000; ++k) {
    hit_and_run_step(poly, a);
    hit_and_run_step(poly, b);
    REQUIRE(a.coords.diagonals == b.coords.diagonals);
  }
}

TEST_CASE("random_direction is a unit vector") {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto v = random_direction(7, rng);
    double s = 0.0;
    for (double x : v) s += x * x;
    CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("tsmcmc: forced branches") {
  const MomentPolytope poly(8, 1.2);
  const SamplerConfig config;
  ChainState state = initial_state(poly, Rng(4));
  for (int k = 0; k < 50; ++k) tsmcmc_step(poly, state, config);

  const auto d = state.coords.diagonals;
  apply_branch(poly, state, config, Branch::Torus);
  CHECK(state.coords.diagonals == d);
  for (double t : state.coords.angles) {
    CHECK(t >= -pi);
    CHECK(t < pi);
  }

  const auto theta = state.coords.angles;
  apply_branch(poly, state, config, Branch::HitAndRun);
  CHECK(state.coords.angles == theta);
  CHECK(state.coords.diagonals != d);
}

TEST_CASE("tsmcmc: coin is fair") {
  const MomentPolytope poly(10, 1.01);
  const SamplerConfig config;
  ChainState state = initial_state(poly, Rng(12));
  int torus = 0;
  const int steps = 100000;
  for (int k = 0; k < steps; ++k) torus += tsmcmc_step(poly, state, config) == Branch::Torus;
  const double frac = static_cast<double>(torus) / steps;
  CHECK(frac >= 0.49);
  CHECK(frac <= 0.51);
}

TEST_CASE("chain: emitted polygons match their state") {
  SamplerConfig config;
  config.seed = 31;
  PolygonChain chain(10, 1.01, config);
  for (int k = 0; k < 20000; ++k) {
    const Polygon p = chain.next();
    const auto& d = chain.state().coords.diagonals;
    REQUIRE(chain.polytope().contains(d));
    for (double l : edge_lengths(p)) REQUIRE(std::abs(l - 1.0) < 1e-10);
    for (std::size_t i = 0; i < d.size(); ++i) REQUIRE(std::abs(distance(p[0], p[i + 2]) - d[i]) < 1e-10);
    for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(distance(p[0], p[i]) <= 1.01 + 1e-10);
  }
}

TEST_CASE("chain: burn-in and thinning are counted in steps") {
  SamplerConfig config;
  config.seed = 3;
  config.burn_in = 50;
  config.thin = 4;
  PolygonChain chain(7, inf, config);
  CHECK(chain.state().step == 50);
  chain.next();
  CHECK(chain.state().step == 54);
  CHECK(SamplerConfig{}.burn_in_for(10) == 1000);
}

TEST_CASE("sample_polygons: deterministic per seed and chain count") {
  SamplerConfig config;
  config.seed = 77;
  auto run = [&](std::size_t chains) {
    std::vector<std::vector<Polygon>> out(chains);
    const auto summary = sample_polygons(9, 1.2, 301, config, chains,
                                         [&](std::size_t c, const Polygon& p) { out[c].push_back(p); });
    CHECK(summary.emitted == 301);
    return out;
  };
  const auto a = run(3);
  const auto b = run(3);
  CHECK(a == b);
  std::size_t total = 0;
  for (const auto& chain : a) total += chain.size();
  CHECK(total == 301);

  // A single chain reproduces the stream of chain 0 of a direct PolygonChain.
  const auto single = run(1);
  PolygonChain direct(9, 1.2, config, 0);
  for (std::size_t k = 0; k < 10; ++k) CHECK(direct.next() == single[0][k]);
}

TEST_CASE("marginal: unconfined quadrilateral diagonal") {
  const std::size_t count = 100000;
  const auto x = first_diagonals(1001, count);
  const auto y = first_diagonals(2002, count);
  for (double d : x) REQUIRE((d >= 0.0 && d <= 2.0));
  // Two-sample Kolmogorov-Smirnov at significance 0.001.
  const double critical = 1.949 * std::sqrt(2.0 / static_cast<double>(count));
  CHECK(two_sample_ks(x, y) < critical);

  // The action coordinate of a quadrilateral is uniform on [0, 2].
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  double d = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double cdf = sorted[i] / 2.0;
    d = std::max({d, std::abs(cdf - static_cast<double>(i) / count), std::abs(cdf - static_cast<double>(i + 1) / count)});
  }
  CHECK(d < 1.949 / std::sqrt(static_cast<double>(count)) * 2.0);
}
