#include "sticks/sampler.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "sticks/errors.hpp"

namespace sticks {

std::vector<double> random_direction(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  for (;;) {
    double sq = 0.0;
    for (auto& x : v) {
      x = rng.gaussian();
      sq += x * x;
    }
    if (sq > 0.0) {
      const double inv = 1.0 / std::sqrt(sq);
      for (auto& x : v) x *= inv;
      return v;
    }
  }
}

void hit_and_run_move(const MomentPolytope& poly, ChainState& state, std::span<const double> v, double t) {
  auto& d = state.coords.diagonals;
  std::vector<double> next(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) next[i] = d[i] + t * v[i];
  if (!poly.contains(next)) throw ExteriorPoint("hit-and-run move left the polytope");
  d = std::move(next);
}

void hit_and_run_step(const MomentPolytope& poly, ChainState& state) {
  const auto v = random_direction(poly.dimension(), state.rng);
  const auto [t0, t1] = poly.chord_interval(state.coords.diagonals, v);
  const double t = state.rng.uniform(t0, t1);
  auto& d = state.coords.diagonals;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += t * v[i];
}

void torus_step(ChainState& state) {
  for (auto& theta : state.coords.angles) theta = state.rng.uniform(-std::numbers::pi, std::numbers::pi);
}

void apply_branch(const MomentPolytope& poly, ChainState& state, const SamplerConfig& config, Branch branch) {
  if (branch == Branch::HitAndRun) {
    for (int i = 0; i < config.gamma; ++i) hit_and_run_step(poly, state);
  } else {
    torus_step(state);
  }
  ++state.step;
}

Branch tsmcmc_step(const MomentPolytope& poly, ChainState& state, const SamplerConfig& config) {
  const Branch branch = state.rng.uniform() < config.beta ? Branch::HitAndRun : Branch::Torus;
  apply_branch(poly, state, config, branch);
  return branch;
}

ChainState initial_state(const MomentPolytope& poly, Rng rng) {
  ChainState state{{poly.all_ones(), std::vector<double>(poly.dimension())}, 0, rng};
  torus_step(state);
  return state;
}

PolygonChain::PolygonChain(std::size_t n, double radius, const SamplerConfig& config, std::uint64_t stream)
    : polytope_(n, radius), config_(config), state_(initial_state(polytope_, Rng(config.seed, stream))) {
  const std::uint64_t burn = config_.burn_in_for(n);
  for (std::uint64_t i = 0; i < burn; ++i) tsmcmc_step(polytope_, state_, config_);
}

Polygon PolygonChain::next() {
  for (;;) {
    for (std::uint64_t i = 0; i < config_.thin; ++i) tsmcmc_step(polytope_, state_, config_);
    try {
      return reconstruct(state_.coords);
    } catch (const DegenerateDiagonal&) {
      ++degenerate_skips_;
    }
  }
}

SampleSummary sample_polygons(std::size_t n, double radius, std::uint64_t count, const SamplerConfig& config,
                              std::size_t chains,
                              const std::function<void(std::size_t, const Polygon&)>& sink) {
  if (chains == 0) chains = 1;
  std::vector<SampleSummary> per_chain(chains);
  auto run = [&](std::size_t k) {
    const std::uint64_t share = count / chains + (k < count % chains ? 1 : 0);
    PolygonChain chain(n, radius, config, k);
    for (std::uint64_t i = 0; i < share; ++i) sink(k, chain.next());
    per_chain[k] = {share, chain.degenerate_skips()};
  };
  if (chains == 1) {
    run(0);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(chains);
    for (std::size_t k = 0; k < chains; ++k) workers.emplace_back(run, k);
  }
  SampleSummary total;
  for (const auto& s : per_chain) {
    total.emitted += s.emitted;
    total.degenerate_skips += s.degenerate_skips;
  }
  return total;
}

}  // namespace sticks
