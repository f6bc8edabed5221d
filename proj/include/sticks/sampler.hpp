#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sticks/action_angle.hpp"
#include "sticks/moment_polytope.hpp"
#include "sticks/polygon.hpp"
#include "sticks/rng.hpp"

namespace sticks {

struct SamplerConfig {
  double beta = 0.5;               // probability of a hit-and-run block
  int gamma = 10;                  // hit-and-run iterations per block
  std::optional<std::uint64_t> burn_in;  // default 100 * n
  std::uint64_t thin = 1;
  std::uint64_t seed = 0;

  std::uint64_t burn_in_for(std::size_t n) const { return burn_in.value_or(100 * n); }
};

struct ChainState {
  ActionAngle coords;
  std::uint64_t step = 0;
  Rng rng;
};

enum class Branch { HitAndRun, Torus };

/// Uniformly random unit vector in R^dim (normalized Gaussians).
std::vector<double> random_direction(std::size_t dim, Rng& rng);

/// Moves the diagonals to p + t v; fails with ExteriorPoint if the result leaves the polytope.
void hit_and_run_move(const MomentPolytope& poly, ChainState& state, std::span<const double> v, double t);

void hit_and_run_step(const MomentPolytope& poly, ChainState& state);

/// Resamples every angle uniformly on [-pi, pi).
void torus_step(ChainState& state);

void apply_branch(const MomentPolytope& poly, ChainState& state, const SamplerConfig& config, Branch branch);

/// One TSMCMC step: coin flip, then gamma hit-and-run moves or a torus resample.
Branch tsmcmc_step(const MomentPolytope& poly, ChainState& state, const SamplerConfig& config);

/// Chain state at the all-ones diagonal with uniform angles.
ChainState initial_state(const MomentPolytope& poly, Rng rng);

/// One Markov chain emitting reconstructed polygons after burn-in.
class PolygonChain {
 public:
  PolygonChain(std::size_t n, double radius, const SamplerConfig& config, std::uint64_t stream = 0);

  /// Advances thin steps (skipping degenerate states) and returns the polygon.
  Polygon next();

  const ChainState& state() const { return state_; }
  const MomentPolytope& polytope() const { return polytope_; }
  std::uint64_t degenerate_skips() const { return degenerate_skips_; }

 private:
  MomentPolytope polytope_;
  SamplerConfig config_;
  ChainState state_;
  std::uint64_t degenerate_skips_ = 0;
};

struct SampleSummary {
  std::uint64_t emitted = 0;
  std::uint64_t degenerate_skips = 0;
};

/// Draws `count` polygons split across `chains` independent streams derived
/// from config.seed; chain k emits its share in order. The sink is called
/// from chain k's thread with (chain index, polygon).
SampleSummary sample_polygons(std::size_t n, double radius, std::uint64_t count, const SamplerConfig& config,
                              std::size_t chains,
                              const std::function<void(std::size_t, const Polygon&)>& sink);

}  // namespace sticks
