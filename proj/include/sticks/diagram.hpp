#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sticks/link_diagram.hpp"
#include "sticks/polygon.hpp"
#include "sticks/rng.hpp"

namespace sticks {

/// A transverse double point of a polygon projection.
struct ProjectedCrossing {
  std::size_t over_edge = 0;
  std::size_t under_edge = 0;
  double over_param = 0.0;   // position along the over edge, in (0, 1)
  double under_param = 0.0;  // position along the under edge, in (0, 1)
  int sign = 1;
};

using PdCode = std::vector<std::array<int, 4>>;

/// Knot diagram: surviving projected crossings plus the PD code. Arcs are
/// labelled 1..2c from the basepoint on the image of edge 0 (vertex 1's
/// outgoing edge); each PD tuple lists arc labels counterclockwise starting
/// at the incoming under-arc.
class PlanarDiagram {
 public:
  PlanarDiagram() = default;
  PlanarDiagram(std::vector<ProjectedCrossing> crossings, LinkDiagram link);

  std::size_t crossing_count() const { return link_.crossing_count(); }
  const std::vector<ProjectedCrossing>& crossings() const { return crossings_; }
  const LinkDiagram& link() const { return link_; }
  const PdCode& code() const { return code_; }

  /// PD code minimized lexicographically over all basepoints.
  PdCode canonical_code() const;

  PlanarDiagram mirrored() const;

 private:
  std::vector<ProjectedCrossing> crossings_;
  LinkDiagram link_;
  PdCode code_;
};

inline constexpr double genericity_tolerance = 1e-9;

/// Crossings beyond this count (after simplification) are not evaluated.
inline constexpr std::size_t crossing_cap = 50;

/// Orthographic projection along `direction`, viewed from +direction (the
/// strand with larger height along direction is over). Throws
/// NonGenericProjection when the projection is not generic.
PlanarDiagram project(const Polygon& p, const Vec3& direction);

struct Projection {
  Vec3 direction;
  PlanarDiagram diagram;
};

/// Tries (0,0,1) and then uniformly random directions; among the first
/// max_tries generic projections keeps the one with fewest crossings.
/// Throws ProjectionFailure if none of max_tries attempts is generic.
Projection generic_projection(const Polygon& p, Rng& rng, int max_tries);

/// Removes crossings by Reidemeister I and II moves until none applies.
PlanarDiagram simplify(const PlanarDiagram& dgm);

/// Single-line token stream: PD tuples separated by ';', labels by ','.
std::string serialize(const PdCode& code);
PdCode parse_code(std::string_view text);

PlanarDiagram diagram_from_pd(const PdCode& code);

}  // namespace sticks
