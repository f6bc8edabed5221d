#pragma once

#include <cstddef>
#include <vector>

#include "sticks/polygon.hpp"

namespace sticks {

/// Fan-triangulation coordinates: diagonal lengths |v_1 - v_{i+2}| and the
/// dihedral angles between consecutive fan triangles, i = 1..n-3.
///
/// A dihedral angle of +-pi means the two triangles are coplanar and lie on
/// opposite sides of their shared chord. The angle is measured right-handedly
/// about the chord direction v_{i+2} - v_1, from the half-plane of triangle i
/// to the half-plane of triangle i+1.
struct ActionAngle {
  std::vector<double> diagonals;
  std::vector<double> angles;

  std::size_t polygon_size() const { return diagonals.size() + 3; }
};

/// Smallest fan-triangle height, and shortest chord, below which a
/// configuration is treated as degenerate.
inline constexpr double degeneracy_tolerance = 1e-12;

/// Reduces an angle into [-pi, pi).
double wrap_angle(double theta);

/// Builds the equilateral n-gon with root vertex at the origin, v_2 on the
/// +x axis and the first fan triangle in the upper half of the xy-plane.
/// Throws DegenerateDiagonal if any fan triangle is degenerate.
Polygon reconstruct(const ActionAngle& coords);

ActionAngle extract(const Polygon& p);

}  // namespace sticks
