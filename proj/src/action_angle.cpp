#include "sticks/action_angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sticks/errors.hpp"

namespace sticks {

namespace {

// Height of the fan triangle with sides (near, 1, far) over the chord of
// length `near`, plus the foot of that height along the chord.
struct TriangleApex {
  double along = 0.0;
  double height = 0.0;
};

TriangleApex apex_over_chord(double near, double far, std::size_t which) {
  const double s16 = (near + far + 1.0) * (-near + far + 1.0) * (near - far + 1.0) * (near + far - 1.0);
  if (near < degeneracy_tolerance || far < degeneracy_tolerance || !(s16 > 0.0)) {
    throw DegenerateDiagonal("fan triangle " + std::to_string(which + 1) + " is degenerate");
  }
  const double area = 0.25 * std::sqrt(s16);
  const double min_height = 2.0 * area / std::max({near, far, 1.0});
  if (min_height < degeneracy_tolerance) {
    throw DegenerateDiagonal("fan triangle " + std::to_string(which + 1) + " is degenerate");
  }
  TriangleApex apex;
  apex.along = (near * near + far * far - 1.0) / (2.0 * near);
  apex.height = 2.0 * area / near;
  return apex;
}

// Unit vector from the chord axis toward q, perpendicular to the axis.
Vec3 perpendicular_direction(const Vec3& q, const Vec3& axis) {
  const Vec3 perp = q - axis * dot(q, axis);
  const double len = norm(perp);
  if (len < degeneracy_tolerance) throw DegenerateDiagonal("vertex lies on fan chord");
  return perp * (1.0 / len);
}

}  // namespace

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta + std::numbers::pi, two_pi);
  if (r < 0.0) r += two_pi;
  r -= std::numbers::pi;
  if (r >= std::numbers::pi) r -= two_pi;
  return r;
}

Polygon reconstruct(const ActionAngle& coords) {
  const auto& d = coords.diagonals;
  if (coords.angles.size() != d.size()) throw DimensionMismatch("diagonals and angles differ in length");
  const std::size_t n = d.size() + 3;
  if (d.empty()) throw DimensionMismatch("reconstruct needs n >= 4");

  // Diagonal k is |v_1 - v_{k+2}| (0-based k); the boundary chords are the unit edges.
  auto chord = [&](std::size_t k) { return (k == 0 || k == n - 2) ? 1.0 : d[k - 1]; };

  std::vector<Vec3> v(n);
  v[1] = {1.0, 0.0, 0.0};
  {
    const TriangleApex apex = apex_over_chord(1.0, chord(1), 0);
    v[2] = {apex.along, apex.height, 0.0};
  }
  for (std::size_t k = 1; k + 1 < n - 1; ++k) {
    // Triangle (v_0, v_{k+1}, v_{k+2}) glued to (v_0, v_k, v_{k+1}) along chord v_{k+1}.
    const double near = chord(k);
    const double far = chord(k + 1);
    const TriangleApex apex = apex_over_chord(near, far, k);
    const Vec3 axis = v[k + 1] * (1.0 / norm(v[k + 1]));
    const Vec3 w = perpendicular_direction(v[k], axis);
    const double theta = coords.angles[k - 1];
    const Vec3 dir = w * std::cos(theta) + cross(axis, w) * std::sin(theta);
    v[k + 2] = axis * apex.along + dir * apex.height;
  }
  return Polygon(std::move(v));
}

ActionAngle extract(const Polygon& p) {
  const std::size_t n = p.size();
  if (n < 4) throw DimensionMismatch("extract needs n >= 4");
  ActionAngle out;
  out.diagonals.resize(n - 3);
  out.angles.resize(n - 3);
  const Vec3 root = p[0];

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const double near = k == 0 ? norm(p[1] - root) : norm(p[k + 1] - root);
    const double far = norm(p[k + 2] - root);
    const double edge = norm(p[k + 2] - p[k + 1]);
    const double s16 = (near + far + edge) * (-near + far + edge) * (near - far + edge) * (near + far - edge);
    const double longest = std::max({near, far, edge});
    if (near < degeneracy_tolerance || far < degeneracy_tolerance || !(s16 > 0.0) ||
        0.5 * std::sqrt(s16) / longest < degeneracy_tolerance) {
      throw DegenerateDiagonal("fan triangle " + std::to_string(k + 1) + " is degenerate");
    }
  }

  for (std::size_t i = 0; i + 3 < n; ++i) {
    const Vec3 c = p[i + 2] - root;
    out.diagonals[i] = norm(c);
    const Vec3 axis = c * (1.0 / out.diagonals[i]);
    const Vec3 w_prev = perpendicular_direction(p[i + 1] - root, axis);
    const Vec3 w_next = perpendicular_direction(p[i + 3] - root, axis);
    out.angles[i] = wrap_angle(std::atan2(dot(cross(axis, w_prev), w_next), dot(w_prev, w_next)));
  }
  return out;
}

}  // namespace sticks
