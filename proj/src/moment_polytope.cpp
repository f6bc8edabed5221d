#include "sticks/moment_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sticks/errors.hpp"

namespace sticks {

MomentPolytope::MomentPolytope(std::size_t n, double radius) : n_(n), radius_(radius) {
  if (n < 4) throw DimensionMismatch("moment polytope needs n >= 4");
  if (!(radius >= 1.0)) throw Error("confinement radius must be >= 1");
  const std::size_t m = n - 3;
  auto add = [&](std::size_t i, double a, std::size_t j, double b, double bound) {
    constraints_.push_back({i, j, a, b, bound});
  };
  // Outer triangles have two unit sides: 0 <= d_1, d_{n-3} <= 2.
  add(0, -1.0, 0, 0.0, 0.0);
  add(0, 1.0, 0, 0.0, 2.0);
  if (m > 1) {
    add(m - 1, -1.0, m - 1, 0.0, 0.0);
    add(m - 1, 1.0, m - 1, 0.0, 2.0);
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    add(i, -1.0, i + 1, -1.0, -1.0);  // 1 <= d_i + d_{i+1}
    add(i, 1.0, i + 1, -1.0, 1.0);    // d_i - d_{i+1} <= 1
    add(i, -1.0, i + 1, 1.0, 1.0);    // d_{i+1} - d_i <= 1
  }
  if (std::isfinite(radius)) {
    for (std::size_t i = 0; i < m; ++i) add(i, 1.0, i, 0.0, radius);
  }
}

bool MomentPolytope::contains(std::span<const double> d) const {
  if (d.size() != dimension()) {
    throw DimensionMismatch("expected " + std::to_string(dimension()) + " diagonals, got " +
                            std::to_string(d.size()));
  }
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return evaluate(c, d) <= c.bound + boundary_slack; });
}

std::pair<double, double> MomentPolytope::chord_interval(std::span<const double> p,
                                                         std::span<const double> v) const {
  if (v.size() != dimension()) throw DimensionMismatch("direction has wrong dimension");
  if (!contains(p)) throw ExteriorPoint("chord_interval: point is outside the polytope");
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  for (const auto& c : constraints_) {
    const double rate = evaluate(c, v);
    // Points inside the slack band count as on the boundary.
    const double room = std::max(0.0, c.bound - evaluate(c, p));
    if (rate > 0.0) {
      t1 = std::min(t1, room / rate);
    } else if (rate < 0.0) {
      t0 = std::max(t0, room / rate);
    }
  }
  return {t0, t1};
}

}  // namespace sticks
