#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace sticks {

inline constexpr double boundary_slack = 1e-12;

/// Feasible diagonal lengths of the fan triangulation of an equilateral n-gon
/// whose vertices all lie within distance `radius` of the root vertex.
///
/// Each constraint is stored as coef_a * d[i] + coef_b * d[j] <= bound.
class MomentPolytope {
 public:
  struct Constraint {
    std::size_t i = 0;
    std::size_t j = 0;
    double coef_a = 0.0;
    double coef_b = 0.0;
    double bound = 0.0;
  };

  /// radius = infinity means unconfined.
  MomentPolytope(std::size_t n, double radius = std::numeric_limits<double>::infinity());

  std::size_t polygon_size() const { return n_; }
  std::size_t dimension() const { return n_ - 3; }
  double radius() const { return radius_; }
  std::span<const Constraint> constraints() const { return constraints_; }

  /// True iff every inequality holds within boundary_slack. Throws DimensionMismatch.
  bool contains(std::span<const double> d) const;

  /// Maximal [t0, t1] with p + t v inside for all t in it. Throws ExteriorPoint
  /// if p is not contained.
  std::pair<double, double> chord_interval(std::span<const double> p, std::span<const double> v) const;

  std::vector<double> all_ones() const { return std::vector<double>(dimension(), 1.0); }

 private:
  double evaluate(const Constraint& c, std::span<const double> d) const {
    return c.coef_a * d[c.i] + c.coef_b * d[c.j];
  }

  std::size_t n_;
  double radius_;
  std::vector<Constraint> constraints_;
};

}  // namespace sticks
