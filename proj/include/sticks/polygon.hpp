#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "sticks/vec3.hpp"

namespace sticks {

/// Closed polygon in 3-space. Edge i runs from vertex i to vertex i+1 (mod n).
class Polygon {
 public:
  Polygon() = default;
  explicit Polygon(std::vector<Vec3> vertices);

  std::size_t size() const { return vertices_.size(); }
  const Vec3& operator[](std::size_t i) const { return vertices_[i]; }
  const Vec3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  std::span<const Vec3> vertices() const { return vertices_; }

  /// Edge vector e_i = v_{i+1} - v_i.
  Vec3 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

  bool certified() const { return certified_; }
  void mark_certified(bool on) { certified_ = on; }

  friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Vec3> vertices_;
  bool certified_ = false;
};

struct Segment {
  Vec3 a;
  Vec3 b;
};

std::vector<double> edge_lengths(const Polygon& p);

/// Exact minimum distance between two closed segments (point segments allowed).
double segment_distance(const Segment& s1, const Segment& s2);

/// Minimum distance between non-adjacent edges.
double min_nonadjacent_distance(const Polygon& p);

/// Rotates vertices i+1 .. j-1 (forward, mod n) about the axis through v_i and v_j.
/// Throws DegenerateChord when |v_i - v_j| <= chord_tolerance.
Polygon crankshaft(const Polygon& p, std::size_t i, std::size_t j, double angle);

inline constexpr double chord_tolerance = 1e-12;

/// Rebuilds the vertex list from renormalized unit edge directions, closing the
/// residual by spreading it evenly. Keeps vertex 0 fixed.
Polygon renormalize_edges(const Polygon& p);
/// Same with per-edge target lengths.
Polygon renormalize_edges(const Polygon& p, std::span<const double> lengths);

/// Max vertex deviation after best-fit rigid registration (rotation + translation).
double rigid_deviation(const Polygon& a, const Polygon& b);

// Coordinate files: one vertex per line, three tab-separated decimals, no header.
Polygon read_coordinates(std::istream& in);
Polygon read_coordinates(const std::filesystem::path& path);
void write_coordinates(std::ostream& out, const Polygon& p);
void write_coordinates(const std::filesystem::path& path, const Polygon& p);

}  // namespace sticks
