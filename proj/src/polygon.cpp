#include "sticks/polygon.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "sticks/errors.hpp"

namespace sticks {

Polygon::Polygon(std::vector<Vec3> vertices) : vertices_(std::move(vertices)) {}

std::vector<double> edge_lengths(const Polygon& p) {
  std::vector<double> lengths(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) lengths[i] = norm(p.edge(i));
  return lengths;
}

// Closest points of two segments, clamped parametrization (handles point segments).
double segment_distance(const Segment& s1, const Segment& s2) {
  const Vec3 d1 = s1.b - s1.a;
  const Vec3 d2 = s2.b - s2.a;
  const Vec3 r = s1.a - s2.a;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  constexpr double eps = 1e-300;

  double s = 0.0;
  double t = 0.0;
  if (a <= eps && e <= eps) return norm(r);
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      if (denom > 0.0) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 c1 = s1.a + d1 * s;
  const Vec3 c2 = s2.a + d2 * t;
  double best = distance(c1, c2);
  // Parallel and near-parallel configurations lose precision in the closed form;
  // endpoint-to-segment distances are exact there.
  auto point_seg = [](const Vec3& p, const Segment& s) {
    const Vec3 d = s.b - s.a;
    const double dd = dot(d, d);
    const double u = dd <= eps ? 0.0 : std::clamp(dot(p - s.a, d) / dd, 0.0, 1.0);
    return distance(p, s.a + d * u);
  };
  best = std::min({best, point_seg(s1.a, s2), point_seg(s1.b, s2), point_seg(s2.a, s1),
                   point_seg(s2.b, s1)});
  return best;
}

double min_nonadjacent_distance(const Polygon& p) {
  const std::size_t n = p.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Segment si{p.vertex(i), p.vertex(i + 1)};
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      best = std::min(best, segment_distance(si, {p.vertex(j), p.vertex(j + 1)}));
    }
  }
  return best;
}

Polygon crankshaft(const Polygon& p, std::size_t i, std::size_t j, double angle) {
  const std::size_t n = p.size();
  i %= n;
  j %= n;
  const Vec3 pivot = p[i];
  const Vec3 chord = p[j] - pivot;
  const double len = norm(chord);
  if (i == j || len <= chord_tolerance) throw DegenerateChord("crankshaft chord is degenerate");
  const Vec3 axis = chord * (1.0 / len);

  std::vector<Vec3> out(p.vertices().begin(), p.vertices().end());
  if (angle == 0.0) return Polygon(std::move(out));
  for (std::size_t k = (i + 1) % n; k != j; k = (k + 1) % n) {
    out[k] = pivot + rotate_about(p[k] - pivot, axis, angle);
  }
  return Polygon(std::move(out));
}

Polygon renormalize_edges(const Polygon& p) {
  const std::vector<double> unit(p.size(), 1.0);
  return renormalize_edges(p, unit);
}

Polygon renormalize_edges(const Polygon& p, std::span<const double> lengths) {
  const std::size_t n = p.size();
  if (lengths.size() != n) throw DimensionMismatch("one target length per edge required");
  double total = 0.0;
  for (double l : lengths) total += l;
  std::vector<Vec3> edges(n);
  for (std::size_t i = 0; i < n; ++i) edges[i] = p.edge(i);
  for (int pass = 0; pass < 60; ++pass) {
    Vec3 residual;
    for (std::size_t i = 0; i < n; ++i) {
      edges[i] = normalized(edges[i]) * lengths[i];
      residual += edges[i];
    }
    if (norm(residual) < 1e-15) break;
    for (std::size_t i = 0; i < n; ++i) edges[i] -= residual * (lengths[i] / total);
  }
  std::vector<Vec3> verts(n);
  verts[0] = p[0];
  for (std::size_t i = 1; i < n; ++i) verts[i] = verts[i - 1] + edges[i - 1];
  return Polygon(std::move(verts));
}

double rigid_deviation(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  Eigen::Matrix3Xd pa(3, n), pb(3, n);
  for (std::size_t i = 0; i < n; ++i) {
    pa.col(i) << a[i].x, a[i].y, a[i].z;
    pb.col(i) << b[i].x, b[i].y, b[i].z;
  }
  const Eigen::Vector3d ca = pa.rowwise().mean();
  const Eigen::Vector3d cb = pb.rowwise().mean();
  pa.colwise() -= ca;
  pb.colwise() -= cb;

  // Kabsch: rotation R minimizing |R pa - pb|.
  const Eigen::Matrix3d h = pa * pb.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(2, 2) = -1.0;
  const Eigen::Matrix3d r = svd.matrixV() * d * svd.matrixU().transpose();

  const Eigen::Matrix3Xd diff = r * pa - pb;
  return diff.colwise().norm().maxCoeff();
}

Polygon read_coordinates(std::istream& in) {
  std::vector<Vec3> verts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    Vec3 v;
    if (!(fields >> v.x >> v.y >> v.z)) throw ParseError(lineno, "expected three coordinates");
    std::string extra;
    if (fields >> extra) throw ParseError(lineno, "trailing field '" + extra + "'");
    verts.push_back(v);
  }
  if (verts.size() < 3) throw ParseError(lineno, "a polygon needs at least 3 vertices");
  return Polygon(std::move(verts));
}

Polygon read_coordinates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_coordinates(in);
}

void write_coordinates(std::ostream& out, const Polygon& p) {
  char buf[128];
  for (const auto& v : p.vertices()) {
    // -0.000000000000 would not survive a diff against the canonical files.
    auto clean = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
    std::snprintf(buf, sizeof buf, "%.12f\t%.12f\t%.12f\n", clean(v.x), clean(v.y), clean(v.z));
    out << buf;
  }
}

void write_coordinates(const std::filesystem::path& path, const Polygon& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_coordinates(out, p);
}

}  // namespace sticks
