#include "sticks/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <optional>
#include <sstream>

#include "sticks/errors.hpp"

namespace sticks {

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
double dot2(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double norm2(const Vec2& a) { return std::sqrt(dot2(a, a)); }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double dd = dot2(d, d);
  double t = dd > 0.0 ? dot2(p - a, d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm2(p - Vec2{a.x + t * d.x, a.y + t * d.y});
}

// Orthonormal (e1, e2) with e1 x e2 = dir; dir = +z gives the standard xy frame.
std::pair<Vec3, Vec3> screen_basis(const Vec3& dir) {
  const double ax = std::abs(dir.x);
  const double ay = std::abs(dir.y);
  const double az = std::abs(dir.z);
  Vec3 helper{1.0, 0.0, 0.0};
  if (ax > ay && ax > az) helper = {0.0, 1.0, 0.0};
  Vec3 e1 = helper - dir * dot(helper, dir);
  e1 = normalized(e1);
  return {e1, cross(dir, e1)};
}

struct Pass {
  std::size_t edge = 0;
  double param = 0.0;
  std::size_t crossing = 0;
  bool over = false;
};

}  // namespace

PlanarDiagram::PlanarDiagram(std::vector<ProjectedCrossing> crossings, LinkDiagram link) {
  std::vector<LinkCrossing> relinked = link.crossings();
  crossings_.reserve(relinked.size());
  for (std::size_t i = 0; i < relinked.size(); ++i) {
    crossings_.push_back(crossings.at(static_cast<std::size_t>(relinked[i].tag)));
    relinked[i].tag = static_cast<int>(i);
  }
  const int base = link.base_edge();
  link_ = LinkDiagram(std::move(relinked), link.free_loops());
  link_.set_base_edge(base);
  if (link_.crossing_count() > 0) code_ = link_.knot_pd(base);
}

PdCode PlanarDiagram::canonical_code() const {
  PdCode best;
  for (std::size_t e = 0; e < link_.edge_count(); ++e) {
    PdCode code = link_.knot_pd(static_cast<int>(e));
    if (e == 0 || code < best) best = std::move(code);
  }
  return best;
}

PlanarDiagram PlanarDiagram::mirrored() const {
  std::vector<ProjectedCrossing> flipped = crossings_;
  for (auto& c : flipped) {
    std::swap(c.over_edge, c.under_edge);
    std::swap(c.over_param, c.under_param);
    c.sign = -c.sign;
  }
  return PlanarDiagram(std::move(flipped), link_.mirrored());
}

PlanarDiagram project(const Polygon& p, const Vec3& direction) {
  const std::size_t n = p.size();
  const double tol = genericity_tolerance;
  const auto [e1, e2] = screen_basis(direction);
  std::vector<Vec2> flat(n);
  std::vector<double> height(n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[i] = {dot(p[i], e1), dot(p[i], e2)};
    height[i] = dot(p[i], direction);
  }
  auto fv = [&](std::size_t i) { return flat[i % n]; };

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || (j + 1) % n == k) continue;
      if (point_segment_distance(flat[k], fv(j), fv(j + 1)) < tol) {
        throw NonGenericProjection("vertex " + std::to_string(k) + " projects onto edge " + std::to_string(j));
      }
    }
  }

  std::vector<ProjectedCrossing> crossings;
  std::vector<Vec2> points;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = fv(i);
    const Vec2 da = fv(i + 1) - a;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const Vec2 b = fv(j);
      const Vec2 db = fv(j + 1) - b;
      const double denom = cross2(da, db);
      const Vec2 r = b - a;
      if (std::abs(denom) <= tol * norm2(da) * norm2(db)) {
        const double gap = std::min({point_segment_distance(a, b, fv(j + 1)),
                                     point_segment_distance(fv(i + 1), b, fv(j + 1)),
                                     point_segment_distance(b, a, fv(i + 1)),
                                     point_segment_distance(fv(j + 1), a, fv(i + 1))});
        if (gap < tol) throw NonGenericProjection("parallel overlapping edges");
        continue;
      }
      const double s = cross2(r, db) / denom;
      const double t = cross2(r, da) / denom;
      if (s < -tol || s > 1.0 + tol || t < -tol || t > 1.0 + tol) continue;
      if (s < tol || s > 1.0 - tol || t < tol || t > 1.0 - tol) {
        throw NonGenericProjection("crossing within tolerance of an edge endpoint");
      }
      const double hi = height[i] + s * (height[(i + 1) % n] - height[i]);
      const double hj = height[j] + t * (height[(j + 1) % n] - height[j]);
      if (std::abs(hi - hj) < 1e-12) throw NonGenericProjection("edges intersect in space");
      ProjectedCrossing c;
      const bool i_over = hi > hj;
      c.over_edge = i_over ? i : j;
      c.under_edge = i_over ? j : i;
      c.over_param = i_over ? s : t;
      c.under_param = i_over ? t : s;
      const Vec2 dover = i_over ? da : db;
      const Vec2 dunder = i_over ? db : da;
      c.sign = cross2(dover, dunder) > 0.0 ? 1 : -1;
      crossings.push_back(c);
      points.push_back({a.x + s * da.x, a.y + s * da.y});
    }
  }
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (norm2(points[a] - points[b]) < tol) throw NonGenericProjection("two crossings coincide");
    }
  }

  std::vector<Pass> passes;
  passes.reserve(2 * crossings.size());
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    passes.push_back({crossings[k].over_edge, crossings[k].over_param, k, true});
    passes.push_back({crossings[k].under_edge, crossings[k].under_param, k, false});
  }
  std::sort(passes.begin(), passes.end(), [](const Pass& x, const Pass& y) {
    return x.edge != y.edge ? x.edge < y.edge : x.param < y.param;
  });
  // Arc k ends at pass k, so arc 0 runs through vertex 0.
  const int arcs = static_cast<int>(passes.size());
  std::vector<int> under_at(crossings.size()), over_at(crossings.size());
  for (int k = 0; k < arcs; ++k) {
    (passes[k].over ? over_at : under_at)[passes[k].crossing] = k;
  }
  std::vector<LinkCrossing> lc(crossings.size());
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const int ui = under_at[k];
    const int uo = (under_at[k] + 1) % arcs;
    const int oi = over_at[k];
    const int oo = (over_at[k] + 1) % arcs;
    lc[k].sign = crossings[k].sign;
    lc[k].slots = crossings[k].sign > 0 ? std::array<int, 4>{ui, oo, uo, oi} : std::array<int, 4>{ui, oi, uo, oo};
    lc[k].tag = static_cast<int>(k);
  }
  LinkDiagram link(std::move(lc), crossings.empty() ? 1 : 0);
  return PlanarDiagram(std::move(crossings), std::move(link));
}

Projection generic_projection(const Polygon& p, Rng& rng, int max_tries) {
  std::optional<Projection> best;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Vec3 dir{0.0, 0.0, 1.0};
    if (attempt > 0) dir = normalized(Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()});
    try {
      PlanarDiagram dgm = project(p, dir);
      if (!best || dgm.crossing_count() < best->diagram.crossing_count()) best = Projection{dir, std::move(dgm)};
    } catch (const NonGenericProjection&) {
    }
  }
  if (!best) throw ProjectionFailure("no generic projection in " + std::to_string(max_tries) + " tries");
  return std::move(*best);
}

PlanarDiagram simplify(const PlanarDiagram& dgm) {
  LinkDiagram link = dgm.link();
  link.simplify();
  return PlanarDiagram(dgm.crossings(), std::move(link));
}

std::string serialize(const PdCode& code) {
  std::ostringstream out;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) out << ';';
    out << code[i][0] << ',' << code[i][1] << ',' << code[i][2] << ',' << code[i][3];
  }
  return out.str();
}

PdCode parse_code(std::string_view text) {
  PdCode code;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tuple = text.substr(pos, end - pos);
    std::array<int, 4> t{};
    std::size_t field = 0;
    std::size_t fpos = 0;
    while (fpos <= tuple.size()) {
      std::size_t fend = tuple.find(',', fpos);
      if (fend == std::string_view::npos) fend = tuple.size();
      if (field >= 4) throw ParseError(1, "PD tuple has more than 4 labels");
      const auto sv = tuple.substr(fpos, fend - fpos);
      const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), t[field]);
      if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) {
        throw ParseError(1, "bad PD label '" + std::string(sv) + "'");
      }
      ++field;
      fpos = fend + 1;
    }
    if (field != 4) throw ParseError(1, "PD tuple needs 4 labels");
    code.push_back(t);
    pos = end + 1;
  }
  return code;
}

PlanarDiagram diagram_from_pd(const PdCode& code) {
  LinkDiagram link = code.empty() ? LinkDiagram({}, 1) : LinkDiagram::from_knot_pd(code);
  // Arc 1 carries the basepoint.
  link.set_base_edge(0);
  std::vector<ProjectedCrossing> placeholders(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) placeholders[i].sign = link.crossings()[i].sign;
  return PlanarDiagram(std::move(placeholders), std::move(link));
}

}  // namespace sticks
