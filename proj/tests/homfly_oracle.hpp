#pragma once

// Unmemoized HOMFLY evaluation by the descending-diagram skein tree, written
// against a bare crossing list so it shares no traversal or reduction code
// with the library evaluator.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "sticks/homfly.hpp"
#include "sticks/link_diagram.hpp"

namespace testing {

using Poly = std::map<std::pair<int, int>, long long>;  // (a, z) -> coefficient

inline void add_into(Poly& acc, const Poly& p, long long c, int da, int dz) {
  for (const auto& [k, v] : p) {
    auto& slot = acc[{k.first + da, k.second + dz}];
    slot += c * v;
    if (slot == 0) acc.erase({k.first + da, k.second + dz});
  }
}

inline Poly poly_mul(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [k, v] : x) add_into(out, y, v, k.first, k.second);
  return out;
}

inline Poly unlink_value(int components) {
  // ((a - a^-1) / z)^(components - 1)
  Poly out{{{0, 0}, 1}};
  const Poly d{{{1, -1}, 1}, {{-1, -1}, -1}};
  for (int k = 1; k < components; ++k) out = poly_mul(out, d);
  return out;
}

struct OracleCrossing {
  int ui, uo, oi, oo, sign;
};

struct OracleDiagram {
  std::vector<OracleCrossing> x;
  int loops = 0;
};

inline OracleDiagram to_oracle(const sticks::LinkDiagram& d) {
  OracleDiagram o;
  o.loops = d.free_loops();
  for (const auto& c : d.crossings()) o.x.push_back({c.under_in(), c.under_out(), c.over_in(), c.over_out(), c.sign});
  return o;
}

inline Poly oracle_homfly(const OracleDiagram& d) {
  // Successor of each edge label and the crossing at its head.
  std::map<int, std::pair<int, int>> head;  // edge -> (crossing, 0 under / 1 over)
  for (int i = 0; i < static_cast<int>(d.x.size()); ++i) {
    head[d.x[i].ui] = {i, 0};
    head[d.x[i].oi] = {i, 1};
  }
  auto next = [&](int e) {
    const auto [c, over] = head.at(e);
    return over ? d.x[c].oo : d.x[c].uo;
  };

  std::set<int> unvisited;
  for (const auto& [e, h] : head) unvisited.insert(e);
  std::vector<char> seen(d.x.size(), 0);
  int components = 0;
  int bad = -1;
  while (!unvisited.empty()) {
    ++components;
    const int base = *unvisited.begin();
    int e = base;
    do {
      unvisited.erase(e);
      const auto [c, over] = head.at(e);
      if (!seen[c]) {
        seen[c] = 1;
        if (!over && bad < 0) bad = c;
      }
      e = next(e);
    } while (e != base);
  }
  if (bad < 0) return unlink_value(components + d.loops);

  const OracleCrossing& c = d.x[bad];
  OracleDiagram sw = d;
  sw.x[bad] = {c.oi, c.oo, c.ui, c.uo, -c.sign};

  // Oriented smoothing joins under-in to over-out and over-in to under-out.
  OracleDiagram sm;
  sm.loops = d.loops;
  std::map<int, int> parent;
  auto find = [&](int v) {
    while (parent.count(v) && parent[v] != v) v = parent[v];
    return v;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  };
  for (int v : {c.ui, c.uo, c.oi, c.oo}) parent.emplace(v, v);
  unite(c.ui, c.oo);
  unite(c.oi, c.uo);
  std::set<int> used;
  for (int i = 0; i < static_cast<int>(d.x.size()); ++i) {
    if (i == bad) continue;
    const auto& y = d.x[i];
    OracleCrossing r{find(y.ui), find(y.uo), find(y.oi), find(y.oo), y.sign};
    for (int v : {r.ui, r.uo, r.oi, r.oo}) used.insert(v);
    sm.x.push_back(r);
  }
  std::set<int> roots{find(c.ui), find(c.oi)};
  for (int r : roots) {
    if (!used.count(r)) ++sm.loops;
  }

  Poly out;
  const Poly psw = oracle_homfly(sw);
  const Poly psm = oracle_homfly(sm);
  if (c.sign > 0) {
    add_into(out, psw, 1, -2, 0);
    add_into(out, psm, 1, -1, 1);
  } else {
    add_into(out, psw, 1, 2, 0);
    add_into(out, psm, -1, 1, 1);
  }
  return out;
}

inline Poly as_poly(const sticks::HomflyPolynomial& p) {
  Poly out;
  for (const auto& t : p.terms()) out[{t.a, t.z}] = t.coef;
  return out;
}

}  // namespace testing
