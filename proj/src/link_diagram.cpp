#include "sticks/link_diagram.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sticks/errors.hpp"

namespace sticks {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

int slot_of(const LinkCrossing& c, int edge, int skip = -1) {
  for (int k = 0; k < 4; ++k) {
    if (c.slots[k] == edge && k != skip) return k;
  }
  return -1;
}

}  // namespace

LinkDiagram::LinkDiagram(std::vector<LinkCrossing> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  index_edges();
}

void LinkDiagram::index_edges() {
  const std::size_t edges = edge_count();
  heads_.assign(edges, {});
  tails_.assign(edges, {});
  auto check = [&](int e) {
    if (e < 0 || static_cast<std::size_t>(e) >= edges) throw Error("diagram edge id out of range");
  };
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& c = crossings_[i];
    const int ci = static_cast<int>(i);
    for (int e : c.slots) check(e);
    if (heads_[c.under_in()].crossing >= 0 || heads_[c.over_in()].crossing >= 0 ||
        tails_[c.under_out()].crossing >= 0 || tails_[c.over_out()].crossing >= 0) {
      throw Error("diagram edge used twice in the same direction");
    }
    heads_[c.under_in()] = {ci, false};
    heads_[c.over_in()] = {ci, true};
    tails_[c.under_out()] = {ci, false};
    tails_[c.over_out()] = {ci, true};
  }
}

LinkDiagram LinkDiagram::from_knot_pd(std::span<const std::array<int, 4>> pd) {
  const int arcs = static_cast<int>(2 * pd.size());
  std::vector<LinkCrossing> out;
  out.reserve(pd.size());
  auto follows = [&](int later, int earlier) { return later == earlier % arcs + 1; };
  for (const auto& t : pd) {
    for (int label : t) {
      if (label < 1 || label > arcs) throw Error("PD arc label " + std::to_string(label) + " out of range");
    }
    if (!follows(t[2], t[0])) throw Error("PD under-strand labels are not consecutive");
    LinkCrossing c;
    for (int k = 0; k < 4; ++k) c.slots[k] = t[k] - 1;
    if (follows(t[1], t[3])) {
      c.sign = 1;
    } else if (follows(t[3], t[1])) {
      c.sign = -1;
    } else {
      throw Error("PD over-strand labels are not consecutive");
    }
    c.tag = static_cast<int>(out.size());
    out.push_back(c);
  }
  // The empty code is the crossingless unknot.
  return LinkDiagram(std::move(out), pd.empty() ? 1 : 0);
}

int LinkDiagram::next_edge(int edge) const {
  const EdgeEnd h = head(edge);
  const auto& c = crossings_[static_cast<std::size_t>(h.crossing)];
  return h.over ? c.over_out() : c.under_out();
}

int LinkDiagram::component_count() const {
  std::vector<char> seen(edge_count(), 0);
  int comps = free_loops_;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    if (seen[e]) continue;
    ++comps;
    int cur = static_cast<int>(e);
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      cur = next_edge(cur);
    }
  }
  return comps;
}

LinkDiagram LinkDiagram::rebuilt(std::span<const std::pair<int, int>> joins,
                                 std::span<const std::size_t> drop) const {
  UnionFind uf(edge_count());
  for (auto [a, b] : joins) uf.join(a, b);
  std::vector<char> dropped(crossings_.size(), 0);
  for (std::size_t d : drop) dropped[d] = 1;

  std::vector<int> relabel(edge_count(), -1);
  int next_id = 0;
  std::vector<LinkCrossing> kept;
  kept.reserve(crossings_.size() - drop.size());
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    if (dropped[i]) continue;
    LinkCrossing c = crossings_[i];
    for (int& e : c.slots) {
      const int root = uf.find(e);
      if (relabel[root] < 0) relabel[root] = next_id++;
      e = relabel[root];
    }
    kept.push_back(c);
  }
  int loops = free_loops_;
  std::vector<char> counted(edge_count(), 0);
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const int root = uf.find(static_cast<int>(e));
    if (relabel[root] < 0 && !counted[root]) {
      counted[root] = 1;
      ++loops;
    }
  }
  LinkDiagram out(std::move(kept), loops);
  const int base_root = edge_count() > 0 ? uf.find(base_edge_) : -1;
  out.base_edge_ = base_root >= 0 && relabel[base_root] >= 0 ? relabel[base_root] : 0;
  return out;
}

LinkDiagram LinkDiagram::switched(std::size_t crossing) const {
  LinkDiagram out = *this;
  auto& c = out.crossings_[crossing];
  const auto s = c.slots;
  // The old over strand becomes the under strand; rotate so its incoming edge is slot 0.
  if (c.sign > 0) {
    c.slots = {s[3], s[0], s[1], s[2]};
  } else {
    c.slots = {s[1], s[2], s[3], s[0]};
  }
  c.sign = -c.sign;
  out.index_edges();
  return out;
}

LinkDiagram LinkDiagram::smoothed(std::size_t crossing) const {
  const auto& c = crossings_[crossing];
  const std::pair<int, int> joins[] = {{c.under_in(), c.over_out()}, {c.over_in(), c.under_out()}};
  const std::size_t drop[] = {crossing};
  return rebuilt(joins, drop);
}

LinkDiagram LinkDiagram::mirrored() const {
  LinkDiagram out = *this;
  for (std::size_t i = 0; i < crossings_.size(); ++i) out = out.switched(i);
  return out;
}

bool LinkDiagram::reduce_once() {
  // Reidemeister I: an edge leaving a crossing and returning to it.
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& c = crossings_[i];
    if (c.under_out() == c.over_in() || c.over_out() == c.under_in()) {
      const std::pair<int, int> joins[] = {{c.under_in(), c.under_out()}, {c.over_in(), c.over_out()}};
      const std::size_t drop[] = {i};
      *this = rebuilt(joins, drop);
      return true;
    }
  }
  // Reidemeister II: a bigon face whose boundary edges are each over at both
  // corners or under at both corners.
  for (std::size_t x = 0; x < crossings_.size(); ++x) {
    const auto& cx = crossings_[x];
    for (int p = 0; p < 4; ++p) {
      const int e1 = cx.slots[p];
      const EdgeEnd h = head(e1);
      const EdgeEnd t = tail(e1);
      const int other = h.crossing == static_cast<int>(x) ? t.crossing : h.crossing;
      if (other == static_cast<int>(x)) continue;
      const auto& cy = crossings_[static_cast<std::size_t>(other)];
      const int q = slot_of(cy, e1);
      for (int turn : {1, 3}) {
        const int e2 = cy.slots[(q + turn) % 4];
        if (e2 == e1) continue;
        const int r = slot_of(cx, e2);
        if (r < 0 || (r + turn) % 4 != p) continue;
        if (slot_of(cy, e2, (q + turn) % 4) >= 0) continue;  // e2 loops at y
        if ((p % 2) != (q % 2)) continue;                      // alternating bigon
        const std::pair<int, int> joins[] = {{cx.under_in(), cx.under_out()},
                                             {cx.over_in(), cx.over_out()},
                                             {cy.under_in(), cy.under_out()},
                                             {cy.over_in(), cy.over_out()}};
        const std::size_t drop[] = {x, static_cast<std::size_t>(other)};
        *this = rebuilt(joins, drop);
        return true;
      }
    }
  }
  return false;
}

std::size_t LinkDiagram::simplify() {
  const std::size_t before = crossings_.size();
  while (reduce_once()) {
  }
  return before - crossings_.size();
}

bool LinkDiagram::is_connected() const {
  if (crossings_.empty()) return free_loops_ <= 1;
  if (free_loops_ > 0) return false;
  UnionFind uf(crossings_.size());
  for (std::size_t e = 0; e < edge_count(); ++e) uf.join(heads_[e].crossing, tails_[e].crossing);
  const int root = uf.find(0);
  for (std::size_t i = 1; i < crossings_.size(); ++i) {
    if (uf.find(static_cast<int>(i)) != root) return false;
  }
  return true;
}

std::vector<LinkDiagram> LinkDiagram::split() const {
  std::vector<LinkDiagram> pieces;
  if (!crossings_.empty()) {
    UnionFind uf(crossings_.size());
    for (std::size_t e = 0; e < edge_count(); ++e) uf.join(heads_[e].crossing, tails_[e].crossing);
    std::vector<int> piece_of(crossings_.size(), -1);
    std::vector<std::vector<LinkCrossing>> groups;
    for (std::size_t i = 0; i < crossings_.size(); ++i) {
      const int root = uf.find(static_cast<int>(i));
      if (piece_of[root] < 0) {
        piece_of[root] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[piece_of[root]].push_back(crossings_[i]);
    }
    for (auto& g : groups) {
      std::vector<int> relabel(edge_count(), -1);
      int next_id = 0;
      for (auto& c : g) {
        for (int& e : c.slots) {
          if (relabel[e] < 0) relabel[e] = next_id++;
          e = relabel[e];
        }
      }
      pieces.emplace_back(std::move(g), 0);
    }
  }
  for (int i = 0; i < free_loops_; ++i) pieces.emplace_back(std::vector<LinkCrossing>{}, 1);
  return pieces;
}

std::vector<std::int16_t> LinkDiagram::code_from(int start_edge) const {
  const std::size_t edges = edge_count();
  std::vector<int> label(edges, -1);
  std::vector<int> order;
  order.reserve(edges);
  std::vector<std::int16_t> lengths;

  auto walk = [&](int start) {
    int e = start;
    std::int16_t len = 0;
    do {
      label[static_cast<std::size_t>(e)] = static_cast<int>(order.size());
      order.push_back(e);
      ++len;
      e = next_edge(e);
    } while (e != start);
    lengths.push_back(len);
  };
  walk(start_edge);
  for (std::size_t scan = 0; scan < order.size(); ++scan) {
    const EdgeEnd h = head(order[scan]);
    const auto& c = crossings_[static_cast<std::size_t>(h.crossing)];
    const int partner = h.over ? c.under_in() : c.over_in();
    if (label[static_cast<std::size_t>(partner)] < 0) walk(partner);
  }

  std::vector<int> number(crossings_.size(), -1);
  std::vector<int> by_number;
  std::vector<std::int16_t> code;
  code.reserve(2 + lengths.size() + edges + crossings_.size());
  code.push_back(static_cast<std::int16_t>(lengths.size()));
  code.insert(code.end(), lengths.begin(), lengths.end());
  for (int e : order) {
    const EdgeEnd h = head(e);
    if (number[static_cast<std::size_t>(h.crossing)] < 0) {
      number[static_cast<std::size_t>(h.crossing)] = static_cast<int>(by_number.size());
      by_number.push_back(h.crossing);
    }
    code.push_back(static_cast<std::int16_t>(2 * number[static_cast<std::size_t>(h.crossing)] + (h.over ? 1 : 0)));
  }
  for (int ci : by_number) code.push_back(static_cast<std::int16_t>(crossings_[static_cast<std::size_t>(ci)].sign));
  return code;
}

std::vector<std::int16_t> LinkDiagram::canonical_code() const {
  if (crossings_.empty()) return {static_cast<std::int16_t>(-free_loops_)};
  std::vector<std::int16_t> best;
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto code = code_from(static_cast<int>(e));
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<std::array<int, 4>> LinkDiagram::knot_pd(int start_edge) const {
  std::vector<int> label(edge_count(), -1);
  int e = start_edge;
  int next_label = 1;
  if (!crossings_.empty()) {
    do {
      label[static_cast<std::size_t>(e)] = next_label++;
      e = next_edge(e);
    } while (e != start_edge);
  }
  if (static_cast<std::size_t>(next_label - 1) != edge_count()) throw Error("knot_pd needs a single component");
  std::vector<std::array<int, 4>> pd;
  pd.reserve(crossings_.size());
  for (const auto& c : crossings_) {
    std::array<int, 4> t{};
    for (int k = 0; k < 4; ++k) t[k] = label[static_cast<std::size_t>(c.slots[k])];
    pd.push_back(t);
  }
  std::sort(pd.begin(), pd.end());
  return pd;
}

}  // namespace sticks
