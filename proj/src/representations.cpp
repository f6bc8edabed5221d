#include "sticks/representations.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sticks/errors.hpp"

namespace sticks {

namespace {

Permutation compose(const Permutation& first, const Permutation& then) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = then[first[i]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint8_t>(i);
  return out;
}

// g^-1 x g, acting on the right: apply g^-1, then x, then g.
Permutation conjugated(const Permutation& x, const Permutation& g) {
  return compose(compose(inverse(g), x), g);
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

struct Wirtinger {
  struct Relation {
    int over = 0;
    int in = 0;
    int out = 0;
    int sign = 1;
  };
  std::vector<Relation> relations;
  int arcs = 0;
};

Wirtinger wirtinger(const LinkDiagram& knot) {
  const int edges = static_cast<int>(knot.edge_count());
  std::vector<int> parent(edges);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& c : knot.crossings()) parent[find_root(parent, c.over_in())] = find_root(parent, c.over_out());
  std::vector<int> arc_of(edges, -1);
  Wirtinger w;
  for (int e = 0; e < edges; ++e) {
    const int r = find_root(parent, e);
    if (arc_of[r] < 0) arc_of[r] = w.arcs++;
    arc_of[e] = arc_of[r];
  }
  for (const auto& c : knot.crossings()) {
    w.relations.push_back({arc_of[c.over_in()], arc_of[c.under_in()], arc_of[c.under_out()], c.sign});
  }
  return w;
}

// Marks every arc whose image is forced once the marked arcs are fixed.
void close_known(const Wirtinger& w, std::vector<char>& known) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : w.relations) {
      if (known[r.over] && known[r.in] != known[r.out]) {
        known[r.in] = known[r.out] = 1;
        changed = true;
      }
    }
  }
}

// Arcs to branch on, chosen greedily so that each choice forces as many
// further arcs as possible; the start arc is tried exhaustively.
std::vector<int> branch_order(const Wirtinger& w) {
  std::vector<int> best;
  for (int start = 0; start < w.arcs; ++start) {
    std::vector<int> order{start};
    std::vector<char> known(static_cast<std::size_t>(w.arcs), 0);
    known[start] = 1;
    close_known(w, known);
    while (std::find(known.begin(), known.end(), 0) != known.end()) {
      int pick = -1;
      long most = -1;
      std::vector<char> pick_known;
      for (int a = 0; a < w.arcs; ++a) {
        if (known[a]) continue;
        std::vector<char> trial = known;
        trial[a] = 1;
        close_known(w, trial);
        const long count = std::count(trial.begin(), trial.end(), 1);
        if (count > most) {
          most = count;
          pick = a;
          pick_known = std::move(trial);
        }
      }
      order.push_back(pick);
      known = std::move(pick_known);
    }
    if (best.empty() || order.size() < best.size()) best = std::move(order);
  }
  return best;
}

class Counter {
 public:
  Counter(const Wirtinger& w, const ConjugacyClass& cls) : w_(w), cls_(cls), order_(branch_order(w)) {}

  // The first branch arc is pinned to one class member; conjugation carries
  // the solutions for it bijectively onto those for any other member.
  std::uint64_t run() {
    std::vector<int> image(static_cast<std::size_t>(w_.arcs), -1);
    image[static_cast<std::size_t>(order_[0])] = 0;
    return search(image, 1) * cls_.size();
  }

 private:
  bool propagate(std::vector<int>& image) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : w_.relations) {
        const int o = image[r.over];
        if (o < 0) continue;
        int& in = image[r.in];
        int& out = image[r.out];
        if (in >= 0) {
          const int want = r.sign > 0 ? cls_.conjugate(in, o) : cls_.conjugate_inverse(in, o);
          if (out < 0) {
            out = want;
            changed = true;
          } else if (out != want) {
            return false;
          }
        } else if (out >= 0) {
          in = r.sign > 0 ? cls_.conjugate_inverse(out, o) : cls_.conjugate(out, o);
          changed = true;
        }
      }
    }
    return true;
  }

  std::uint64_t search(std::vector<int>& image, std::size_t depth) const {
    if (!propagate(image)) return 0;
    if (depth == order_.size()) return 1;
    const auto branch = static_cast<std::size_t>(order_[depth]);
    std::uint64_t total = 0;
    for (std::size_t g = 0; g < cls_.size(); ++g) {
      std::vector<int> next = image;
      next[branch] = static_cast<int>(g);
      total += search(next, depth + 1);
    }
    return total;
  }

  const Wirtinger& w_;
  const ConjugacyClass& cls_;
  std::vector<int> order_;
};

Permutation cycle_type_element(std::size_t degree, std::initializer_list<std::size_t> cycles) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  std::size_t start = 0;
  for (std::size_t len : cycles) {
    for (std::size_t i = 0; i < len; ++i) p[start + i] = static_cast<std::uint8_t>(start + (i + 1) % len);
    start += len;
  }
  return p;
}

std::vector<Permutation> symmetric_generators(std::size_t degree) {
  Permutation swap(degree);
  std::iota(swap.begin(), swap.end(), std::uint8_t{0});
  std::swap(swap[0], swap[1]);
  return {swap, cycle_type_element(degree, {degree})};
}

}  // namespace

ConjugacyClass::ConjugacyClass(std::string label, const std::vector<Permutation>& generators,
                               const Permutation& element)
    : label_(std::move(label)) {
  std::map<Permutation, std::size_t> index;
  members_.push_back(element);
  index[element] = 0;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    for (const auto& g : generators) {
      Permutation next = conjugated(members_[k], g);
      if (index.emplace(next, members_.size()).second) members_.push_back(std::move(next));
    }
  }
  if (members_.size() > 0xffff) throw Error("conjugacy class too large");
  const std::size_t k = members_.size();
  conj_.resize(k * k);
  conj_inv_.resize(k * k);
  for (std::size_t by = 0; by < k; ++by) {
    for (std::size_t x = 0; x < k; ++x) {
      conj_[by * k + x] = static_cast<std::uint16_t>(index.at(conjugated(members_[x], members_[by])));
      conj_inv_[by * k + x] = static_cast<std::uint16_t>(index.at(conjugated(members_[x], inverse(members_[by]))));
    }
  }
}

std::uint64_t count_representations(const LinkDiagram& knot, const ConjugacyClass& cls) {
  if (knot.crossing_count() == 0) return cls.size();
  if (knot.component_count() != 1) throw Error("representation counts need a one-component diagram");
  const Wirtinger w = wirtinger(knot);
  return Counter(w, cls).run();
}

const std::vector<ConjugacyClass>& separating_classes() {
  static const std::vector<ConjugacyClass> classes = [] {
    std::vector<ConjugacyClass> out;
    out.emplace_back("S5:3-cycle", symmetric_generators(5), cycle_type_element(5, {3}));
    out.emplace_back("S6:4-cycle", symmetric_generators(6), cycle_type_element(6, {4}));
    out.emplace_back("S6:6-cycle", symmetric_generators(6), cycle_type_element(6, {6}));
    return out;
  }();
  return classes;
}

std::vector<std::uint64_t> representation_profile(const LinkDiagram& knot) {
  std::vector<std::uint64_t> out;
  for (const auto& cls : separating_classes()) out.push_back(count_representations(knot, cls));
  return out;
}

}  // namespace sticks
