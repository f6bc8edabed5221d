#include "sticks/homfly.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "sticks/errors.hpp"

namespace sticks {

namespace {

bool term_less(const HomflyPolynomial::Term& x, const HomflyPolynomial::Term& y) {
  return x.a != y.a ? x.a < y.a : x.z < y.z;
}

template <typename Op>
std::vector<HomflyPolynomial::Term> merge_terms(const std::vector<HomflyPolynomial::Term>& x,
                                                const std::vector<HomflyPolynomial::Term>& y, Op op) {
  std::vector<HomflyPolynomial::Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && term_less(x[i], y[j]))) {
      out.push_back(x[i++]);
    } else if (i == x.size() || term_less(y[j], x[i])) {
      out.push_back({y[j].a, y[j].z, op(0, y[j].coef)});
      ++j;
    } else {
      const std::int64_t c = op(x[i].coef, y[j].coef);
      if (c != 0) out.push_back({x[i].a, x[i].z, c});
      ++i;
      ++j;
    }
  }
  return out;
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(1, "bad integer '" + std::string(s) + "' in polynomial");
  }
  return value;
}

// Traversal of every component from chosen basepoints. A crossing is bad when
// its first visit is on the under strand; a diagram with no bad crossings is
// descending and therefore an unlink.
struct Plan {
  int bad = 0;
  int first_bad = -1;
  int components = 0;
};

Plan plan_from(const LinkDiagram& d, int start, std::vector<char>& seen_edge, std::vector<char>& seen_cross) {
  std::fill(seen_edge.begin(), seen_edge.end(), 0);
  std::fill(seen_cross.begin(), seen_cross.end(), 0);
  Plan plan;
  const int edges = static_cast<int>(d.edge_count());
  int scan = 0;
  int base = start;
  for (;;) {
    ++plan.components;
    int e = base;
    do {
      seen_edge[static_cast<std::size_t>(e)] = 1;
      const auto h = d.head(e);
      auto& seen = seen_cross[static_cast<std::size_t>(h.crossing)];
      if (!seen) {
        seen = 1;
        if (!h.over) {
          if (plan.first_bad < 0) plan.first_bad = h.crossing;
          ++plan.bad;
        }
      }
      e = d.next_edge(e);
    } while (e != base);
    while (scan < edges && seen_edge[static_cast<std::size_t>(scan)]) ++scan;
    if (scan == edges) break;
    base = scan;
  }
  return plan;
}

}  // namespace

HomflyPolynomial HomflyPolynomial::monomial(std::int64_t coef, int a_exp, int z_exp) {
  HomflyPolynomial p;
  if (coef != 0) p.terms_.push_back({a_exp, z_exp, coef});
  return p;
}

HomflyPolynomial HomflyPolynomial::delta() {
  return monomial(1, 1, -1) - monomial(1, -1, -1);
}

void HomflyPolynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_less);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!out.empty() && out.back().a == t.a && out.back().z == t.z) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  terms_ = std::move(out);
}

HomflyPolynomial& HomflyPolynomial::operator+=(const HomflyPolynomial& other) {
  terms_ = merge_terms(terms_, other.terms_, [](std::int64_t x, std::int64_t y) { return x + y; });
  return *this;
}

HomflyPolynomial& HomflyPolynomial::operator-=(const HomflyPolynomial& other) {
  terms_ = merge_terms(terms_, other.terms_, [](std::int64_t x, std::int64_t y) { return x - y; });
  return *this;
}

HomflyPolynomial operator*(const HomflyPolynomial& x, const HomflyPolynomial& y) {
  HomflyPolynomial out;
  out.terms_.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& s : x.terms_) {
    for (const auto& t : y.terms_) out.terms_.push_back({s.a + t.a, s.z + t.z, s.coef * t.coef});
  }
  out.normalize();
  return out;
}

HomflyPolynomial HomflyPolynomial::shifted(std::int64_t coef, int a_exp, int z_exp) const {
  HomflyPolynomial out;
  if (coef == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.a + a_exp, t.z + z_exp, t.coef * coef});
  return out;
}

HomflyPolynomial HomflyPolynomial::pow(unsigned k) const {
  HomflyPolynomial out = one();
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

HomflyPolynomial HomflyPolynomial::mirror() const {
  HomflyPolynomial out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({-t.a, t.z, t.z % 2 == 0 ? t.coef : -t.coef});
  out.normalize();
  return out;
}

std::string HomflyPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out << '+';
    out << terms_[i].coef << "*a^" << terms_[i].a << "*z^" << terms_[i].z;
  }
  return out.str();
}

HomflyPolynomial HomflyPolynomial::parse(std::string_view text) {
  if (text == "0") return {};
  if (text.empty()) throw ParseError(1, "empty polynomial");
  HomflyPolynomial p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view term = text.substr(pos, end - pos);
    const std::size_t ka = term.find("*a^");
    const std::size_t kz = term.find("*z^");
    if (ka == std::string_view::npos || kz == std::string_view::npos || kz < ka) {
      throw ParseError(1, "bad polynomial term '" + std::string(term) + "'");
    }
    std::int64_t coef = 0;
    const auto cs = term.substr(0, ka);
    const auto res = std::from_chars(cs.data(), cs.data() + cs.size(), coef);
    if (cs.empty() || res.ec != std::errc{} || res.ptr != cs.data() + cs.size() || coef == 0) {
      throw ParseError(1, "bad coefficient in term '" + std::string(term) + "'");
    }
    const int a = parse_int(term.substr(ka + 3, kz - ka - 3));
    const int z = parse_int(term.substr(kz + 3));
    if (!p.terms_.empty() && !term_less(p.terms_.back(), Term{a, z, coef})) {
      throw ParseError(1, "polynomial terms out of order");
    }
    p.terms_.push_back({a, z, coef});
    pos = end + 1;
  }
  return p;
}

std::size_t HomflyEvaluator::CodeHash::operator()(const std::vector<std::int16_t>& code) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int16_t v : code) {
    h ^= static_cast<std::uint16_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

HomflyPolynomial HomflyEvaluator::evaluate(LinkDiagram d) {
  if (reduce_) d.simplify();
  if (d.crossing_count() == 0 && d.free_loops() == 0) throw Error("empty diagram has no HOMFLY polynomial");
  if (d.crossing_count() == 0) return HomflyPolynomial::delta().pow(static_cast<unsigned>(d.free_loops() - 1));
  if (d.is_connected()) return evaluate_connected(d);
  const auto pieces = d.split();
  HomflyPolynomial result = HomflyPolynomial::delta().pow(static_cast<unsigned>(pieces.size() - 1));
  for (const auto& piece : pieces) {
    if (piece.crossing_count() > 0) result = result * evaluate_connected(piece);
  }
  return result;
}

HomflyPolynomial HomflyEvaluator::evaluate_connected(const LinkDiagram& d) {
  auto key = d.canonical_code();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::vector<char> seen_edge(d.edge_count());
  std::vector<char> seen_cross(d.crossing_count());
  Plan best;
  for (std::size_t e = 0; e < d.edge_count(); ++e) {
    const Plan plan = plan_from(d, static_cast<int>(e), seen_edge, seen_cross);
    if (e == 0 || plan.bad < best.bad) best = plan;
    if (best.bad == 0) break;
  }

  HomflyPolynomial result;
  if (best.bad == 0) {
    result = HomflyPolynomial::delta().pow(static_cast<unsigned>(best.components - 1));
  } else {
    const auto c = static_cast<std::size_t>(best.first_bad);
    const HomflyPolynomial sw = evaluate(d.switched(c));
    const HomflyPolynomial sm = evaluate(d.smoothed(c));
    if (d.crossings()[c].sign > 0) {
      // P(L+) = a^-2 P(L-) + a^-1 z P(L0)
      result = sw.shifted(1, -2, 0) + sm.shifted(1, -1, 1);
    } else {
      // P(L-) = a^2 P(L+) - a z P(L0)
      result = sw.shifted(1, 2, 0) - sm.shifted(1, 1, 1);
    }
  }
  if (cache_.size() >= cache_limit_) cache_.clear();
  cache_.emplace(std::move(key), result);
  return result;
}

HomflyPolynomial homfly(const LinkDiagram& dgm) {
  LinkDiagram reduced = dgm;
  reduced.simplify();
  if (reduced.crossing_count() > crossing_cap) {
    throw CrossingCapExceeded(std::to_string(reduced.crossing_count()) + " crossings exceed the cap of " +
                              std::to_string(crossing_cap));
  }
  thread_local HomflyEvaluator evaluator;
  return evaluator.evaluate(std::move(reduced));
}

HomflyPolynomial homfly(const PlanarDiagram& dgm) {
  if (dgm.link().component_count() != 1) throw Error("homfly expects a one-component diagram");
  return homfly(dgm.link());
}

}  // namespace sticks
