#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sticks/diagram.hpp"
#include "sticks/link_diagram.hpp"

namespace sticks {

/// Laurent polynomial in a and z with integer coefficients. Knot polynomials
/// only use nonnegative z exponents; link values met during skein recursion
/// may carry negative ones.
class HomflyPolynomial {
 public:
  struct Term {
    int a = 0;
    int z = 0;
    std::int64_t coef = 0;
    bool operator==(const Term&) const = default;
  };

  HomflyPolynomial() = default;
  static HomflyPolynomial one() { return monomial(1, 0, 0); }
  static HomflyPolynomial monomial(std::int64_t coef, int a_exp, int z_exp);
  /// Value of the two-component unlink, (a - a^-1) / z.
  static HomflyPolynomial delta();

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0] == Term{0, 0, 1}; }

  HomflyPolynomial& operator+=(const HomflyPolynomial& other);
  HomflyPolynomial& operator-=(const HomflyPolynomial& other);
  friend HomflyPolynomial operator+(HomflyPolynomial x, const HomflyPolynomial& y) { return x += y; }
  friend HomflyPolynomial operator-(HomflyPolynomial x, const HomflyPolynomial& y) { return x -= y; }
  friend HomflyPolynomial operator*(const HomflyPolynomial& x, const HomflyPolynomial& y);
  HomflyPolynomial shifted(std::int64_t coef, int a_exp, int z_exp) const;
  HomflyPolynomial pow(unsigned k) const;
  bool operator==(const HomflyPolynomial&) const = default;

  /// Value for the mirror image: a -> a^-1, z -> -z. On knots only the
  /// a-exponents change since every z-exponent is even.
  HomflyPolynomial mirror() const;

  /// Terms `c*a^p*z^q` sorted by (p, q) and joined by '+'; zero renders as "0".
  std::string to_string() const;
  /// Inverse of to_string. Throws ParseError (line 1) on malformed text.
  static HomflyPolynomial parse(std::string_view text);

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Memoized skein evaluator. The cache holds values of connected diagrams
/// keyed by their canonical code and is cleared once it exceeds cache_limit
/// entries. With `reduce` off, Reidemeister reductions are never applied.
class HomflyEvaluator {
 public:
  explicit HomflyEvaluator(std::size_t cache_limit = 1u << 20, bool reduce = true)
      : cache_limit_(cache_limit), reduce_(reduce) {}

  HomflyPolynomial evaluate(LinkDiagram d);
  std::size_t cache_size() const { return cache_.size(); }
  void clear() { cache_.clear(); }

 private:
  HomflyPolynomial evaluate_connected(const LinkDiagram& d);

  struct CodeHash {
    std::size_t operator()(const std::vector<std::int16_t>& code) const noexcept;
  };
  std::unordered_map<std::vector<std::int16_t>, HomflyPolynomial, CodeHash> cache_;
  std::size_t cache_limit_;
  bool reduce_;
};

/// HOMFLY polynomial of a one-component diagram with the convention
/// a P(L+) - a^-1 P(L-) = z P(L0), P(unknot) = 1. Uses a per-thread cache.
/// Throws CrossingCapExceeded when the reduced diagram has more than
/// crossing_cap crossings.
HomflyPolynomial homfly(const PlanarDiagram& dgm);
HomflyPolynomial homfly(const LinkDiagram& dgm);

}  // namespace sticks
