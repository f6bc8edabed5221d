#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sticks/link_diagram.hpp"

namespace sticks {

using Permutation = std::vector<std::uint8_t>;

/// Conjugacy class of `element` inside the permutation group generated by
/// `generators`, with conjugation precomputed as a table on class indices.
class ConjugacyClass {
 public:
  ConjugacyClass(std::string label, const std::vector<Permutation>& generators, const Permutation& element);

  const std::string& label() const { return label_; }
  std::size_t size() const { return members_.size(); }
  /// Index of members[by]^-1 * members[x] * members[by].
  std::uint16_t conjugate(std::size_t x, std::size_t by) const { return conj_[by * size() + x]; }
  /// Index of members[by] * members[x] * members[by]^-1.
  std::uint16_t conjugate_inverse(std::size_t x, std::size_t by) const { return conj_inv_[by * size() + x]; }

 private:
  std::string label_;
  std::vector<Permutation> members_;
  std::vector<std::uint16_t> conj_;
  std::vector<std::uint16_t> conj_inv_;
};

/// Number of homomorphisms from the knot group (Wirtinger presentation of a
/// one-component diagram) to the ambient group that send every meridian into
/// the class. Mirror images give equal counts.
std::uint64_t count_representations(const LinkDiagram& knot, const ConjugacyClass& cls);

/// Classes used to separate knots sharing a HOMFLY polynomial.
const std::vector<ConjugacyClass>& separating_classes();

/// Representation counts over separating_classes(), in order.
std::vector<std::uint64_t> representation_profile(const LinkDiagram& knot);

}  // namespace sticks
