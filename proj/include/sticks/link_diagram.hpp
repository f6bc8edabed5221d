#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sticks {

/// One crossing of an oriented link diagram. Slots hold edge ids in
/// counterclockwise order starting from the incoming under-edge, so slot 0 is
/// under-in and slot 2 is under-out. A positive crossing has the over strand
/// running slot 3 -> slot 1, a negative one slot 1 -> slot 3.
struct LinkCrossing {
  std::array<int, 4> slots{};
  int sign = 1;
  int tag = -1;  // caller-owned id carried through simplification

  int under_in() const { return slots[0]; }
  int under_out() const { return slots[2]; }
  int over_in() const { return sign > 0 ? slots[3] : slots[1]; }
  int over_out() const { return sign > 0 ? slots[1] : slots[3]; }
};

/// Oriented link diagram on the sphere. Every edge joins an out-slot of one
/// crossing to an in-slot of another (possibly the same) crossing; closed
/// components without crossings are counted in free_loops.
class LinkDiagram {
 public:
  LinkDiagram() = default;
  LinkDiagram(std::vector<LinkCrossing> crossings, int free_loops);

  /// Knot PD code with arcs 1..2c labelled consecutively along the orientation;
  /// signs are inferred from which over-arc follows the other.
  static LinkDiagram from_knot_pd(std::span<const std::array<int, 4>> pd);

  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t edge_count() const { return 2 * crossings_.size(); }
  int free_loops() const { return free_loops_; }

  /// Edge carrying the diagram's basepoint; tracked through switches and
  /// simplification for as long as it survives.
  int base_edge() const { return base_edge_; }
  void set_base_edge(int edge) { base_edge_ = edge; }
  const std::vector<LinkCrossing>& crossings() const { return crossings_; }

  /// Where an edge ends: crossing index and whether it arrives on the over strand.
  struct EdgeEnd {
    int crossing = -1;
    bool over = false;
  };
  EdgeEnd head(int edge) const { return heads_[static_cast<std::size_t>(edge)]; }
  EdgeEnd tail(int edge) const { return tails_[static_cast<std::size_t>(edge)]; }

  /// Edge following `edge` through its head crossing.
  int next_edge(int edge) const;

  /// Number of link components, including free loops.
  int component_count() const;

  LinkDiagram switched(std::size_t crossing) const;
  LinkDiagram smoothed(std::size_t crossing) const;
  LinkDiagram mirrored() const;

  /// Removes a Reidemeister I loop or a Reidemeister II bigon if one exists.
  bool reduce_once();
  /// Applies reduce_once until no move applies. Returns crossings removed.
  std::size_t simplify();

  /// Splits into connected pieces (each free loop is a piece of its own).
  std::vector<LinkDiagram> split() const;
  bool is_connected() const;

  /// Signed Gauss-style code, minimal over all starting edges. Equal codes
  /// imply isotopic diagrams on the sphere. Requires a connected diagram.
  std::vector<std::int16_t> canonical_code() const;

  /// Knot PD code (arcs 1..2c) starting from the given edge. Single component only.
  std::vector<std::array<int, 4>> knot_pd(int start_edge = 0) const;

 private:
  // Removes `drop` crossings after joining the listed edge pairs; edges in
  // classes untouched by surviving crossings become free loops.
  LinkDiagram rebuilt(std::span<const std::pair<int, int>> joins, std::span<const std::size_t> drop) const;
  void index_edges();
  std::vector<std::int16_t> code_from(int start_edge) const;

  std::vector<LinkCrossing> crossings_;
  std::vector<EdgeEnd> heads_;
  std::vector<EdgeEnd> tails_;
  int free_loops_ = 0;
  int base_edge_ = 0;
};

}  // namespace sticks
