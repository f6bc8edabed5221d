#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sticks/diagram.hpp"
#include "sticks/homfly.hpp"

namespace sticks {

struct TableEntry {
  std::string name;
  int crossings = 0;
  HomflyPolynomial homfly;
  /// Representation counts of a reference diagram; filled only for entries
  /// that share their polynomial (up to mirror) with another entry.
  std::vector<std::uint64_t> profile;
};

/// Prime knot table keyed by HOMFLY polynomial. Immutable once loaded.
class InvariantTable {
 public:
  InvariantTable() = default;
  explicit InvariantTable(std::vector<TableEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const std::vector<TableEntry>& entries() const { return entries_; }
  const TableEntry* find(const std::string& name) const;

  /// Indices of entries whose polynomial equals p or mirror(p).
  std::vector<std::size_t> matches(const HomflyPolynomial& p) const;

  /// Computes representation profiles from reference diagrams (name -> PD
  /// code) for every entry whose polynomial is shared with another entry.
  void attach_reference_diagrams(const std::map<std::string, PdCode>& diagrams);

 private:
  std::vector<TableEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_polynomial_;
};

/// Reads the `name<TAB>crossings<TAB>homfly` table. Throws ParseError (with
/// the 1-based line number) or DuplicateName.
InvariantTable load_table(std::istream& in);
InvariantTable load_table(const std::filesystem::path& path);

/// Reads `name<TAB>crossings<TAB>pd[<TAB>...]` rows into name -> PD code.
std::map<std::string, PdCode> load_reference_diagrams(const std::filesystem::path& path);

/// Bundled table with reference diagrams attached, read from `data_dir`.
InvariantTable load_bundled_table(const std::filesystem::path& data_dir);

struct Classification {
  enum class Outcome { Unknot, Identified, Ambiguous, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::vector<std::string> names;
  std::size_t observed_crossings = 0;
  bool cap_exceeded = false;
  HomflyPolynomial homfly;

  bool nontrivial() const { return outcome != Outcome::Unknot; }
  /// "unknot", the knot name, "ambiguous:a|b" or "unknown".
  std::string label() const;
  bool operator==(const Classification& other) const {
    return outcome == other.outcome && names == other.names;
  }
};

/// Identifies a simplified diagram. Diagrams with at most two crossings are
/// unknots; otherwise candidates share the HOMFLY polynomial up to mirror and
/// need no more crossings than observed. Remaining ties are split by
/// representation profiles when the table carries them.
Classification classify(const PlanarDiagram& dgm, const InvariantTable& table);

/// Projects along a generic direction, simplifies and classifies.
Classification classify_polygon(const Polygon& p, const InvariantTable& table, Rng& rng, int max_tries = 8);

}  // namespace sticks
