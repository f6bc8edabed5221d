#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sticks/classify.hpp"
#include "sticks/polygon.hpp"
#include "sticks/refinement.hpp"

namespace sticks {

/// ceil((7 + sqrt(8c + 1)) / 2) for c >= 3.
int stick_lower_bound(int crossings);

/// Lower bound for a named prime knot: the formula, raised to 9 for knots
/// outside the short list realizable with at most 8 sticks.
int knot_stick_lower_bound(const std::string& name, int crossings);

/// Superbridge bound sb(K) <= stick(K) / 2.
int superbridge_upper(int sticks);

struct KnotRecord {
  std::string name;
  int crossings = 0;
  int stick_lower = 0;
  std::optional<int> eqstick_upper;
  bool exact = false;
  std::string coords_path;  // relative to the store root, empty if none
  std::string provenance;
};

enum class UpdateResult { Improved, Matched, NoChange };
const char* to_string(UpdateResult r);

/// Directory store: records.tsv, coords/ and a SHA-256 manifest. Every save
/// writes temporaries and renames the manifest last; a save interrupted after
/// records.tsv was replaced is rolled forward on the next open.
class RecordStore {
 public:
  /// Creates a store at `root` from a records TSV. Throws Error if `root`
  /// already holds a store.
  static RecordStore seed(const std::filesystem::path& root, const std::filesystem::path& seed_file);
  /// Opens an existing store. Throws StoreCorrupt on checksum mismatch.
  static RecordStore open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<KnotRecord>& records() const { return records_; }
  const KnotRecord* find(const std::string& name) const;

  /// Applies a certified observation of `name` with `n_sticks` sticks and
  /// persists the result. Throws UncertifiedConformation if !cert.passed.
  UpdateResult update(const std::string& name, int crossings, int n_sticks, const Polygon& coords,
                      const Certificate& cert);

  /// TSV sorted by (crossings, name): name, crossings, stick_lower,
  /// eqstick_upper, exact, superbridge_upper, provenance.
  std::string report() const;

 private:
  explicit RecordStore(std::filesystem::path root) : root_(std::move(root)) {}
  void save(const std::vector<KnotRecord>& records,
            const std::vector<std::pair<std::string, std::string>>& new_files = {}) const;

  std::filesystem::path root_;
  std::vector<KnotRecord> records_;
};

std::vector<KnotRecord> parse_records(std::istream& in);
std::string format_records(const std::vector<KnotRecord>& records);

/// Orders knot names by crossing number, then alternating before
/// non-alternating, then index.
bool knot_name_less(const std::string& a, const std::string& b);

/// Classification counts for one sampling run.
class FrequencyTable {
 public:
  void set_metadata(const std::string& key, const std::string& value) { metadata_.emplace_back(key, value); }
  void add(const Classification& c, std::uint64_t times = 1);
  void merge(const FrequencyTable& other);

  std::uint64_t total() const { return total_; }
  std::uint64_t count(const std::string& key) const;
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }

  /// `#key=value` metadata lines, then `key<TAB>count` rows: unknot,
  /// ambiguous, unknown, then knot names in knot order.
  std::string to_tsv() const;

  static std::string key_for(const Classification& c);

 private:
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace sticks
