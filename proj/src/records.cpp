#include "sticks/records.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "sticks/errors.hpp"

namespace sticks {

namespace fs = std::filesystem;

namespace {

const char* const records_file = "records.tsv";
const char* const manifest_file = "MANIFEST.sha256";
const char* const records_header = "name\tcrossings\tstick_lower\teqstick_upper\texact\tcoords_path\tprovenance";

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes `path` durably via a temporary and a rename.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) throw Error("cannot write " + tmp.string());
  const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size() && std::fflush(f) == 0 &&
                  ::fsync(fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error("failed writing " + tmp.string());
  fs::rename(tmp, path);
}

void write_file_synced(const fs::path& path, const std::string& content) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("cannot write " + path.string());
  const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size() && std::fflush(f) == 0 &&
                  ::fsync(fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error("failed writing " + path.string());
}

// Manifest lines follow sha256sum: "<hex>  <relative path>".
bool manifest_matches(const fs::path& root, const std::string& manifest) {
  std::istringstream in(manifest);
  std::string line;
  bool saw_records = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t sep = line.find("  ");
    if (sep != 64) return false;
    const std::string rel = line.substr(sep + 2);
    const auto content = read_file(root / rel);
    if (!content || sha256_hex(*content) != line.substr(0, sep)) return false;
    saw_records = saw_records || rel == records_file;
  }
  return saw_records;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return fields;
}

int parse_int_field(const std::string& text, std::size_t line, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, std::string("bad ") + what + " '" + text + "'");
}

std::tuple<int, int, int> name_key(const std::string& name) {
  const std::size_t us = name.find('_');
  if (us == std::string::npos) return {1 << 20, 0, 0};
  std::string head = name.substr(0, us);
  int family = 0;
  if (!head.empty() && (head.back() == 'a' || head.back() == 'n')) {
    family = head.back() == 'a' ? 1 : 2;
    head.pop_back();
  }
  try {
    return {std::stoi(head), family, std::stoi(name.substr(us + 1))};
  } catch (const std::logic_error&) {
    return {1 << 20, 0, 0};
  }
}

const std::set<std::string>& at_most_eight_sticks() {
  static const std::set<std::string> names = {"0_1", "3_1", "4_1", "5_1", "5_2", "6_1",
                                               "6_2", "6_3", "8_19", "8_20", "3_1#3_1", "3_1#3_1*"};
  return names;
}

}  // namespace

int stick_lower_bound(int crossings) {
  if (crossings < 3) return 3;
  const int disc = 8 * crossings + 1;
  int root = static_cast<int>(std::sqrt(static_cast<double>(disc)));
  while (root * root > disc) --root;
  while ((root + 1) * (root + 1) <= disc) ++root;
  // ceil((7 + sqrt(disc)) / 2) with the square root rounded up when inexact.
  const int up = root * root == disc ? root : root + 1;
  return (7 + up + 1) / 2;
}

int knot_stick_lower_bound(const std::string& name, int crossings) {
  const int formula = stick_lower_bound(crossings);
  return at_most_eight_sticks().contains(name) ? formula : std::max(formula, 9);
}

int superbridge_upper(int sticks) { return sticks / 2; }

const char* to_string(UpdateResult r) {
  switch (r) {
    case UpdateResult::Improved:
      return "Improved";
    case UpdateResult::Matched:
      return "Matched";
    case UpdateResult::NoChange:
      break;
  }
  return "NoChange";
}

bool knot_name_less(const std::string& a, const std::string& b) {
  const auto ka = name_key(a);
  const auto kb = name_key(b);
  return ka != kb ? ka < kb : a < b;
}

std::vector<KnotRecord> parse_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != records_header) throw ParseError(1, "missing records header");
  std::vector<KnotRecord> out;
  std::set<std::string> names;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 tab-separated fields");
    KnotRecord r;
    r.name = f[0];
    r.crossings = parse_int_field(f[1], line_no, "crossing number");
    r.stick_lower = parse_int_field(f[2], line_no, "stick lower bound");
    if (!f[3].empty()) r.eqstick_upper = parse_int_field(f[3], line_no, "equilateral stick bound");
    if (f[4] != "true" && f[4] != "false") throw ParseError(line_no, "exact must be true or false");
    r.exact = f[4] == "true";
    r.coords_path = f[5];
    r.provenance = f[6];
    if (r.exact && r.eqstick_upper != r.stick_lower) throw ParseError(line_no, "exact row with differing bounds");
    if (r.eqstick_upper && *r.eqstick_upper < r.stick_lower) throw ParseError(line_no, "upper bound below lower bound");
    if (!names.insert(r.name).second) throw DuplicateName("line " + std::to_string(line_no) + ": duplicate " + r.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_records(const std::vector<KnotRecord>& records) {
  std::ostringstream out;
  out << records_header << '\n';
  for (const auto& r : records) {
    out << r.name << '\t' << r.crossings << '\t' << r.stick_lower << '\t';
    if (r.eqstick_upper) out << *r.eqstick_upper;
    out << '\t' << (r.exact ? "true" : "false") << '\t' << r.coords_path << '\t' << r.provenance << '\n';
  }
  return out.str();
}

RecordStore RecordStore::seed(const fs::path& root, const fs::path& seed_file) {
  if (fs::exists(root / records_file) || fs::exists(root / manifest_file)) {
    throw Error("a record store already exists at " + root.string());
  }
  std::ifstream in(seed_file);
  if (!in) throw Error("cannot open " + seed_file.string());
  RecordStore store(root);
  store.records_ = parse_records(in);
  std::sort(store.records_.begin(), store.records_.end(),
            [](const KnotRecord& a, const KnotRecord& b) { return knot_name_less(a.name, b.name); });
  fs::create_directories(root / "coords");
  store.save(store.records_);
  return store;
}

RecordStore RecordStore::open(const fs::path& root) {
  const auto manifest = read_file(root / manifest_file);
  const fs::path pending = root / (std::string(manifest_file) + ".tmp");
  if (!manifest || !manifest_matches(root, *manifest)) {
    const auto next = read_file(pending);
    if (!next || !manifest_matches(root, *next)) throw StoreCorrupt("checksum mismatch in " + root.string());
    fs::rename(pending, root / manifest_file);
  }
  std::error_code ec;
  fs::remove(pending, ec);
  fs::remove(root / (std::string(records_file) + ".tmp"), ec);

  std::ifstream in(root / records_file);
  RecordStore store(root);
  store.records_ = parse_records(in);
  return store;
}

const KnotRecord* RecordStore::find(const std::string& name) const {
  for (const auto& r : records_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

void RecordStore::save(const std::vector<KnotRecord>& records,
                       const std::vector<std::pair<std::string, std::string>>& new_files) const {
  for (const auto& [rel, content] : new_files) write_file_atomic(root_ / rel, content);

  const std::string table = format_records(records);
  std::ostringstream manifest;
  manifest << sha256_hex(table) << "  " << records_file << '\n';
  std::set<std::string> referenced;
  for (const auto& r : records) {
    if (r.coords_path.empty() || !referenced.insert(r.coords_path).second) continue;
    const auto content = read_file(root_ / r.coords_path);
    if (!content) throw StoreCorrupt("missing coordinate file " + r.coords_path);
    manifest << sha256_hex(*content) << "  " << r.coords_path << '\n';
  }

  // The manifest rename is the commit point; open() rolls forward a pending
  // manifest that already matches the new records file.
  const fs::path pending = root_ / (std::string(manifest_file) + ".tmp");
  write_file_synced(pending, manifest.str());
  write_file_atomic(root_ / records_file, table);
  fs::rename(pending, root_ / manifest_file);

  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_ / "coords", ec)) {
    const std::string rel = "coords/" + entry.path().filename().string();
    if (!referenced.contains(rel)) fs::remove(entry.path(), ec);
  }
}

UpdateResult RecordStore::update(const std::string& name, int crossings, int n_sticks, const Polygon& coords,
                                 const Certificate& cert) {
  if (!cert.passed) throw UncertifiedConformation(name + ": conformation does not pass the edge-length test");
  std::ostringstream text;
  write_coordinates(text, coords);
  const std::string content = text.str();
  const std::string rel = "coords/" + name + "-" + std::to_string(n_sticks) + "-" + sha256_hex(content).substr(0, 12) + ".txt";

  // Edits go to a copy so a failed save leaves this object unchanged.
  std::vector<KnotRecord> next = records_;
  auto it = std::find_if(next.begin(), next.end(), [&](const KnotRecord& r) { return r.name == name; });
  if (it == next.end()) {
    KnotRecord r;
    r.name = name;
    r.crossings = crossings;
    r.stick_lower = knot_stick_lower_bound(name, crossings);
    next.push_back(std::move(r));
    std::sort(next.begin(), next.end(),
              [](const KnotRecord& a, const KnotRecord& b) { return knot_name_less(a.name, b.name); });
    it = std::find_if(next.begin(), next.end(), [&](const KnotRecord& r) { return r.name == name; });
  }

  KnotRecord& r = *it;
  UpdateResult result = UpdateResult::NoChange;
  if (!r.eqstick_upper || n_sticks < *r.eqstick_upper) {
    r.eqstick_upper = n_sticks;
    r.exact = n_sticks == r.stick_lower;
    r.coords_path = rel;
    r.provenance = "observed";
    result = UpdateResult::Improved;
  } else if (n_sticks == *r.eqstick_upper) {
    bool better = r.coords_path.empty();
    if (!better) {
      try {
        better = cert.mu > min_nonadjacent_distance(read_coordinates(root_ / r.coords_path));
      } catch (const Error&) {
        better = true;
      }
    }
    if (!better) return UpdateResult::Matched;
    r.coords_path = rel;
    result = UpdateResult::Matched;
  } else {
    return UpdateResult::NoChange;
  }
  save(next, {{rel, content}});
  records_ = std::move(next);
  return result;
}

std::string RecordStore::report() const {
  std::vector<const KnotRecord*> rows;
  for (const auto& r : records_) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const KnotRecord* a, const KnotRecord* b) {
    return a->crossings != b->crossings ? a->crossings < b->crossings : knot_name_less(a->name, b->name);
  });
  std::ostringstream out;
  out << "name\tcrossings\tstick_lower\teqstick_upper\texact\tsuperbridge_upper\tprovenance\n";
  for (const auto* r : rows) {
    out << r->name << '\t' << r->crossings << '\t' << r->stick_lower << '\t';
    if (r->eqstick_upper) out << *r->eqstick_upper;
    out << '\t' << (r->exact ? "true" : "false") << '\t';
    if (r->eqstick_upper) out << superbridge_upper(*r->eqstick_upper);
    out << '\t' << r->provenance << '\n';
  }
  return out.str();
}

std::string FrequencyTable::key_for(const Classification& c) {
  switch (c.outcome) {
    case Classification::Outcome::Unknot:
      return "unknot";
    case Classification::Outcome::Identified:
      return c.names.front();
    case Classification::Outcome::Ambiguous:
      return "ambiguous";
    case Classification::Outcome::Unknown:
      break;
  }
  return "unknown";
}

void FrequencyTable::add(const Classification& c, std::uint64_t times) {
  counts_[key_for(c)] += times;
  total_ += times;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
  total_ += other.total_;
}

std::uint64_t FrequencyTable::count(const std::string& key) const {
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

std::string FrequencyTable::to_tsv() const {
  std::ostringstream out;
  for (const auto& [key, value] : metadata_) out << "# " << key << '=' << value << '\n';
  out << "key\tcount\n";
  for (const char* special : {"unknot", "ambiguous", "unknown"}) out << special << '\t' << count(special) << '\n';
  std::vector<std::string> names;
  for (const auto& [key, n] : counts_) {
    if (key != "unknot" && key != "ambiguous" && key != "unknown") names.push_back(key);
  }
  std::sort(names.begin(), names.end(), knot_name_less);
  for (const auto& name : names) out << name << '\t' << counts_.at(name) << '\n';
  return out.str();
}

}  // namespace sticks
