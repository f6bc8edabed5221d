#include "sticks/classify.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "sticks/errors.hpp"
#include "sticks/representations.hpp"

namespace sticks {

namespace {

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

int parse_crossings(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const int c = std::stoi(text, &used);
    if (used == text.size() && c >= 0) return c;
  } catch (const std::logic_error&) {
  }
  throw ParseError(line, "bad crossing number '" + text + "'");
}

// Both chiralities map to the same key.
std::string polynomial_key(const HomflyPolynomial& p) {
  return std::min(p.to_string(), p.mirror().to_string());
}

}  // namespace

InvariantTable::InvariantTable(std::vector<TableEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!names.insert(entries_[i].name).second) throw DuplicateName("duplicate knot name " + entries_[i].name);
    by_polynomial_[polynomial_key(entries_[i].homfly)].push_back(i);
  }
}

const TableEntry* InvariantTable::find(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::size_t> InvariantTable::matches(const HomflyPolynomial& p) const {
  const auto it = by_polynomial_.find(polynomial_key(p));
  return it == by_polynomial_.end() ? std::vector<std::size_t>{} : it->second;
}

void InvariantTable::attach_reference_diagrams(const std::map<std::string, PdCode>& diagrams) {
  for (const auto& [key, group] : by_polynomial_) {
    if (group.size() < 2) continue;
    for (std::size_t i : group) {
      const auto it = diagrams.find(entries_[i].name);
      if (it == diagrams.end()) continue;
      entries_[i].profile = representation_profile(diagram_from_pd(it->second).link());
    }
  }
}

InvariantTable load_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty invariant table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "name\tcrossings\thomfly") throw ParseError(1, "expected header 'name<TAB>crossings<TAB>homfly'");
  std::vector<TableEntry> entries;
  std::set<std::string> names;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 tab-separated fields");
    if (fields[0].empty()) throw ParseError(line_no, "empty knot name");
    TableEntry e;
    e.name = fields[0];
    e.crossings = parse_crossings(fields[1], line_no);
    try {
      e.homfly = HomflyPolynomial::parse(fields[2]);
    } catch (const ParseError& err) {
      throw ParseError(line_no, err.what());
    }
    if (!names.insert(e.name).second) throw DuplicateName("line " + std::to_string(line_no) + ": duplicate knot name " + e.name);
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw ParseError(line_no, "invariant table has no entries");
  return InvariantTable(std::move(entries));
}

InvariantTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return load_table(in);
}

std::map<std::string, PdCode> load_reference_diagrams(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::map<std::string, PdCode> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 3) throw ParseError(line_no, "expected name, crossings and PD code");
    try {
      out[fields[0]] = parse_code(fields[2]);
    } catch (const ParseError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return out;
}

InvariantTable load_bundled_table(const std::filesystem::path& data_dir) {
  InvariantTable table = load_table(data_dir / "knot_table.tsv");
  table.attach_reference_diagrams(load_reference_diagrams(data_dir / "knot_pd.tsv"));
  return table;
}

std::string Classification::label() const {
  switch (outcome) {
    case Outcome::Unknot:
      return "unknot";
    case Outcome::Identified:
      return names.front();
    case Outcome::Ambiguous: {
      std::string out = "ambiguous:";
      for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "|" : "") + names[i];
      return out;
    }
    case Outcome::Unknown:
      break;
  }
  return "unknown";
}

Classification classify(const PlanarDiagram& dgm, const InvariantTable& table) {
  Classification result;
  result.observed_crossings = dgm.crossing_count();
  if (result.observed_crossings <= 2) {
    result.outcome = Classification::Outcome::Unknot;
    result.homfly = HomflyPolynomial::one();
    return result;
  }
  try {
    result.homfly = homfly(dgm);
  } catch (const CrossingCapExceeded&) {
    result.cap_exceeded = true;
    return result;
  }
  std::vector<const TableEntry*> survivors;
  for (std::size_t i : table.matches(result.homfly)) {
    const auto& e = table.entries()[i];
    if (static_cast<std::size_t>(e.crossings) <= result.observed_crossings) survivors.push_back(&e);
  }
  const bool profiled = survivors.size() > 1 && std::all_of(survivors.begin(), survivors.end(), [](const TableEntry* e) {
                          return !e->profile.empty();
                        });
  if (profiled) {
    const auto& classes = separating_classes();
    for (std::size_t k = 0; k < classes.size() && survivors.size() > 1; ++k) {
      const std::uint64_t observed = count_representations(dgm.link(), classes[k]);
      std::erase_if(survivors, [&](const TableEntry* e) { return e->profile[k] != observed; });
    }
  }
  for (const auto* e : survivors) result.names.push_back(e->name);
  std::sort(result.names.begin(), result.names.end());
  if (survivors.size() == 1) {
    result.outcome = result.names.front() == "0_1" ? Classification::Outcome::Unknot
                                                   : Classification::Outcome::Identified;
    if (result.outcome == Classification::Outcome::Unknot) result.names.clear();
  } else if (survivors.size() > 1) {
    result.outcome = Classification::Outcome::Ambiguous;
  } else if (result.homfly.is_one()) {
    result.outcome = Classification::Outcome::Unknot;
  }
  return result;
}

Classification classify_polygon(const Polygon& p, const InvariantTable& table, Rng& rng, int max_tries) {
  const Projection proj = generic_projection(p, rng, max_tries);
  return classify(simplify(proj.diagram), table);
}

}  // namespace sticks
