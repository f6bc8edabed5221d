// Acceptance checks. `acceptance [N ...]` runs the listed criteria (all by
// default) and prints one PASS/FAIL line for each; the exit status is nonzero
// if any of them fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <unistd.h>

#include "homfly_oracle.hpp"
#include "sticks/errors.hpp"
#include "sticks/records.hpp"
#include "sticks/refinement.hpp"
#include "test_support.hpp"

using namespace sticks;
namespace fs = std::filesystem;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::size_t chains = 8;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Classification identify(const Polygon& p) {
  Rng rng(0, 0);
  return classify_polygon(p, testing::bundled_table(), rng);
}

// Classifies `count` samples spread over a fixed number of chains.
FrequencyTable sample_run(std::size_t n, double radius, std::uint64_t count, std::uint64_t seed) {
  SamplerConfig config;
  config.seed = seed;
  std::vector<FrequencyTable> tables(chains);
  std::vector<Rng> rngs;
  for (std::size_t k = 0; k < chains; ++k) rngs.emplace_back(seed ^ 0x9e3779b97f4a7c15ull, k);
  sample_polygons(n, radius, count, config, chains, [&](std::size_t chain, const Polygon& p) {
    tables[chain].add(classify_polygon(p, testing::bundled_table(), rngs[chain]));
  });
  FrequencyTable total;
  for (const auto& t : tables) total.merge(t);
  return total;
}

std::uint64_t nontrivial(const FrequencyTable& t) { return t.total() - t.count("unknot"); }

std::uint64_t prime_count_with_crossings(const FrequencyTable& t, int crossings) {
  std::uint64_t sum = 0;
  for (const auto& [key, count] : t.counts()) {
    const TableEntry* e = testing::bundled_table().find(key);
    if (e != nullptr && e->crossings == crossings) sum += count;
  }
  return sum;
}

Verdict fixture_identification() {
  const auto t0 = std::chrono::steady_clock::now();
  int ok = 0;
  int total = 0;
  double worst = -1e9;
  std::string failures;
  for (const auto& [name, p] : testing::all_fixtures()) {
    ++total;
    const Certificate c = certify(p);
    worst = std::max(worst, c.margin_exponent);
    const std::string got = identify(p).label();
    if (c.passed && c.margin_exponent <= -2.69 && got == name) {
      ++ok;
    } else {
      failures += " " + name + "->" + got;
    }
  }
  const double dt = seconds_since(t0);
  return {ok == total && total > 0 && dt < 120.0,
          format("%d/%d fixtures certified and identified, worst margin exponent %.2f, %.1f s%s", ok, total, worst,
                 dt, failures.c_str())};
}

Verdict unconfined_decagons() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrequencyTable t = sample_run(10, inf, 1000000, 2024);
  const double pct = 100.0 * static_cast<double>(nontrivial(t)) / static_cast<double>(t.total());
  const double dt = seconds_since(t0);
  return {std::abs(pct - 0.63) <= 0.10 && dt <= 1800.0,
          format("nontrivial %.3f%% of %llu (target 0.63 +- 0.10), %.0f s", pct,
                 static_cast<unsigned long long>(t.total()), dt)};
}

const FrequencyTable& confined_run() {
  static const FrequencyTable t = sample_run(10, 1.01, 200000, 101);
  return t;
}

Verdict confined_decagons() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrequencyTable& t = confined_run();
  const double pct = 100.0 * static_cast<double>(nontrivial(t)) / static_cast<double>(t.total());
  const double dt = seconds_since(t0);
  return {std::abs(pct - 7.1) <= 0.6 && dt <= 1800.0,
          format("nontrivial %.3f%% of %llu at R=1.01 (target 7.1 +- 0.6), %.0f s", pct,
                 static_cast<unsigned long long>(t.total()), dt)};
}

Verdict confined_trefoils() {
  const FrequencyTable& t = confined_run();
  const double pct = 100.0 * static_cast<double>(t.count("3_1")) / static_cast<double>(t.total());
  return {std::abs(pct - 6.09) <= 0.6, format("3_1 %.3f%% of %llu at R=1.01 (target 6.09 +- 0.6)", pct,
                                              static_cast<unsigned long long>(t.total()))};
}

Verdict hexagons() {
  const auto t0 = std::chrono::steady_clock::now();
  const FrequencyTable t = sample_run(6, inf, 5000000, 6);
  const double frac = static_cast<double>(nontrivial(t)) / static_cast<double>(t.total());
  const double dt = seconds_since(t0);
  return {frac >= 0.6e-4 && frac <= 1.5e-4 && dt <= 1800.0,
          format("knotted %llu of %llu = %.3g (target [0.6e-4, 1.5e-4]), %.0f s",
                 static_cast<unsigned long long>(nontrivial(t)), static_cast<unsigned long long>(t.total()), frac, dt)};
}

Verdict crossing_inversion() {
  const FrequencyTable t = sample_run(10, 1.01, 1000000, 101);
  const std::uint64_t seven = prime_count_with_crossings(t, 7);
  const std::uint64_t eight = prime_count_with_crossings(t, 8);
  return {t.total() >= 1000000 && eight > seven,
          format("8-crossing primes %llu vs 7-crossing primes %llu in %llu samples at R=1.01",
                 static_cast<unsigned long long>(eight), static_cast<unsigned long long>(seven),
                 static_cast<unsigned long long>(t.total()))};
}

Verdict homfly_oracle() {
  SamplerConfig config;
  config.seed = 909;
  PolygonChain chain(9, 1.01, config);
  Rng rng(5);
  HomflyEvaluator raw(1u << 20, false);
  int compared = 0;
  int mismatched = 0;
  for (int k = 0; k < 500; ++k) {
    const Polygon p = chain.next();
    std::vector<PlanarDiagram> diagrams{project(p, {0, 0, 1})};
    diagrams.push_back(generic_projection(p, rng, 8).diagram);
    diagrams.push_back(simplify(diagrams[0]));
    diagrams.push_back(simplify(diagrams[1]));
    for (const auto& d : diagrams) {
      if (d.crossing_count() > 8) continue;
      const auto expected = testing::oracle_homfly(testing::to_oracle(d.link()));
      ++compared;
      if (testing::as_poly(homfly(d)) != expected || testing::as_poly(raw.evaluate(d.link())) != expected) {
        ++mismatched;
      }
    }
  }
  return {mismatched == 0 && compared > 0,
          format("%d diagrams with at most 8 crossings from 500 confined 9-gons, %d mismatches", compared,
                 mismatched)};
}

Verdict sampler_feasibility() {
  SamplerConfig config;
  config.seed = 88;
  const MomentPolytope poly(10, 1.01);
  ChainState state = initial_state(poly, Rng(config.seed));
  int infeasible = 0;
  double worst_edge = 0.0;
  for (int k = 0; k < 100000; ++k) {
    tsmcmc_step(poly, state, config);
    if (!poly.contains(state.coords.diagonals)) ++infeasible;
    try {
      for (double l : edge_lengths(reconstruct(state.coords))) worst_edge = std::max(worst_edge, std::abs(l - 1.0));
    } catch (const DegenerateDiagonal&) {
    }
  }
  return {infeasible == 0 && worst_edge <= 1e-10,
          format("100000 states, %d outside the polytope, worst edge deviation %.2e", infeasible, worst_edge)};
}

Verdict round_trip() {
  Rng rng(99);
  double worst = 0.0;
  int points = 0;
  for (std::size_t n = 6; n <= 12; ++n) {
    const MomentPolytope poly(n);
    for (int k = 0; k < 1000; ++k) {
      const ActionAngle aa = testing::random_interior_point(poly, rng);
      const ActionAngle back = extract(reconstruct(aa));
      worst = std::max(worst, testing::max_abs_diff(back.diagonals, aa.diagonals));
      for (std::size_t i = 0; i < aa.angles.size(); ++i) {
        worst = std::max(worst, std::abs(wrap_angle(back.angles[i] - aa.angles[i])));
      }
      ++points;
    }
  }
  return {worst <= 1e-9, format("%d points for n = 6..12, worst coordinate error %.2e", points, worst)};
}

Verdict record_logic() {
  const fs::path root = fs::temp_directory_path() / ("sticks-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  RecordStore store = RecordStore::seed(root, testing::data_dir() / "records_seed.tsv");
  auto replay = [&](const Polygon& p) {
    const Classification c = identify(p);
    const TableEntry* e = testing::bundled_table().find(c.names.at(0));
    return store.update(e->name, e->crossings, static_cast<int>(p.size()), p, certify(p));
  };
  const UpdateResult r935 = replay(testing::fixture("9_35"));
  const KnotRecord* row = store.find("9_35");
  const bool exact = row != nullptr && row->exact && row->eqstick_upper == 9;

  SamplerConfig config;
  config.seed = 5;
  PolygonChain chain(12, 1.01, config);
  Polygon trefoil;
  do {
    trefoil = chain.next();
  } while (identify(trefoil).label() != "3_1" || !certify(trefoil).passed);
  const UpdateResult r31 = replay(trefoil);
  const bool reopened = RecordStore::open(root).report() == store.report();
  fs::remove_all(root);
  return {r935 == UpdateResult::Improved && exact && r31 == UpdateResult::NoChange && reopened,
          format("9_35 with 9 sticks: %s, exact=%s; 3_1 with 12 sticks: %s", to_string(r935),
                 exact ? "true" : "false", to_string(r31))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Verdict()>>> criteria{
      {1, {"fixture identification", fixture_identification}},
      {2, {"unconfined 10-gon knotting fraction", unconfined_decagons}},
      {3, {"confined 10-gon knotting fraction", confined_decagons}},
      {4, {"confined 10-gon trefoil fraction", confined_trefoils}},
      {5, {"hexagon knot probability", hexagons}},
      {6, {"7- and 8-crossing inversion", crossing_inversion}},
      {7, {"HOMFLY oracle equivalence", homfly_oracle}},
      {8, {"sampler feasibility", sampler_feasibility}},
      {9, {"action-angle round trip", round_trip}},
      {10, {"record logic", record_logic}},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [k, c] : criteria) selected.push_back(k);
  }
  int failed = 0;
  for (int k : selected) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    Verdict v;
    try {
      v = it->second.second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] criterion %d, %s: %s\n", v.pass ? "PASS" : "FAIL", k, it->second.first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
