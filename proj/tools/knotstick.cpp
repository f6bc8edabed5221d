// Command-line front end: sampling, identification, certification, tightening
// and the record store.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>

#include "CLI11.hpp"
#include "sticks/classify.hpp"
#include "sticks/errors.hpp"
#include "sticks/records.hpp"
#include "sticks/refinement.hpp"
#include "sticks/sampler.hpp"

#ifndef STICKS_DATA_DIR
#define STICKS_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace sticks;

namespace {

constexpr int projection_tries = 8;

Classification identify(const Polygon& p, const InvariantTable& table) {
  Rng rng(0, 0);
  return classify_polygon(p, table, rng, projection_tries);
}

std::string format_radius(double r) {
  if (std::isinf(r)) return "inf";
  std::ostringstream s;
  s << r;
  return s.str();
}

int run_sample(const InvariantTable& table, std::size_t n, double radius, std::uint64_t count,
               const SamplerConfig& config, std::size_t chains, const std::string& out_path,
               const std::string& save_dir) {
  if (!save_dir.empty()) fs::create_directories(save_dir);
  std::vector<FrequencyTable> per_chain(std::max<std::size_t>(chains, 1));
  std::vector<std::uint64_t> index(per_chain.size(), 0);
  std::vector<Rng> rngs;
  for (std::size_t k = 0; k < per_chain.size(); ++k) rngs.emplace_back(config.seed ^ 0x9e3779b97f4a7c15ull, k);

  const SampleSummary summary = sample_polygons(n, radius, count, config, per_chain.size(),
                                                [&](std::size_t chain, const Polygon& p) {
    const Classification c = classify_polygon(p, table, rngs[chain], projection_tries);
    per_chain[chain].add(c);
    const std::uint64_t i = index[chain]++;
    if (!save_dir.empty() && c.nontrivial()) {
      const std::string key = FrequencyTable::key_for(c);
      write_coordinates(fs::path(save_dir) / (key + "-" + std::to_string(chain) + "-" + std::to_string(i) + ".txt"), p);
    }
  });

  FrequencyTable total;
  total.set_metadata("n", std::to_string(n));
  total.set_metadata("R", format_radius(radius));
  total.set_metadata("count", std::to_string(count));
  total.set_metadata("seed", std::to_string(config.seed));
  total.set_metadata("beta", std::to_string(config.beta));
  total.set_metadata("gamma", std::to_string(config.gamma));
  total.set_metadata("burnin", std::to_string(config.burn_in_for(n)));
  total.set_metadata("thin", std::to_string(config.thin));
  total.set_metadata("chains", std::to_string(per_chain.size()));
  for (const auto& t : per_chain) total.merge(t);

  if (out_path.empty()) {
    std::cout << total.to_tsv();
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << total.to_tsv();
  }
  std::cerr << "sampled " << summary.emitted << " polygons (" << summary.degenerate_skips
            << " degenerate reconstructions skipped)\n";
  return 0;
}

int run_records_update(RecordStore& store, const InvariantTable& table, const std::vector<std::string>& files) {
  for (const auto& file : files) {
    const Polygon p = read_coordinates(fs::path(file));
    const Classification c = identify(p, table);
    if (c.outcome != Classification::Outcome::Identified) {
      std::cout << file << "\t" << c.label() << "\tskipped\n";
      continue;
    }
    const TableEntry* entry = table.find(c.names.front());
    const Certificate cert = certify(p);
    const UpdateResult r =
        store.update(c.names.front(), entry->crossings, static_cast<int>(p.size()), p, cert);
    std::cout << file << "\t" << c.names.front() << "\t" << to_string(r) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random stick knots: sampling, identification and record keeping"};
  app.require_subcommand(1);
  std::string data_dir = STICKS_DATA_DIR;
  app.add_option("--data", data_dir, "directory holding knot_table.tsv and knot_pd.tsv");

  auto* sample = app.add_subcommand("sample", "sample random equilateral polygons and tabulate knot types");
  std::size_t n = 0;
  double radius = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  SamplerConfig config;
  std::uint64_t burn_in = 0;
  std::size_t chains = 1;
  std::string out_path;
  std::string save_dir;
  sample->add_option("--n", n, "number of edges")->required()->check(CLI::Range(4, 250));
  sample->add_option("--radius", radius, "confinement radius about vertex 1 (inf for none)");
  sample->add_option("--count", count, "number of polygons")->required();
  sample->add_option("--seed", config.seed, "random seed")->required();
  sample->add_option("--beta", config.beta, "probability of a hit-and-run step")->check(CLI::Range(0.0, 1.0));
  sample->add_option("--gamma", config.gamma, "hit-and-run moves per step")->check(CLI::PositiveNumber);
  auto* burn_opt = sample->add_option("--burnin", burn_in, "burn-in steps (default 100 n)");
  sample->add_option("--thin", config.thin, "steps between emitted samples")->check(CLI::PositiveNumber);
  sample->add_option("--out", out_path, "frequency table path (default stdout)");
  sample->add_option("--save-nontrivial", save_dir, "directory for coordinates of nontrivial samples");
  sample->add_option("--chains", chains, "independent chains")->check(CLI::PositiveNumber);

  auto* identify_cmd = app.add_subcommand("identify", "print the knot type of coordinate files");
  std::vector<std::string> files;
  identify_cmd->add_option("files", files, "coordinate files")->required();

  auto* certify_cmd = app.add_subcommand("certify", "check the equilateral certificate of coordinate files");
  certify_cmd->add_option("files", files, "coordinate files")->required();

  auto* tighten_cmd = app.add_subcommand("tighten", "increase the minimum edge distance by crankshaft moves");
  std::string file;
  std::uint64_t iters = 0;
  std::uint64_t seed = 0;
  std::string tighten_out;
  tighten_cmd->add_option("file", file, "coordinate file")->required();
  tighten_cmd->add_option("--iters", iters, "proposals to try")->required();
  tighten_cmd->add_option("--seed", seed, "random seed")->required();
  tighten_cmd->add_option("--out", tighten_out, "output path (default stdout)");

  auto* records = app.add_subcommand("records", "best known equilateral stick numbers");
  records->require_subcommand(1);
  std::string store_path;
  std::string seed_file = std::string(STICKS_DATA_DIR) + "/records_seed.tsv";
  auto* rec_seed = records->add_subcommand("seed", "create a store from the seed table");
  rec_seed->add_option("--store", store_path, "store directory")->required();
  rec_seed->add_option("--from", seed_file, "seed table");
  auto* rec_update = records->add_subcommand("update", "replay certified coordinate files against the store");
  rec_update->add_option("--store", store_path, "store directory")->required();
  rec_update->add_option("files", files, "coordinate files")->required();
  auto* rec_report = records->add_subcommand("report", "print the record table");
  rec_report->add_option("--store", store_path, "store directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) {
      if (radius < 1.0) throw Error("radius must be at least 1");
      if (*burn_opt) config.burn_in = burn_in;
      const InvariantTable table = load_bundled_table(data_dir);
      return run_sample(table, n, radius, count, config, chains, out_path, save_dir);
    }
    if (*identify_cmd) {
      const InvariantTable table = load_bundled_table(data_dir);
      for (const auto& f : files) std::cout << identify(read_coordinates(fs::path(f)), table).label() << "\n";
      return 0;
    }
    if (*certify_cmd) {
      for (const auto& f : files) std::cout << certify(read_coordinates(fs::path(f))).to_tsv() << "\n";
      return 0;
    }
    if (*tighten_cmd) {
      const InvariantTable table = load_bundled_table(data_dir);
      const Polygon p = read_coordinates(fs::path(file));
      const Classification before = identify(p, table);
      if (before.outcome == Classification::Outcome::Unknown) throw Error(file + ": knot type is unknown");
      Rng rng(seed, 0);
      const Polygon q = tighten(p, iters, rng, [&](const Polygon& x) { return identify(x, table); });
      std::cerr << before.label() << ": mu " << min_nonadjacent_distance(p) << " -> " << min_nonadjacent_distance(q)
                << "\n";
      if (tighten_out.empty()) {
        write_coordinates(std::cout, q);
      } else {
        write_coordinates(fs::path(tighten_out), q);
      }
      return 0;
    }
    if (*rec_seed) {
      RecordStore::seed(store_path, seed_file);
      return 0;
    }
    if (*rec_update) {
      RecordStore store = RecordStore::open(store_path);
      const InvariantTable table = load_bundled_table(data_dir);
      return run_records_update(store, table, files);
    }
    if (*rec_report) {
      std::cout << RecordStore::open(store_path).report();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
