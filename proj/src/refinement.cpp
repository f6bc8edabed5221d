#include "sticks/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "sticks/errors.hpp"

namespace sticks {

std::string Certificate::to_tsv() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.12g\t%.6e\t%.6e\t%.4f\t%s", mu, max_edge_deviation, bound, margin_exponent,
                passed ? "true" : "false");
  return buf;
}

Certificate evaluate_certificate(const Polygon& p) {
  if (p.size() < 4) throw Error("certify needs at least 4 vertices");
  Certificate cert;
  for (double l : edge_lengths(p)) cert.max_edge_deviation = std::max(cert.max_edge_deviation, std::abs(l - 1.0));
  cert.mu = min_nonadjacent_distance(p);
  cert.bound = std::min(cert.mu / static_cast<double>(p.size()), cert.mu * cert.mu / 4.0);
  cert.margin_exponent = std::log10(cert.max_edge_deviation / cert.bound);
  cert.passed = cert.max_edge_deviation < cert.bound;
  return cert;
}

Certificate certify(const Polygon& p) {
  if (p.size() < 4) throw Error("certify needs at least 4 vertices");
  const auto lengths = edge_lengths(p);
  double sum = 0.0;
  for (double l : lengths) sum += l;
  const double mean = sum / static_cast<double>(lengths.size());
  if (std::abs(mean - 1.0) > scale_tolerance) {
    throw ScaleMismatch("mean edge length " + std::to_string(mean) + " is not within 1% of 1");
  }
  return evaluate_certificate(p);
}

Polygon tighten(const Polygon& p, std::uint64_t iterations, Rng& rng, const Classifier& classify,
                const std::function<void(std::uint64_t, double)>& on_accept) {
  const std::size_t n = p.size();
  if (iterations == 0 || n < 4) return p;
  const auto lengths = edge_lengths(p);
  const Classification target = classify(p);
  Polygon current = p;
  double mu = min_nonadjacent_distance(p);
  for (std::uint64_t it = 0; it < iterations; ++it) {
    // Ordered pairs (i, j) whose forward arc i+1 .. j-1 is nonempty and leaves
    // at least one other vertex fixed.
    const auto i = static_cast<std::size_t>(rng.below(n));
    const auto j = (i + 2 + static_cast<std::size_t>(rng.below(n - 3))) % n;
    const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
    Polygon proposal;
    try {
      proposal = renormalize_edges(crankshaft(current, i, j, angle), lengths);
    } catch (const DegenerateChord&) {
      continue;
    }
    const double next_mu = min_nonadjacent_distance(proposal);
    if (!(next_mu > mu)) continue;
    if (!(classify(proposal) == target)) continue;
    current = std::move(proposal);
    mu = next_mu;
    if (on_accept) on_accept(it, mu);
  }
  current.mark_certified(false);
  return current;
}

}  // namespace sticks
