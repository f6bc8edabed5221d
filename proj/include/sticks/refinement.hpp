#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sticks/classify.hpp"
#include "sticks/polygon.hpp"
#include "sticks/rng.hpp"

namespace sticks {

/// Test for a near-equilateral polygon representing a unit-edge equilateral
/// knot of the same type: max |L_i - 1| < min(mu / n, mu^2 / 4).
struct Certificate {
  double mu = 0.0;
  double max_edge_deviation = 0.0;
  double bound = 0.0;
  double margin_exponent = 0.0;  // log10(max_edge_deviation / bound)
  bool passed = false;

  /// `mu<TAB>max_dev<TAB>bound<TAB>margin_exp<TAB>passed`
  std::string to_tsv() const;
};

/// Mean edge length may differ from 1 by at most this fraction.
inline constexpr double scale_tolerance = 0.01;

/// Throws ScaleMismatch when the mean edge length is not within 1% of 1, and
/// Error when the polygon has fewer than four vertices.
Certificate certify(const Polygon& p);

/// The certificate fields without the scale check.
Certificate evaluate_certificate(const Polygon& p);

using Classifier = std::function<Classification(const Polygon&)>;

/// Greedy crankshaft hill-climbing on mu. Each proposal rotates a random arc
/// by an angle uniform on [-pi, pi), is rebuilt to the input's edge lengths,
/// and is kept only if mu strictly increases and the classifier returns the
/// same outcome as for the input. `on_accept` sees (iteration, new mu).
Polygon tighten(const Polygon& p, std::uint64_t iterations, Rng& rng, const Classifier& classify,
                const std::function<void(std::uint64_t, double)>& on_accept = {});

}  // namespace sticks
