#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "causet/causet.hpp"
#include "causet/minkowski.hpp"

namespace causet {

using Rng = std::mt19937_64;

struct SprinkledCauset {
  Causet causet;
  CoordinateMap coords;
  MinkowskiRegion region;
  double density;
};

inline std::uint64_t poisson_sample_count(double rho, double volume, Rng& rng) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorCode::InvalidParameter, "density must be positive and finite");
  }
  if (!(volume > 0.0) || !std::isfinite(volume)) {
    throw Error(ErrorCode::InvalidParameter, "volume must be positive and finite");
  }
  std::poisson_distribution<long long> dist(rho * volume);
  return static_cast<std::uint64_t>(dist(rng));
}

// Order induced by lightcone causality, one element per point in input order.
inline Causet induce_order(std::span<const EventCoordinates> points) {
  if (!points.empty()) {
    const std::size_t d = points.front().dimension();
    for (const auto& p : points) {
      if (p.dimension() != d) {
        throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
      }
    }
  }
  Causet c = Causet::from_order_unchecked(points.size(), [&](std::size_t i, std::size_t j) {
    return causally_precedes_coords(points[i], points[j]);
  });
  // Causality in flat spacetime is transitive; this only guards the construction.
  if (const auto report = validate(c); !report.ok()) {
    throw Error(ErrorCode::ValidationFailed, "induced order violates the causet axioms");
  }
  return c;
}

// Uniform point in the region by rejection from its bounding box. For a 1+1
// diamond the acceptance ratio is 1/2, falling to about 0.13 at d = 4 and
// 0.013 at d = 6.
inline EventCoordinates sample_point(const MinkowskiRegion& region, Rng& rng) {
  const BoxShape bounds = region.bounds();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](std::pair<double, double> r) { return r.first + (r.second - r.first) * unit(rng); };
  for (;;) {
    EventCoordinates p;
    p.t = draw(bounds.t);
    p.x.reserve(bounds.x.size());
    for (const auto& r : bounds.x) p.x.push_back(draw(r));
    if (region.is_box() || region.contains(p)) return p;
  }
}

// Poisson sprinkling at density rho. Elements are numbered in order of
// increasing time, so ids form a linear extension of the induced order.
inline SprinkledCauset sprinkle(const MinkowskiRegion& region, double rho, Rng& rng) {
  const std::uint64_t n = poisson_sample_count(rho, region_volume(region), rng);
  std::vector<EventCoordinates> points;
  points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) points.push_back(sample_point(region, rng));
  std::stable_sort(points.begin(), points.end(),
                   [](const EventCoordinates& a, const EventCoordinates& b) { return a.t < b.t; });

  SprinkledCauset out{induce_order(points), {}, region, rho};
  for (std::size_t i = 0; i < points.size(); ++i) out.coords.emplace(ElementId{i}, std::move(points[i]));
  return out;
}

}  // namespace causet
