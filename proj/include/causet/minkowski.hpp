#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "causet/causet.hpp"
#include "causet/error.hpp"

namespace causet {

// Flat spacetime, natural units (c = 1), one time axis plus x.size() space axes.
struct EventCoordinates {
  double t = 0.0;
  std::vector<double> x;

  std::size_t dimension() const { return 1 + x.size(); }

  friend bool operator==(const EventCoordinates&, const EventCoordinates&) = default;
};

using CoordinateMap = std::map<ElementId, EventCoordinates>;

inline constexpr std::size_t kMinDimension = 2;
inline constexpr std::size_t kMaxDimension = 6;

inline double squared_spatial_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "spatial vectors of length " + std::to_string(a.size()) +
                                                  " and " + std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = b[i] - a[i];
    sum += d * d;
  }
  return sum;
}

inline double spatial_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_spatial_distance(a, b));
}

// Causal (not chronological) order: null separations count, equal times never do.
inline bool causally_precedes_coords(const EventCoordinates& a, const EventCoordinates& b) {
  if (a.x.size() != b.x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "events of dimension " + std::to_string(a.dimension()) +
                                                  " and " + std::to_string(b.dimension()));
  }
  const double dt = b.t - a.t;
  if (!(dt > 0.0)) return false;
  return dt * dt >= squared_spatial_distance(a.x, b.x);
}

struct BoxShape {
  std::pair<double, double> t;
  std::vector<std::pair<double, double>> x;
};

// Alexandrov interval J+(past) ∩ J-(future).
struct DiamondShape {
  EventCoordinates past;
  EventCoordinates future;
};

class MinkowskiRegion {
 public:
  static MinkowskiRegion box(std::pair<double, double> t, std::vector<std::pair<double, double>> x) {
    check_dimension(1 + x.size());
    auto check_range = [](std::pair<double, double> r, const char* axis) {
      if (!std::isfinite(r.first) || !std::isfinite(r.second) || !(r.second > r.first)) {
        throw Error(ErrorCode::DegenerateRegion, std::string("empty or non-finite ") + axis + " range");
      }
    };
    check_range(t, "time");
    for (const auto& r : x) check_range(r, "space");
    return MinkowskiRegion(BoxShape{t, std::move(x)});
  }

  static MinkowskiRegion diamond(EventCoordinates past, EventCoordinates future) {
    if (past.x.size() != future.x.size()) {
      throw Error(ErrorCode::DimensionMismatch, "diamond tips differ in dimension");
    }
    check_dimension(past.dimension());
    auto finite = [](const EventCoordinates& e) {
      if (!std::isfinite(e.t)) return false;
      for (double v : e.x) {
        if (!std::isfinite(v)) return false;
      }
      return true;
    };
    const double dt = future.t - past.t;
    if (!finite(past) || !finite(future) || !(dt > 0.0) ||
        !(dt * dt > squared_spatial_distance(past.x, future.x))) {
      throw Error(ErrorCode::DegenerateRegion, "diamond tips must be timelike separated, past first");
    }
    return MinkowskiRegion(DiamondShape{std::move(past), std::move(future)});
  }

  std::size_t dimension() const {
    return std::visit(
        [](const auto& s) -> std::size_t {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, BoxShape>) {
            return 1 + s.x.size();
          } else {
            return s.past.dimension();
          }
        },
        shape_);
  }

  const std::variant<BoxShape, DiamondShape>& shape() const { return shape_; }
  bool is_box() const { return std::holds_alternative<BoxShape>(shape_); }

  // Axis-aligned bounding box (time range first, then one range per space axis).
  BoxShape bounds() const {
    if (const auto* b = std::get_if<BoxShape>(&shape_)) return *b;
    const auto& d = std::get<DiamondShape>(shape_);
    const double span = d.future.t - d.past.t;
    BoxShape out{{d.past.t, d.future.t}, {}};
    for (std::size_t i = 0; i < d.past.x.size(); ++i) {
      const double mid = 0.5 * (d.past.x[i] + d.future.x[i]);
      out.x.emplace_back(mid - 0.5 * span, mid + 0.5 * span);
    }
    return out;
  }

  bool contains(const EventCoordinates& e) const {
    if (e.dimension() != dimension()) {
      throw Error(ErrorCode::DimensionMismatch, "point dimension differs from region");
    }
    if (const auto* b = std::get_if<BoxShape>(&shape_)) {
      if (e.t < b->t.first || e.t > b->t.second) return false;
      for (std::size_t i = 0; i < b->x.size(); ++i) {
        if (e.x[i] < b->x[i].first || e.x[i] > b->x[i].second) return false;
      }
      return true;
    }
    const auto& d = std::get<DiamondShape>(shape_);
    auto inside_cone = [](const EventCoordinates& from, const EventCoordinates& to) {
      const double dt = to.t - from.t;
      return dt >= 0.0 && dt * dt >= squared_spatial_distance(from.x, to.x);
    };
    return inside_cone(d.past, e) && inside_cone(e, d.future);
  }

 private:
  explicit MinkowskiRegion(std::variant<BoxShape, DiamondShape> shape) : shape_(std::move(shape)) {}

  static void check_dimension(std::size_t d) {
    if (d < kMinDimension || d > kMaxDimension) {
      throw Error(ErrorCode::InvalidParameter,
                  "dimension " + std::to_string(d) + " outside supported range 2..6");
    }
  }

  std::variant<BoxShape, DiamondShape> shape_;
};

// Volume of a causal diamond of proper height tau in d dimensions:
// pi^((d-1)/2) tau^d / (2^(d-1) d Gamma((d+1)/2)). For d = 2 this is tau^2 / 2.
inline double diamond_volume(std::size_t d, double tau) {
  const double dd = static_cast<double>(d);
  const double coefficient = std::pow(std::numbers::pi, (dd - 1.0) / 2.0) /
                             (std::pow(2.0, dd - 1.0) * dd * std::tgamma((dd + 1.0) / 2.0));
  return coefficient * std::pow(tau, dd);
}

inline double region_volume(const MinkowskiRegion& r) {
  if (const auto* b = std::get_if<BoxShape>(&r.shape())) {
    double v = b->t.second - b->t.first;
    for (const auto& range : b->x) v *= range.second - range.first;
    return v;
  }
  const auto& d = std::get<DiamondShape>(r.shape());
  const double dt = d.future.t - d.past.t;
  const double tau2 = dt * dt - squared_spatial_distance(d.past.x, d.future.x);
  if (!(tau2 > 0.0)) throw Error(ErrorCode::DegenerateRegion, "diamond has no interior");
  return diamond_volume(r.dimension(), std::sqrt(tau2));
}

}  // namespace causet
