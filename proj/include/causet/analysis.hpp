#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>

#include "causet/antichain.hpp"
#include "causet/causet.hpp"
#include "causet/minkowski.hpp"

namespace causet {

struct CausetStats {
  std::size_t element_count = 0;
  std::size_t relation_count = 0;
  std::size_t link_count = 0;
  std::size_t longest_chain_length = 0;
  std::size_t maximum_antichain_size = 0;
  double ordering_fraction = 0.0;  // 2R / (N (N - 1))
};

inline CausetStats stats(const Causet& c) {
  CausetStats s;
  s.element_count = c.size();
  s.relation_count = c.relation_count();
  s.link_count = links(c).size();
  s.longest_chain_length = longest_chain(c).size();
  s.maximum_antichain_size = maximum_antichain(c).size();
  if (s.element_count > 1) {
    const double n = static_cast<double>(s.element_count);
    s.ordering_fraction = 2.0 * static_cast<double>(s.relation_count) / (n * (n - 1.0));
  }
  return s;
}

// Euclidean distance between the spatial parts of two events, in whatever
// frame the coordinates were recorded in. Refused for incomparable pairs (and
// for x == y): without a temporal relation there is no spatial one.
inline double spatial_separation(const Causet& c, const CoordinateMap& coords, ElementId x, ElementId y) {
  if (!c.comparable(x, y)) {
    throw Error(ErrorCode::Incomparable, "events " + std::to_string(x.value) + " and " +
                                             std::to_string(y.value) + " are not causally related");
  }
  const auto a = coords.find(x);
  const auto b = coords.find(y);
  if (a == coords.end() || b == coords.end()) {
    throw Error(ErrorCode::MissingCoordinates, "both events need coordinates");
  }
  return spatial_distance(a->second.x, b->second.x);
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace detail

// Hasse diagram: links only, directed past -> future, nodes in id order.
inline std::string export_dot(const Causet& c, const std::map<ElementId, std::string>& labels = {}) {
  std::ostringstream out;
  out << "digraph causet {\n";
  out << "  rankdir=BT;\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << "  " << i;
    if (auto it = labels.find(ElementId{i}); it != labels.end()) {
      out << " [label=\"" << detail::dot_escape(it->second) << "\"]";
    }
    out << ";\n";
  }
  for (const auto& [x, y] : links(c)) out << "  " << x.value << " -> " << y.value << ";\n";
  out << "}\n";
  return out.str();
}

inline constexpr std::size_t kMinPoissonSamples = 30;

struct PoissonFit {
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;             // unbiased sample variance
  double mean_variance_ratio = 0.0;  // 1 for a Poisson law; +inf when variance is 0
  double z_mean = 0.0;               // (mean - mu) / sqrt(mu / n)
  double z_variance = 0.0;           // (variance - mu) / sqrt((mu + 2 mu^2) / n)
  bool pass = false;                 // both |z| <= 3
};

// Checks counts against Poisson(expected_mean): the sample mean and the
// sample variance must each sit within 3 standard errors of expected_mean.
// Var(s^2) ~ (mu_4 - sigma^4) / n with mu_4 = mu + 3 mu^2 for a Poisson law.
inline PoissonFit poisson_fit(std::span<const std::uint64_t> counts, double expected_mean) {
  if (counts.size() < kMinPoissonSamples) {
    throw Error(ErrorCode::InsufficientSamples, "need at least " + std::to_string(kMinPoissonSamples) +
                                                    " samples, got " + std::to_string(counts.size()));
  }
  if (!(expected_mean > 0.0)) throw Error(ErrorCode::InvalidParameter, "expected mean must be positive");

  PoissonFit fit;
  fit.samples = counts.size();
  const double n = static_cast<double>(counts.size());
  double sum = 0.0;
  for (std::uint64_t k : counts) sum += static_cast<double>(k);
  fit.mean = sum / n;
  double ss = 0.0;
  for (std::uint64_t k : counts) {
    const double d = static_cast<double>(k) - fit.mean;
    ss += d * d;
  }
  fit.variance = ss / (n - 1.0);
  fit.mean_variance_ratio =
      fit.variance > 0.0 ? fit.mean / fit.variance : std::numeric_limits<double>::infinity();
  const double mu = expected_mean;
  fit.z_mean = (fit.mean - mu) / std::sqrt(mu / n);
  fit.z_variance = (fit.variance - mu) / std::sqrt((mu + 2.0 * mu * mu) / n);
  fit.pass = std::abs(fit.z_mean) <= 3.0 && std::abs(fit.z_variance) <= 3.0;
  return fit;
}

}  // namespace causet
