#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "causet/causet.hpp"

namespace causet {

inline constexpr std::size_t kMaxExactAntichainSize = 5000;

namespace detail {

// Hopcroft-Karp on the split graph of a poset: left copy x is joined to right
// copy y whenever x precedes y. A matching is a set of chain successor links,
// so |alive| - |matching| chains cover the alive elements (Dilworth). Vertices
// can be switched off and the matching re-augmented from its previous state.
class ChainMatching {
 public:
  static constexpr std::int32_t kNone = -1;

  explicit ChainMatching(const Causet& c)
      : n_(c.size()),
        mate_left_(n_, kNone),
        mate_right_(n_, kNone),
        alive_(n_, 1),
        alive_count_(n_) {
    auto adj = std::make_shared<std::vector<std::vector<std::int32_t>>>(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      for_each_bit(c.row(ElementId{x}).data(), c.row_words(),
                   [&](std::size_t y) { (*adj)[x].push_back(static_cast<std::int32_t>(y)); });
    }
    adj_ = std::move(adj);
  }

  std::size_t alive_count() const { return alive_count_; }
  bool alive(std::size_t v) const { return alive_[v] != 0; }
  std::size_t matched() const { return matched_; }
  std::size_t width() const { return alive_count_ - matched_; }

  void kill(std::size_t v) {
    if (!alive_[v]) return;
    alive_[v] = 0;
    --alive_count_;
    if (mate_left_[v] != kNone) {
      mate_right_[static_cast<std::size_t>(mate_left_[v])] = kNone;
      mate_left_[v] = kNone;
      --matched_;
    }
    if (mate_right_[v] != kNone) {
      mate_left_[static_cast<std::size_t>(mate_right_[v])] = kNone;
      mate_right_[v] = kNone;
      --matched_;
    }
  }

  void augment() {
    while (bfs()) {
      for (std::size_t x = 0; x < n_; ++x) {
        if (alive_[x] && mate_left_[x] == kNone && dfs(x)) ++matched_;
      }
    }
  }

  // Chains of the cover induced by the current matching, over alive elements.
  std::vector<std::vector<ElementId>> chains() const {
    std::vector<std::vector<ElementId>> out;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!alive_[x] || mate_right_[x] != kNone) continue;
      std::vector<ElementId> chain;
      for (std::int32_t v = static_cast<std::int32_t>(x); v != kNone;
           v = mate_left_[static_cast<std::size_t>(v)]) {
        chain.emplace_back(static_cast<std::size_t>(v));
      }
      out.push_back(std::move(chain));
    }
    return out;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    dist_.assign(n_, kInf);
    std::vector<std::size_t> queue;
    for (std::size_t x = 0; x < n_; ++x) {
      if (alive_[x] && mate_left_[x] == kNone) {
        dist_[x] = 0;
        queue.push_back(x);
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (std::int32_t y : (*adj_)[x]) {
        const auto yy = static_cast<std::size_t>(y);
        if (!alive_[yy]) continue;
        const std::int32_t m = mate_right_[yy];
        if (m == kNone) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(m)] == kInf) {
          dist_[static_cast<std::size_t>(m)] = dist_[x] + 1;
          queue.push_back(static_cast<std::size_t>(m));
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t x) {
    for (std::int32_t y : (*adj_)[x]) {
      const auto yy = static_cast<std::size_t>(y);
      if (!alive_[yy]) continue;
      const std::int32_t m = mate_right_[yy];
      if (m == kNone || (dist_[static_cast<std::size_t>(m)] == dist_[x] + 1 &&
                         dfs(static_cast<std::size_t>(m)))) {
        mate_left_[x] = y;
        mate_right_[yy] = static_cast<std::int32_t>(x);
        return true;
      }
    }
    dist_[x] = kInf;
    return false;
  }

  std::size_t n_;
  std::shared_ptr<const std::vector<std::vector<std::int32_t>>> adj_;
  std::vector<std::int32_t> mate_left_;
  std::vector<std::int32_t> mate_right_;
  std::vector<char> alive_;
  std::vector<std::size_t> dist_;
  std::size_t alive_count_;
  std::size_t matched_ = 0;
};

inline void require_exact_size(const Causet& c) {
  if (c.size() > kMaxExactAntichainSize) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(c.size()) + " elements exceeds the exact antichain limit of " +
                    std::to_string(kMaxExactAntichainSize) + "; sample sub-causets instead");
  }
}

}  // namespace detail

// Minimum number of chains partitioning the causet, with one such partition.
inline std::vector<std::vector<ElementId>> minimum_chain_cover(const Causet& c) {
  detail::require_exact_size(c);
  detail::ChainMatching m(c);
  m.augment();
  return m.chains();
}

// Exact maximum antichain via Dilworth duality. Among maximum antichains the
// one whose sorted id sequence is lexicographically smallest is returned: ids
// are admitted greedily in ascending order whenever the elements still
// incomparable to everything chosen can complete an antichain of full width.
inline std::vector<ElementId> maximum_antichain(const Causet& c) {
  detail::require_exact_size(c);
  const std::size_t n = c.size();
  detail::ChainMatching state(c);
  state.augment();
  const std::size_t width = state.width();

  std::vector<ElementId> chosen;
  for (std::size_t v = 0; v < n && chosen.size() < width; ++v) {
    if (!state.alive(v)) continue;
    detail::ChainMatching trial = state;
    trial.kill(v);
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && c.comparable(ElementId{u}, ElementId{v})) trial.kill(u);
    }
    trial.augment();
    if (chosen.size() + 1 + trial.width() == width) {
      chosen.emplace_back(v);
      state = std::move(trial);
    }
  }
  return chosen;
}

}  // namespace causet
