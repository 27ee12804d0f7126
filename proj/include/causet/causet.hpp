#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "causet/error.hpp"

namespace causet {

// Dense element index, assigned in insertion order and never reused.
struct ElementId {
  std::size_t value = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::size_t v) : value(v) {}

  friend constexpr auto operator<=>(ElementId, ElementId) = default;
};

using Relation = std::pair<ElementId, ElementId>;

namespace detail {

constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

template <class F>
void for_each_bit(const std::uint64_t* row, std::size_t words, F&& f) {
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = row[w];
    while (bits != 0) {
      f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

// Square bit matrix with spare row/column capacity so that appending an
// element does not reallocate every time. Row i holds the successors of i.
class BitMatrix {
 public:
  std::size_t size() const { return n_; }
  std::size_t words() const { return detail::words_for(n_); }

  void push_back() {
    if (n_ + 1 > cap_) {
      grow(n_ + 1 + std::max<std::size_t>(n_ / 8, 64));
    }
    ++n_;
  }

  bool test(std::size_t i, std::size_t j) const {
    return (data_[i * stride_ + j / 64] >> (j % 64)) & 1U;
  }
  // Returns true iff the bit was newly set.
  bool set(std::size_t i, std::size_t j) {
    std::uint64_t& w = data_[i * stride_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    const bool was = (w & mask) != 0;
    w |= mask;
    return !was;
  }
  void reset(std::size_t i, std::size_t j) {
    data_[i * stride_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
  }

  const std::uint64_t* row(std::size_t i) const { return data_.data() + i * stride_; }
  std::uint64_t* row(std::size_t i) { return data_.data() + i * stride_; }

 private:
  void grow(std::size_t new_cap) {
    const std::size_t new_stride = detail::words_for(new_cap);
    std::vector<std::uint64_t> fresh(new_cap * new_stride, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      std::copy_n(data_.data() + i * stride_, stride_, fresh.data() + i * new_stride);
    }
    data_ = std::move(fresh);
    stride_ = new_stride;
    cap_ = new_cap;
  }

  std::size_t n_ = 0;
  std::size_t cap_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace detail

// A finite causal set: elements plus a strict partial order kept in
// transitively closed form. Mutation through add_relation keeps the order
// closed, irreflexive and acyclic at all times. The *_unchecked factories
// exist so that external data can be loaded as-is and then inspected by
// validate().
class Causet {
 public:
  Causet() = default;

  std::size_t size() const { return closure_.size(); }
  bool empty() const { return size() == 0; }
  std::size_t relation_count() const { return relations_; }

  ElementId add_element() {
    closure_.push_back();
    return ElementId{size() - 1};
  }

  bool contains(ElementId x) const { return x.value < size(); }

  void add_relation(ElementId x, ElementId y) {
    require(x);
    require(y);
    if (x == y) {
      throw Error(ErrorCode::ReflexiveRelation,
                  "element " + std::to_string(x.value) + " cannot precede itself");
    }
    if (closure_.test(y.value, x.value)) {
      throw Error(ErrorCode::CycleCreated, std::to_string(y.value) + " already precedes " +
                                               std::to_string(x.value));
    }
    if (closure_.test(x.value, y.value)) return;

    // Everything at or below x now precedes everything at or above y.
    std::vector<std::size_t> ancestors;
    for (std::size_t a = 0; a < size(); ++a) {
      if (closure_.test(a, x.value)) ancestors.push_back(a);
    }
    ancestors.push_back(x.value);

    std::vector<std::size_t> descendants;
    detail::for_each_bit(closure_.row(y.value), closure_.words(),
                         [&](std::size_t d) { descendants.push_back(d); });
    descendants.push_back(y.value);

    const std::size_t words = closure_.words();
    if (descendants.size() < words) {
      for (std::size_t a : ancestors) {
        for (std::size_t d : descendants) relations_ += closure_.set(a, d) ? 1 : 0;
      }
    } else {
      std::vector<std::uint64_t> mask(closure_.row(y.value), closure_.row(y.value) + words);
      mask[y.value / 64] |= std::uint64_t{1} << (y.value % 64);
      for (std::size_t a : ancestors) {
        std::uint64_t* r = closure_.row(a);
        for (std::size_t w = 0; w < words; ++w) {
          relations_ += static_cast<std::size_t>(std::popcount(mask[w] & ~r[w]));
          r[w] |= mask[w];
        }
      }
    }
  }

  bool precedes(ElementId x, ElementId y) const {
    require(x);
    require(y);
    return closure_.test(x.value, y.value);
  }

  // comparable(x, x) is false, consistent with irreflexivity.
  bool comparable(ElementId x, ElementId y) const {
    if (x == y) {
      require(x);
      return false;
    }
    return precedes(x, y) || precedes(y, x);
  }

  std::vector<ElementId> elements() const {
    std::vector<ElementId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back(i);
    return out;
  }

  std::vector<ElementId> successors(ElementId x) const {
    require(x);
    std::vector<ElementId> out;
    detail::for_each_bit(closure_.row(x.value), closure_.words(),
                         [&](std::size_t y) { out.emplace_back(y); });
    return out;
  }

  std::vector<ElementId> predecessors(ElementId x) const {
    require(x);
    std::vector<ElementId> out;
    for (std::size_t a = 0; a < size(); ++a) {
      if (closure_.test(a, x.value)) out.emplace_back(a);
    }
    return out;
  }

  // All stored pairs, sorted.
  std::vector<Relation> relations() const {
    std::vector<Relation> out;
    out.reserve(relations_);
    for (std::size_t x = 0; x < size(); ++x) {
      detail::for_each_bit(closure_.row(x), closure_.words(),
                           [&](std::size_t y) { out.emplace_back(ElementId{x}, ElementId{y}); });
    }
    return out;
  }

  // Raw successor row of x; `row_words()` 64-bit words long.
  std::span<const std::uint64_t> row(ElementId x) const {
    require(x);
    return {closure_.row(x.value), closure_.words()};
  }
  std::size_t row_words() const { return closure_.words(); }
  std::size_t successor_count(ElementId x) const {
    std::size_t n = 0;
    for (std::uint64_t w : row(x)) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Stores exactly the given pairs, no closing and no checks.
  static Causet from_closure_unchecked(std::size_t n, std::span<const Relation> pairs) {
    Causet c;
    for (std::size_t i = 0; i < n; ++i) c.add_element();
    for (const auto& [x, y] : pairs) {
      c.require(x);
      c.require(y);
      c.relations_ += c.closure_.set(x.value, y.value) ? 1 : 0;
    }
    return c;
  }

  // Relation given by a predicate over element indices, stored as-is.
  template <class Pred>
  static Causet from_order_unchecked(std::size_t n, Pred&& precedes) {
    Causet c;
    for (std::size_t i = 0; i < n; ++i) c.add_element();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (precedes(i, j)) c.relations_ += c.closure_.set(i, j) ? 1 : 0;
      }
    }
    return c;
  }

  // Transitively closes the given pairs without rejecting reflexive pairs or
  // cycles; such defects surface as (x, x) entries for validate() to report.
  static Causet from_relations_reclosed(std::size_t n, std::span<const Relation> pairs) {
    Causet c = from_closure_unchecked(n, pairs);
    const std::size_t words = c.closure_.words();
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t* rk = c.closure_.row(k);
      for (std::size_t i = 0; i < n; ++i) {
        if (!c.closure_.test(i, k)) continue;
        std::uint64_t* ri = c.closure_.row(i);
        for (std::size_t w = 0; w < words; ++w) ri[w] |= rk[w];
      }
    }
    c.relations_ = 0;
    for (std::size_t i = 0; i < n; ++i) c.relations_ += c.successor_count(ElementId{i});
    return c;
  }

  friend bool operator==(const Causet& a, const Causet& b) {
    if (a.size() != b.size() || a.relations_ != b.relations_) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto ra = a.row(ElementId{i});
      const auto rb = b.row(ElementId{i});
      if (!std::equal(ra.begin(), ra.end(), rb.begin())) return false;
    }
    return true;
  }

 private:
  void require(ElementId x) const {
    if (!contains(x)) {
      throw Error(ErrorCode::UnknownElement, "no element " + std::to_string(x.value));
    }
  }

  detail::BitMatrix closure_;
  std::size_t relations_ = 0;
};

inline Causet new_causet() { return Causet{}; }

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { NotTransitive, Reflexive, Cyclic };

struct Violation {
  ViolationKind kind;
  std::vector<ElementId> elements;  // (x,y,z) | (x) | a cycle x0 -> x1 -> ... -> x0
};

inline constexpr std::size_t kViolationCap = 100;

struct ValidationReport {
  bool transitive = true;
  bool irreflexive = true;
  bool acyclic = true;
  std::vector<Violation> violations;

  bool ok() const { return transitive && irreflexive && acyclic; }
};

namespace detail {

// Finds some cycle of length >= 2 (self pairs ignored), or returns empty.
inline std::vector<ElementId> find_cycle(const Causet& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for_each_bit(c.row(ElementId{x}).data(), c.row_words(), [&](std::size_t y) {
      if (y != x) ++indegree[y];
    });
  }
  std::vector<std::size_t> queue;
  for (std::size_t x = 0; x < n; ++x) {
    if (indegree[x] == 0) queue.push_back(x);
  }
  std::vector<char> removed(n, 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t x = queue[head];
    removed[x] = 1;
    for_each_bit(c.row(ElementId{x}).data(), c.row_words(), [&](std::size_t y) {
      if (y != x && --indegree[y] == 0) queue.push_back(y);
    });
  }
  if (queue.size() == n) return {};

  // Every remaining node has a remaining predecessor; walk backwards until a
  // node repeats.
  std::size_t start = 0;
  while (removed[start]) ++start;
  std::vector<std::size_t> seen_at(n, n);
  std::vector<std::size_t> walk;
  std::size_t cur = start;
  while (seen_at[cur] == n) {
    seen_at[cur] = walk.size();
    walk.push_back(cur);
    std::size_t pred = n;
    for (std::size_t a = 0; a < n; ++a) {
      if (a != cur && !removed[a] && c.precedes(ElementId{a}, ElementId{cur})) {
        pred = a;
        break;
      }
    }
    cur = pred;
  }
  std::vector<ElementId> cycle;
  for (std::size_t i = walk.size(); i-- > seen_at[cur];) cycle.emplace_back(walk[i]);
  cycle.push_back(cycle.front());
  return cycle;
}

}  // namespace detail

// Checks the order axioms directly against the stored relation. Local
// finiteness holds trivially for a finite set.
inline ValidationReport validate(const Causet& c) {
  ValidationReport report;
  const std::size_t n = c.size();
  const std::size_t words = c.row_words();
  auto record = [&](ViolationKind kind, std::vector<ElementId> elems) {
    if (report.violations.size() < kViolationCap) {
      report.violations.push_back({kind, std::move(elems)});
    }
  };

  for (std::size_t x = 0; x < n; ++x) {
    if (c.precedes(ElementId{x}, ElementId{x})) {
      report.irreflexive = false;
      record(ViolationKind::Reflexive, {ElementId{x}});
    }
  }

  for (std::size_t x = 0; x < n && report.violations.size() < kViolationCap; ++x) {
    const auto rx = c.row(ElementId{x});
    detail::for_each_bit(rx.data(), words, [&](std::size_t y) {
      if (y == x) return;
      const auto ry = c.row(ElementId{y});
      for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t missing = ry[w] & ~rx[w];
        if (missing == 0) continue;
        report.transitive = false;
        detail::for_each_bit(&missing, 1, [&](std::size_t bit) {
          record(ViolationKind::NotTransitive,
                 {ElementId{x}, ElementId{y}, ElementId{w * 64 + bit}});
        });
      }
    });
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (c.precedes(ElementId{x}, ElementId{y}) && c.precedes(ElementId{y}, ElementId{x})) {
        report.acyclic = false;
        record(ViolationKind::Cyclic, {ElementId{x}, ElementId{y}, ElementId{x}});
      }
    }
  }
  if (report.acyclic) {
    auto cycle = detail::find_cycle(c);
    if (!cycle.empty()) {
      report.acyclic = false;
      record(ViolationKind::Cyclic, std::move(cycle));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Order queries

// Elements sorted so that x precedes y implies x comes first. In a valid
// causet a predecessor always has strictly more successors.
inline std::vector<ElementId> linear_extension(const Causet& c) {
  std::vector<std::pair<std::size_t, std::size_t>> keyed;
  keyed.reserve(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    keyed.emplace_back(c.successor_count(ElementId{x}), x);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<ElementId> order;
  order.reserve(keyed.size());
  for (const auto& k : keyed) order.emplace_back(k.second);
  return order;
}

// Transitive reduction: pairs with an empty open interval.
inline std::vector<Relation> links(const Causet& c) {
  const std::size_t n = c.size();
  const std::size_t words = c.row_words();
  const auto order = linear_extension(c);
  std::vector<Relation> out;
  std::vector<std::uint64_t> candidates(words);
  for (std::size_t x = 0; x < n; ++x) {
    const auto rx = c.row(ElementId{x});
    std::copy(rx.begin(), rx.end(), candidates.begin());
    std::vector<ElementId> found;
    // Walking in linear-extension order, a surviving candidate has no
    // intervening element, since all its ancestors were visited first.
    for (ElementId z : order) {
      if (!((candidates[z.value / 64] >> (z.value % 64)) & 1U)) continue;
      found.push_back(z);
      const auto rz = c.row(z);
      for (std::size_t w = 0; w < words; ++w) candidates[w] &= ~rz[w];
    }
    std::sort(found.begin(), found.end());
    for (ElementId y : found) out.emplace_back(ElementId{x}, y);
  }
  return out;
}

inline std::vector<ElementId> order_interval(const Causet& c, ElementId x, ElementId z) {
  std::vector<ElementId> out;
  if (!c.precedes(x, z)) return out;
  detail::for_each_bit(c.row(x).data(), c.row_words(), [&](std::size_t y) {
    if (c.precedes(ElementId{y}, z)) out.emplace_back(y);
  });
  return out;
}

namespace detail {

inline std::vector<ElementId> distinct(const Causet& c, std::span<const ElementId> s) {
  std::vector<ElementId> v(s.begin(), s.end());
  for (ElementId x : v) {
    if (!c.contains(x)) throw Error(ErrorCode::UnknownElement, "no element " + std::to_string(x.value));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

inline bool is_chain(const Causet& c, std::span<const ElementId> s) {
  const auto v = detail::distinct(c, s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!c.comparable(v[i], v[j])) return false;
    }
  }
  return true;
}

inline bool is_antichain(const Causet& c, std::span<const ElementId> s) {
  const auto v = detail::distinct(c, s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (c.comparable(v[i], v[j])) return false;
    }
  }
  return true;
}

// Maximum-length chain in precedence order; among equal lengths the
// lexicographically smallest id sequence is returned.
inline std::vector<ElementId> longest_chain(const Causet& c) {
  const std::size_t n = c.size();
  if (n == 0) return {};
  const auto order = linear_extension(c);
  std::vector<std::size_t> height(n, 1);  // longest chain starting at x
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t best = 0;
    detail::for_each_bit(c.row(*it).data(), c.row_words(),
                         [&](std::size_t y) { best = std::max(best, height[y]); });
    height[it->value] = best + 1;
  }
  const std::size_t length = *std::max_element(height.begin(), height.end());

  std::vector<ElementId> chain;
  std::size_t cur = static_cast<std::size_t>(
      std::find(height.begin(), height.end(), length) - height.begin());
  chain.emplace_back(cur);
  while (chain.size() < length) {
    std::size_t next = n;
    detail::for_each_bit(c.row(ElementId{cur}).data(), c.row_words(), [&](std::size_t y) {
      if (next == n && height[y] + 1 == height[cur]) next = y;
    });
    cur = next;
    chain.emplace_back(cur);
  }
  return chain;
}

}  // namespace causet

template <>
struct std::hash<causet::ElementId> {
  std::size_t operator()(causet::ElementId e) const noexcept { return std::hash<std::size_t>{}(e.value); }
};
