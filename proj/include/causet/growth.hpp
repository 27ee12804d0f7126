#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "causet/born.hpp"
#include "causet/causet.hpp"
#include "causet/minkowski.hpp"
#include "causet/sprinkler.hpp"

namespace causet {

struct NodeId {
  std::uint64_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint64_t v) : value(v) {}

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

enum class Excitation { Ground, Excited };
enum class EmitterKind { Photon, Massive };
enum class EventRole { Emission, Absorption, ClockTick };
enum class IntervalKind { Null, Timelike };
enum class AmplitudeModel { Equal, InverseSquare };
enum class StopReason { None, MaxEvents, MaxSimTime, Exhausted, NoElevation };

struct SubstratumNode {
  NodeId id;
  Excitation state = Excitation::Ground;
  double decay_rate = 1.0;                   // per unit simulation time, while excited
  std::optional<std::vector<double>> position;  // spatial only
  EmitterKind kind = EmitterKind::Photon;
};

struct EventMeta {
  NodeId node;
  EventRole role;
  double time;  // event time; coordinate time when coordinates exist
  std::optional<EventCoordinates> coords;
};

struct TransactionRecord {
  NodeId emitter;
  NodeId absorber;
  ElementId emission_event;
  ElementId absorption_event;
  IntervalKind interval_kind;
  double decay_time;  // scheduler time of the decay that produced the offer
  double emission_time;
  double absorption_time;
};

struct ClockSpec {
  NodeId clock_node;
  double period = 1.0;
};

struct GrowthConfig {
  std::uint64_t seed = 0;
  ElevationParams elevation;
  AmplitudeModel amplitude_model = AmplitudeModel::Equal;
  std::optional<std::size_t> max_events;
  std::optional<double> max_sim_time;
  std::optional<ClockSpec> clock;
  double massive_speed = 0.5;  // v < c for massive quanta

  void check() const {
    elevation.check();
    if (!max_events && !max_sim_time) {
      throw Error(ErrorCode::InvalidParameter, "set max_events or max_sim_time");
    }
    if (max_sim_time && !(*max_sim_time >= 0.0)) {
      throw Error(ErrorCode::InvalidParameter, "max_sim_time must be non-negative");
    }
    if (!(massive_speed > 0.0 && massive_speed < 1.0)) {
      throw Error(ErrorCode::InvalidParameter, "massive_speed must lie in (0, 1)");
    }
    if (clock && !(clock->period > 0.0 && std::isfinite(clock->period))) {
      throw Error(ErrorCode::InvalidParameter, "clock period must be positive");
    }
  }
};

// Emitters and absorbers together with the causet their transactions have
// produced so far. `time` values are scheduler bookkeeping; only the order
// and clock-tick counts are meant to be read as physical.
struct SubstratumState {
  std::vector<SubstratumNode> nodes;  // ascending id
  double sim_time = 0.0;
  Causet causet;
  std::vector<EventMeta> event_meta;  // indexed by element
  std::vector<TransactionRecord> transactions;
  std::map<NodeId, ElementId> last_absorption;
  std::map<NodeId, double> excited_since;  // scheduler time of that absorption's decay
  std::optional<ClockSpec> clock;
  std::vector<ElementId> clock_ticks;
  StopReason stop_reason = StopReason::None;

  const SubstratumNode& node(NodeId id) const { return nodes[index_of(id)]; }
  SubstratumNode& node(NodeId id) { return nodes[index_of(id)]; }

  std::size_t index_of(NodeId id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const SubstratumNode& n, NodeId v) { return n.id < v; });
    if (it == nodes.end() || it->id != id) {
      throw Error(ErrorCode::UnknownNode, "no node " + std::to_string(id.value));
    }
    return static_cast<std::size_t>(it - nodes.begin());
  }

  ElementId add_event(EventMeta meta) {
    const ElementId e = causet.add_element();
    event_meta.push_back(std::move(meta));
    return e;
  }

  std::size_t excited_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const SubstratumNode& n) {
      return n.state == Excitation::Excited;
    }));
  }

  CoordinateMap coordinates() const {
    CoordinateMap out;
    for (std::size_t i = 0; i < event_meta.size(); ++i) {
      if (event_meta[i].coords) out.emplace(ElementId{i}, *event_meta[i].coords);
    }
    return out;
  }
};

// Sorts nodes by id and checks ids, rates and positions.
inline SubstratumState make_substratum(std::vector<SubstratumNode> nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const SubstratumNode& a, const SubstratumNode& b) { return a.id < b.id; });
  std::optional<std::size_t> space_dims;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (i > 0 && nodes[i - 1].id == n.id) {
      throw Error(ErrorCode::InvalidParameter, "duplicate node id " + std::to_string(n.id.value));
    }
    if (!(n.decay_rate > 0.0) || !std::isfinite(n.decay_rate)) {
      throw Error(ErrorCode::InvalidParameter, "node " + std::to_string(n.id.value) +
                                                   " needs a positive decay rate");
    }
    if (!n.position) continue;
    if (space_dims && *space_dims != n.position->size()) {
      throw Error(ErrorCode::DimensionMismatch, "node positions differ in dimension");
    }
    space_dims = n.position->size();
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes[j].position && *nodes[j].position == *n.position) {
        throw Error(ErrorCode::CoincidentNodes, "nodes " + std::to_string(nodes[j].id.value) + " and " +
                                                    std::to_string(n.id.value) + " share a position");
      }
    }
  }
  SubstratumState s;
  s.nodes = std::move(nodes);
  return s;
}

// Ground-state nodes other than the emitter, ascending id.
inline std::vector<NodeId> candidate_absorbers(const SubstratumState& s, NodeId emitter) {
  if (s.node(emitter).state != Excitation::Excited) {
    throw Error(ErrorCode::NotExcited, "node " + std::to_string(emitter.value) + " is in its ground state");
  }
  std::vector<NodeId> out;
  for (const auto& n : s.nodes) {
    if (n.id != emitter && n.state == Excitation::Ground) out.push_back(n.id);
  }
  return out;
}

// Real non-negative amplitudes over the candidates: isotropic (equal) or
// a_i proportional to 1/r_i so that weights fall off as 1/r^2.
inline OfferWave offer_amplitudes(const SubstratumState& s, NodeId emitter,
                                  std::span<const NodeId> candidates, AmplitudeModel model) {
  if (candidates.empty()) throw Error(ErrorCode::NoCandidates, "offer has no absorbers");
  OfferWave o;
  o.emitter_tag = std::to_string(emitter.value);
  const double n = static_cast<double>(candidates.size());
  if (model == AmplitudeModel::Equal) {
    o.amplitudes.assign(candidates.size(), Complex(1.0 / std::sqrt(n), 0.0));
    return o;
  }
  const auto& from = s.node(emitter).position;
  if (!from) throw Error(ErrorCode::MissingPositions, "emitter has no position");
  std::vector<double> inverse;
  double sum_sq = 0.0;
  for (NodeId c : candidates) {
    const auto& to = s.node(c).position;
    if (!to) throw Error(ErrorCode::MissingPositions, "absorber " + std::to_string(c.value) + " has no position");
    const double r = spatial_distance(*from, *to);
    if (!(r > 0.0)) throw Error(ErrorCode::CoincidentNodes, "zero emitter-absorber distance");
    inverse.push_back(1.0 / r);
    sum_sq += 1.0 / (r * r);
  }
  const double scale = 1.0 / std::sqrt(sum_sq);
  for (double a : inverse) o.amplitudes.emplace_back(a * scale, 0.0);
  return o;
}

inline IntervalKind interval_kind_for(const SubstratumNode& emitter) {
  return emitter.kind == EmitterKind::Photon ? IntervalKind::Null : IntervalKind::Timelike;
}

struct TransactionPlacement {
  double absorption_time;
  std::optional<EventCoordinates> emission;
  std::optional<EventCoordinates> absorption;
};

// Photons travel at c = 1, so (dt)^2 = |dx|^2; massive quanta at v < 1, so
// (dt)^2 > |dx|^2. Without both positions only the kind is known.
inline TransactionPlacement place_transaction(IntervalKind kind, double emission_time,
                                              const std::optional<std::vector<double>>& from,
                                              const std::optional<std::vector<double>>& to,
                                              double massive_speed) {
  if (!from || !to) return {emission_time, std::nullopt, std::nullopt};
  const double distance = spatial_distance(*from, *to);
  const double dt = kind == IntervalKind::Null ? distance : distance / massive_speed;
  const double absorption_time = emission_time + dt;
  return {absorption_time, EventCoordinates{emission_time, *from}, EventCoordinates{absorption_time, *to}};
}

// Appends clock ticks at period, 2 period, ... until one lies at or after `until`.
inline void extend_clock(SubstratumState& s, const ClockSpec& clock, double until) {
  s.clock = clock;
  while (s.clock_ticks.empty() || s.event_meta[s.clock_ticks.back().value].time < until) {
    const double t = static_cast<double>(s.clock_ticks.size() + 1) * clock.period;
    const ElementId tick = s.add_event({clock.clock_node, EventRole::ClockTick, t, std::nullopt});
    if (!s.clock_ticks.empty()) s.causet.add_relation(s.clock_ticks.back(), tick);
    s.clock_ticks.push_back(tick);
  }
}

// Number of clock ticks whose time lies between the two events (inclusive).
// Only defined for comparable events: unrelated events have no temporal, and
// hence no spatial, relationship.
inline std::size_t clock_tick_interval(const SubstratumState& s, ElementId a, ElementId b) {
  if (!s.clock) throw Error(ErrorCode::NoClock, "no clock configured");
  if (a == b) {
    s.causet.precedes(a, a);  // existence check
    return 0;
  }
  if (!s.causet.comparable(a, b)) {
    throw Error(ErrorCode::Incomparable, "events " + std::to_string(a.value) + " and " +
                                             std::to_string(b.value) + " are not causally related");
  }
  const double lo = std::min(s.event_meta[a.value].time, s.event_meta[b.value].time);
  const double hi = std::max(s.event_meta[a.value].time, s.event_meta[b.value].time);
  if (s.clock_ticks.empty() || s.event_meta[s.clock_ticks.back().value].time < hi) {
    throw Error(ErrorCode::ClockNotSpanning, "clock chain ends before the later event");
  }
  std::size_t ticks = 0;
  for (ElementId tick : s.clock_ticks) {
    const double t = s.event_meta[tick.value].time;
    if (t >= lo && t <= hi) ++ticks;
  }
  return ticks;
}

enum class StepOutcome { Transaction, VirtualExchange, Horizon };

namespace detail {

inline void require_candidates(const SubstratumState& s) {
  bool excited = false;
  bool ground = false;
  for (const auto& n : s.nodes) {
    (n.state == Excitation::Excited ? excited : ground) = true;
  }
  if (!excited || !ground) {
    throw Error(ErrorCode::NoCandidates, excited ? "no ground-state absorbers" : "no excited emitters");
  }
}

inline void check_clock_node(const SubstratumState& s, const GrowthConfig& cfg) {
  if (!cfg.clock) return;
  for (const auto& n : s.nodes) {
    if (n.id == cfg.clock->clock_node) {
      throw Error(ErrorCode::InvalidParameter, "clock node id collides with a substratum node");
    }
  }
}

}  // namespace detail

// One decay opportunity: exponential waiting time at the total excited rate,
// a rate-weighted choice of emitter, a Bernoulli elevation trial, then Born
// actualization of one absorber and the emission -> absorption link. Nothing
// happens if the waiting time would pass `horizon`; the clock stops there.
inline StepOutcome step(SubstratumState& s, const GrowthConfig& cfg, Rng& rng,
                        double horizon = std::numeric_limits<double>::infinity()) {
  detail::require_candidates(s);

  double total_rate = 0.0;
  for (const auto& n : s.nodes) {
    if (n.state == Excitation::Excited) total_rate += n.decay_rate;
  }
  const double wait = std::exponential_distribution<double>(total_rate)(rng);
  if (s.sim_time + wait > horizon) {
    s.sim_time = horizon;
    return StepOutcome::Horizon;
  }
  s.sim_time += wait;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pick = unit(rng) * total_rate;
  std::size_t emitter_index = 0;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (s.nodes[i].state != Excitation::Excited) continue;
    emitter_index = i;
    cumulative += s.nodes[i].decay_rate;
    if (pick < cumulative) break;
  }
  const NodeId emitter = s.nodes[emitter_index].id;

  // A failed elevation leaves the exchange virtual; the node stays excited.
  if (!(unit(rng) < elevation_probability(cfg.elevation))) return StepOutcome::VirtualExchange;

  const auto candidates = candidate_absorbers(s, emitter);
  const OfferWave offer = offer_amplitudes(s, emitter, candidates, cfg.amplitude_model);
  const NodeId absorber = candidates[actualize(born_weights(offer), rng)];

  const SubstratumNode& from = s.node(emitter);
  const SubstratumNode& to = s.node(absorber);
  const IntervalKind kind = interval_kind_for(from);

  // A re-emitting node keeps its scheduler lifetime but counts it from its
  // own absorption event, so the emission is strictly later at the same site.
  double emission_time = s.sim_time;
  const auto previous = s.last_absorption.find(emitter);
  if (previous != s.last_absorption.end()) {
    emission_time = s.event_meta[previous->second.value].time + (s.sim_time - s.excited_since.at(emitter));
  }
  const TransactionPlacement placed =
      place_transaction(kind, emission_time, from.position, to.position, cfg.massive_speed);

  const ElementId emission = s.add_event({emitter, EventRole::Emission, emission_time, placed.emission});
  const ElementId absorption =
      s.add_event({absorber, EventRole::Absorption, placed.absorption_time, placed.absorption});
  if (previous != s.last_absorption.end()) s.causet.add_relation(previous->second, emission);
  s.causet.add_relation(emission, absorption);

  s.last_absorption[absorber] = absorption;
  s.excited_since[absorber] = s.sim_time;
  s.node(emitter).state = Excitation::Ground;
  s.node(absorber).state = Excitation::Excited;
  s.transactions.push_back({emitter, absorber, emission, absorption, kind, s.sim_time, emission_time,
                            placed.absorption_time});
  if (s.clock) extend_clock(s, *s.clock, placed.absorption_time);
  return StepOutcome::Transaction;
}

// Steps until max_events transactions have been actualized or max_sim_time
// is reached. Running out of candidates after the first step ends the run.
inline SubstratumState run(const GrowthConfig& cfg, SubstratumState state, Rng& rng) {
  cfg.check();
  detail::check_clock_node(state, cfg);
  if (cfg.max_events && *cfg.max_events == 0) {
    state.stop_reason = StopReason::MaxEvents;
    return state;
  }
  if (cfg.clock) extend_clock(state, *cfg.clock, state.sim_time);
  detail::require_candidates(state);
  if (elevation_probability(cfg.elevation) == 0.0 && !cfg.max_sim_time) {
    state.stop_reason = StopReason::NoElevation;
    return state;
  }

  const double horizon = cfg.max_sim_time.value_or(std::numeric_limits<double>::infinity());
  std::size_t actualized = 0;
  for (bool first = true;; first = false) {
    if (cfg.max_events && actualized >= *cfg.max_events) {
      state.stop_reason = StopReason::MaxEvents;
      break;
    }
    StepOutcome outcome;
    try {
      outcome = step(state, cfg, rng, horizon);
    } catch (const Error& e) {
      if (first || e.code() != ErrorCode::NoCandidates) throw;
      state.stop_reason = StopReason::Exhausted;
      break;
    }
    if (outcome == StepOutcome::Horizon) {
      state.stop_reason = StopReason::MaxSimTime;
      break;
    }
    if (outcome == StepOutcome::Transaction) ++actualized;
  }
  return state;
}

inline SubstratumState run(const GrowthConfig& cfg, SubstratumState state) {
  Rng rng(cfg.seed);
  return run(cfg, std::move(state), rng);
}

}  // namespace causet
