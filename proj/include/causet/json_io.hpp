#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "causet/causet.hpp"
#include "causet/growth.hpp"
#include "causet/minkowski.hpp"

namespace causet {

using Json = nlohmann::ordered_json;

// On-disk causet: {"version":1,"elements":[...],"relations":[[x,y],...],
// "coords":{"id":[t,x...]},"meta":{...}}. Only links are written; readers
// re-close them.
struct CausetDocument {
  Causet causet;
  CoordinateMap coords;
  Json meta;  // null when absent
};

inline constexpr int kJsonVersion = 1;

inline Json coordinates_to_json(const EventCoordinates& e) {
  Json arr = Json::array();
  arr.push_back(e.t);
  for (double v : e.x) arr.push_back(v);
  return arr;
}

inline std::string export_json(const Causet& c, const CoordinateMap& coords = {}, const Json& meta = nullptr) {
  Json doc;
  doc["version"] = kJsonVersion;
  Json elements = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) elements.push_back(i);
  doc["elements"] = std::move(elements);
  Json relations = Json::array();
  for (const auto& [x, y] : links(c)) relations.push_back(Json::array({x.value, y.value}));
  doc["relations"] = std::move(relations);
  if (!coords.empty()) {
    Json cj = Json::object();
    for (const auto& [id, e] : coords) cj[std::to_string(id.value)] = coordinates_to_json(e);
    doc["coords"] = std::move(cj);
  }
  if (!meta.is_null()) doc["meta"] = meta;
  return doc.dump();
}

inline std::string export_json(const CausetDocument& d) { return export_json(d.causet, d.coords, d.meta); }

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline std::size_t parse_index(const Json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    parse_fail(std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline double parse_number(const Json& v, const std::string& what) {
  if (!v.is_number()) parse_fail(what + " must be a number");
  return v.get<double>();
}

inline std::vector<double> parse_vector(const Json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(parse_number(x, what));
  return out;
}

inline EventCoordinates parse_event(const Json& v, const std::string& what) {
  const auto values = parse_vector(v, what);
  if (values.size() < 2) parse_fail(what + " needs a time and at least one space coordinate");
  return {values.front(), std::vector<double>(values.begin() + 1, values.end())};
}

inline void reject_unknown_keys(const Json& obj, std::initializer_list<std::string_view> known,
                                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) parse_fail("unknown key \"" + key + "\" in " + where);
  }
}

inline Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(e.what());
  }
}

}  // namespace detail

// Reads a causet document without judging it: relations are re-closed as
// given, so reflexive pairs and cycles show up for validate() to report.
inline CausetDocument parse_document(std::string_view text) {
  const Json doc = detail::parse_text(text);
  if (!doc.is_object()) detail::parse_fail("document must be a JSON object");
  detail::reject_unknown_keys(doc, {"version", "elements", "relations", "coords", "meta"}, "causet document");
  if (doc.contains("version") && doc["version"] != kJsonVersion) {
    detail::parse_fail("unsupported version " + doc["version"].dump());
  }

  std::vector<Relation> pairs;
  std::size_t referenced = 0;
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array()) detail::parse_fail("relations must be an array");
    for (const auto& r : doc["relations"]) {
      if (!r.is_array() || r.size() != 2) detail::parse_fail("each relation must be a pair [x, y]");
      const ElementId x{detail::parse_index(r[0], "element id")};
      const ElementId y{detail::parse_index(r[1], "element id")};
      referenced = std::max({referenced, x.value + 1, y.value + 1});
      pairs.emplace_back(x, y);
    }
  }

  CoordinateMap coords;
  if (doc.contains("coords")) {
    if (!doc["coords"].is_object()) detail::parse_fail("coords must be an object");
    std::optional<std::size_t> dim;
    for (const auto& [key, value] : doc["coords"].items()) {
      std::size_t id = 0;
      try {
        std::size_t used = 0;
        id = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        detail::parse_fail("coords key \"" + key + "\" is not an element id");
      }
      auto e = detail::parse_event(value, "coords[" + key + "]");
      if (dim && *dim != e.dimension()) detail::parse_fail("coords differ in dimension");
      dim = e.dimension();
      referenced = std::max(referenced, id + 1);
      coords.emplace(ElementId{id}, std::move(e));
    }
  }

  std::size_t n = referenced;
  if (doc.contains("elements")) {
    const auto& elems = doc["elements"];
    if (!elems.is_array()) detail::parse_fail("elements must be an array");
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (detail::parse_index(elems[i], "element id") != i) {
        detail::parse_fail("element ids must be dense and ascending from 0");
      }
    }
    n = elems.size();
    if (referenced > n) detail::parse_fail("relation or coordinate refers to an undeclared element");
  }

  CausetDocument out{Causet::from_relations_reclosed(n, pairs), std::move(coords), nullptr};
  if (doc.contains("meta")) out.meta = doc["meta"];
  return out;
}

inline CausetDocument import_json(std::string_view text) {
  CausetDocument d = parse_document(text);
  if (const auto report = validate(d.causet); !report.ok()) {
    throw Error(ErrorCode::ValidationFailed, std::to_string(report.violations.size()) +
                                                 " axiom violation(s) in imported relations");
  }
  return d;
}

// ---------------------------------------------------------------------------
// Region specification:
//   {"shape":"box","t":[t0,t1],"x":[[a,b],...]}
//   {"shape":"diamond","past":[t,x...],"future":[t,x...]}

inline MinkowskiRegion region_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j["shape"].is_string()) {
    detail::parse_fail("region needs a \"shape\" of \"box\" or \"diamond\"");
  }
  const auto shape = j["shape"].get<std::string>();
  if (shape == "box") {
    detail::reject_unknown_keys(j, {"shape", "t", "x"}, "box region");
    if (!j.contains("t") || !j.contains("x") || !j["x"].is_array()) detail::parse_fail("box needs \"t\" and \"x\"");
    auto range = [](const Json& r, const std::string& what) {
      const auto v = detail::parse_vector(r, what);
      if (v.size() != 2) detail::parse_fail(what + " must be [min, max]");
      return std::pair{v[0], v[1]};
    };
    std::vector<std::pair<double, double>> xs;
    for (const auto& r : j["x"]) xs.push_back(range(r, "box x range"));
    return MinkowskiRegion::box(range(j["t"], "box t range"), std::move(xs));
  }
  if (shape == "diamond") {
    detail::reject_unknown_keys(j, {"shape", "past", "future"}, "diamond region");
    if (!j.contains("past") || !j.contains("future")) detail::parse_fail("diamond needs \"past\" and \"future\"");
    return MinkowskiRegion::diamond(detail::parse_event(j["past"], "diamond past tip"),
                                    detail::parse_event(j["future"], "diamond future tip"));
  }
  detail::parse_fail("unknown region shape \"" + shape + "\"");
}

inline Json region_to_json(const MinkowskiRegion& r) {
  Json j;
  if (const auto* b = std::get_if<BoxShape>(&r.shape())) {
    j["shape"] = "box";
    j["t"] = Json::array({b->t.first, b->t.second});
    j["x"] = Json::array();
    for (const auto& [lo, hi] : b->x) j["x"].push_back(Json::array({lo, hi}));
  } else {
    const auto& d = std::get<DiamondShape>(r.shape());
    j["shape"] = "diamond";
    j["past"] = coordinates_to_json(d.past);
    j["future"] = coordinates_to_json(d.future);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Growth setup: configuration plus the initial substratum.
//   {"seed":1,"elevation":{"coupling":1,"transition_probability":1},
//    "amplitude_model":"equal","max_events":10,"max_sim_time":5.0,
//    "massive_speed":0.5,"clock":{"node":99,"period":1.0},
//    "nodes":[{"id":0,"state":"excited","decay_rate":2,"kind":"photon","position":[0.0]}]}

struct GrowthSetup {
  GrowthConfig config;
  SubstratumState initial;
};

inline GrowthSetup growth_setup_from_json(const Json& j) {
  using detail::parse_fail;
  if (!j.is_object()) parse_fail("growth config must be a JSON object");
  detail::reject_unknown_keys(j, {"seed", "elevation", "amplitude_model", "max_events", "max_sim_time",
                                  "massive_speed", "clock", "nodes"},
                              "growth config");
  GrowthConfig cfg;
  if (j.contains("seed")) cfg.seed = detail::parse_index(j["seed"], "seed");
  if (j.contains("elevation")) {
    const auto& e = j["elevation"];
    if (!e.is_object()) parse_fail("elevation must be an object");
    detail::reject_unknown_keys(e, {"coupling", "transition_probability"}, "elevation");
    if (e.contains("coupling")) cfg.elevation.coupling = detail::parse_number(e["coupling"], "coupling");
    if (e.contains("transition_probability")) {
      cfg.elevation.transition_probability =
          detail::parse_number(e["transition_probability"], "transition_probability");
    }
  }
  if (j.contains("amplitude_model")) {
    const auto& m = j["amplitude_model"];
    if (m == "equal") {
      cfg.amplitude_model = AmplitudeModel::Equal;
    } else if (m == "inverse-square") {
      cfg.amplitude_model = AmplitudeModel::InverseSquare;
    } else {
      parse_fail("amplitude_model must be \"equal\" or \"inverse-square\"");
    }
  }
  if (j.contains("max_events") && !j["max_events"].is_null()) {
    cfg.max_events = detail::parse_index(j["max_events"], "max_events");
  }
  if (j.contains("max_sim_time") && !j["max_sim_time"].is_null()) {
    cfg.max_sim_time = detail::parse_number(j["max_sim_time"], "max_sim_time");
  }
  if (j.contains("massive_speed")) cfg.massive_speed = detail::parse_number(j["massive_speed"], "massive_speed");
  if (j.contains("clock") && !j["clock"].is_null()) {
    const auto& c = j["clock"];
    if (!c.is_object()) parse_fail("clock must be an object");
    detail::reject_unknown_keys(c, {"node", "period"}, "clock");
    ClockSpec clock;
    if (!c.contains("node")) parse_fail("clock needs a \"node\" id");
    clock.clock_node = NodeId{detail::parse_index(c["node"], "clock node")};
    if (c.contains("period")) clock.period = detail::parse_number(c["period"], "clock period");
    cfg.clock = clock;
  }

  if (!j.contains("nodes") || !j["nodes"].is_array()) parse_fail("growth config needs a \"nodes\" array");
  std::vector<SubstratumNode> nodes;
  for (const auto& nj : j["nodes"]) {
    if (!nj.is_object()) parse_fail("each node must be an object");
    detail::reject_unknown_keys(nj, {"id", "state", "decay_rate", "kind", "position"}, "node");
    SubstratumNode n;
    if (!nj.contains("id")) parse_fail("node needs an \"id\"");
    n.id = NodeId{detail::parse_index(nj["id"], "node id")};
    if (nj.contains("state")) {
      if (nj["state"] == "excited") {
        n.state = Excitation::Excited;
      } else if (nj["state"] == "ground") {
        n.state = Excitation::Ground;
      } else {
        parse_fail("node state must be \"excited\" or \"ground\"");
      }
    }
    if (nj.contains("decay_rate")) n.decay_rate = detail::parse_number(nj["decay_rate"], "decay_rate");
    if (nj.contains("kind")) {
      if (nj["kind"] == "photon") {
        n.kind = EmitterKind::Photon;
      } else if (nj["kind"] == "massive") {
        n.kind = EmitterKind::Massive;
      } else {
        parse_fail("node kind must be \"photon\" or \"massive\"");
      }
    }
    if (nj.contains("position") && !nj["position"].is_null()) {
      n.position = detail::parse_vector(nj["position"], "position");
    }
    nodes.push_back(std::move(n));
  }
  cfg.check();
  return {cfg, make_substratum(std::move(nodes))};
}

inline std::string_view to_string(IntervalKind k) { return k == IntervalKind::Null ? "null" : "timelike"; }

inline std::string_view to_string(EventRole r) {
  switch (r) {
    case EventRole::Emission: return "emission";
    case EventRole::Absorption: return "absorption";
    case EventRole::ClockTick: return "clock";
  }
  return "unknown";
}

inline std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::None: return "none";
    case StopReason::MaxEvents: return "max_events";
    case StopReason::MaxSimTime: return "max_sim_time";
    case StopReason::Exhausted: return "exhausted";
    case StopReason::NoElevation: return "no_elevation";
  }
  return "unknown";
}

inline Json transaction_to_json(const TransactionRecord& t) {
  Json j;
  j["emitter"] = t.emitter.value;
  j["absorber"] = t.absorber.value;
  j["emission_event"] = t.emission_event.value;
  j["absorption_event"] = t.absorption_event.value;
  j["interval"] = std::string(to_string(t.interval_kind));
  j["decay_time"] = t.decay_time;
  j["emission_time"] = t.emission_time;
  j["absorption_time"] = t.absorption_time;
  return j;
}

// One JSON object per line, in actualization order.
inline std::string transaction_log_jsonl(const SubstratumState& s) {
  std::string out;
  for (const auto& t : s.transactions) {
    out += transaction_to_json(t).dump();
    out += '\n';
  }
  return out;
}

// Per-event provenance stored under "meta" of a grown causet document.
inline Json growth_meta(const SubstratumState& s) {
  Json meta;
  meta["sim_time"] = s.sim_time;
  meta["stop_reason"] = std::string(to_string(s.stop_reason));
  meta["transactions"] = s.transactions.size();
  Json events = Json::array();
  for (const auto& e : s.event_meta) {
    Json ej;
    ej["node"] = e.node.value;
    ej["role"] = std::string(to_string(e.role));
    ej["time"] = e.time;
    events.push_back(std::move(ej));
  }
  meta["events"] = std::move(events);
  return meta;
}

}  // namespace causet
