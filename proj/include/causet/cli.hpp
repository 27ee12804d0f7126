#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "causet/analysis.hpp"
#include "causet/growth.hpp"
#include "causet/json_io.hpp"
#include "causet/sprinkler.hpp"

// Batch commands behind the `causet` executable. Each returns a process exit
// code and writes diagnostics to `err`.
namespace causet::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitBadInput = 2,
  kExitIo = 3,
  kExitNoCandidates = 4,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out.flush()) throw IoError("write failed for " + path);
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<std::string> output_paths;
  std::string started;
  std::string finished;
  Json details = Json::object();

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["seed"] = seed;
    j["output_paths"] = output_paths;
    j["tool_version"] = kToolVersion;
    j["started"] = started;
    j["finished"] = finished;
    j["details"] = details;
    return j;
  }
};

inline std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

inline void write_manifest(RunManifest m, const std::string& out) {
  m.finished = utc_timestamp();
  write_file(manifest_path(out), m.to_json().dump(2) + "\n");
}

// Maps library errors onto the documented exit codes.
inline int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::NoCandidates: return kExitNoCandidates;
    case ErrorCode::ValidationFailed: return kExitInvalid;
    default: return kExitBadInput;
  }
}

struct SprinkleOptions {
  std::string region_path;
  double density = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

inline int cmd_sprinkle(const SprinkleOptions& opt, std::ostream& out, std::ostream& err) {
  RunManifest manifest{"sprinkle", opt.region_path, opt.seed, {opt.out, manifest_path(opt.out)}, utc_timestamp(), {}};
  try {
    if (!(opt.density > 0.0)) throw Error(ErrorCode::InvalidParameter, "--density must be positive");
    const MinkowskiRegion region = region_from_json(detail::parse_text(read_file(opt.region_path)));
    Rng rng(opt.seed);
    const SprinkledCauset sc = sprinkle(region, opt.density, rng);

    Json meta;
    meta["density"] = opt.density;
    meta["seed"] = opt.seed;
    meta["region"] = region_to_json(region);
    write_file(opt.out, export_json(sc.causet, sc.coords, meta) + "\n");

    manifest.details["element_count"] = sc.causet.size();
    manifest.details["volume"] = region_volume(region);
    manifest.details["density"] = opt.density;
    write_manifest(manifest, opt.out);
    out << "sprinkled " << sc.causet.size() << " elements into " << opt.out << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

struct GrowOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  std::string out;
  std::optional<std::string> log;     // defaults to <out>.transactions.jsonl
};

inline int cmd_grow(const GrowOptions& opt, std::ostream& out, std::ostream& err) {
  const std::string log_path = opt.log.value_or(opt.out + ".transactions.jsonl");
  try {
    GrowthSetup setup = growth_setup_from_json(detail::parse_text(read_file(opt.config_path)));
    if (opt.seed) setup.config.seed = *opt.seed;
    RunManifest manifest{"grow", opt.config_path, setup.config.seed,
                         {opt.out, log_path, manifest_path(opt.out)}, utc_timestamp(), {}};

    const SubstratumState state = run(setup.config, std::move(setup.initial));

    write_file(opt.out, export_json(state.causet, state.coordinates(), growth_meta(state)) + "\n");
    write_file(log_path, transaction_log_jsonl(state));

    manifest.details["element_count"] = state.causet.size();
    manifest.details["transactions"] = state.transactions.size();
    manifest.details["stop_reason"] = std::string(to_string(state.stop_reason));
    write_manifest(manifest, opt.out);
    out << "grew " << state.transactions.size() << " transactions (" << state.causet.size()
        << " events) into " << opt.out << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

inline std::string describe(const Violation& v) {
  std::string s;
  switch (v.kind) {
    case ViolationKind::NotTransitive: s = "not transitive:"; break;
    case ViolationKind::Reflexive: s = "reflexive:"; break;
    case ViolationKind::Cyclic: s = "cycle:"; break;
  }
  for (ElementId e : v.elements) s += " " + std::to_string(e.value);
  return s;
}

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const CausetDocument doc = parse_document(read_file(path));
    const ValidationReport report = validate(doc.causet);
    out << "transitive: " << (report.transitive ? "yes" : "no") << "\n"
        << "irreflexive: " << (report.irreflexive ? "yes" : "no") << "\n"
        << "acyclic: " << (report.acyclic ? "yes" : "no") << "\n";
    for (const auto& v : report.violations) out << "violation " << describe(v) << "\n";
    return report.ok() ? kExitOk : kExitInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

struct AnalyzeOptions {
  std::string path;
  std::optional<std::string> dot;
  bool stats = false;
};

inline Json stats_to_json(const CausetStats& s) {
  Json j;
  j["element_count"] = s.element_count;
  j["relation_count"] = s.relation_count;
  j["link_count"] = s.link_count;
  j["longest_chain_length"] = s.longest_chain_length;
  j["maximum_antichain_size"] = s.maximum_antichain_size;
  j["ordering_fraction"] = s.ordering_fraction;
  return j;
}

// Prints stats unless only --dot was requested.
inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const CausetDocument doc = import_json(read_file(opt.path));
    if (opt.dot) write_file(*opt.dot, export_dot(doc.causet));
    if (opt.stats || !opt.dot) out << stats_to_json(stats(doc.causet)).dump(2) << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace causet::cli
