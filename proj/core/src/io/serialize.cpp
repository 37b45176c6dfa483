#include "gameqd/io/serialize.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gameqd/errors.hpp"
#include "gameqd/mlp.hpp"

namespace gameqd::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DataIntegrityError(fmt::format("missing field '{}'", key));
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw DataIntegrityError(fmt::format("field '{}': {}", key, e.what()));
  }
}

std::vector<double> params_of(const json& j) {
  try {
    return j.get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataIntegrityError(fmt::format("genome parameters: {}", e.what()));
  }
}

}  // namespace

std::string tool_version() { return std::string("gameqd ") + GAMEQD_VERSION; }

json encode(const BehaviorDescriptor& b) {
  json nz = json::array();
  const auto v = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) nz.push_back({i, v[i]});
  }
  return {{"size", v.size()}, {"nz", std::move(nz)}};
}

BehaviorDescriptor decode_behavior(const json& j) {
  const auto size = get<std::size_t>(j, "size");
  std::vector<double> values(size, 0.0);
  for (const auto& entry : field(j, "nz")) {
    if (!entry.is_array() || entry.size() != 2) throw DataIntegrityError("behavior: malformed entry");
    const auto idx = entry[0].get<std::size_t>();
    if (idx >= size) throw DataIntegrityError("behavior: index out of range");
    values[idx] = entry[1].get<double>();
  }
  return BehaviorDescriptor(std::move(values));
}

json encode(const Genome& g) {
  const auto p = g.params();
  return {{"env", to_string(g.env())},
          {"side", to_string(g.side())},
          {"params", std::vector<double>(p.begin(), p.end())}};
}

Genome decode_genome(const json& j) {
  try {
    return Genome(side_from_string(get<std::string>(j, "side")),
                  env_from_string(get<std::string>(j, "env")), params_of(field(j, "params")));
  } catch (const ConfigError& e) {
    throw DataIntegrityError(std::string("genome: ") + e.what());
  }
}

json encode(const EliteEntry& e) {
  return {{"fitness", e.fitness}, {"behavior", encode(e.behavior)}, {"genome", encode(e.genome)}};
}

EliteEntry decode_elite(const json& j) {
  return {decode_genome(field(j, "genome")), get<double>(j, "fitness"),
          decode_behavior(field(j, "behavior"))};
}

json encode(const GrowingArchive& a, bool with_backups) {
  json centroids = json::array();
  for (const auto& c : a.centroids()) centroids.push_back(encode(c));
  json elites = json::array();
  for (const auto& e : a.elites()) elites.push_back(encode(e));
  json out{{"capacity", a.capacity()},
           {"backup_cap", a.backup_cap()},
           {"centroids", std::move(centroids)},
           {"elites", std::move(elites)}};
  if (with_backups) {
    json backups = json::array();
    for (const auto& list : a.backups()) {
      json cell = json::array();
      for (const auto& e : list) cell.push_back(encode(e));
      backups.push_back(std::move(cell));
    }
    out["backups"] = std::move(backups);
  }
  return out;
}

GrowingArchive decode_archive(const json& j) {
  std::vector<BehaviorDescriptor> centroids;
  for (const auto& c : field(j, "centroids")) centroids.push_back(decode_behavior(c));
  std::vector<EliteEntry> elites;
  for (const auto& e : field(j, "elites")) elites.push_back(decode_elite(e));
  std::vector<std::vector<EliteEntry>> backups;
  if (j.contains("backups")) {
    for (const auto& cell : j.at("backups")) {
      auto& list = backups.emplace_back();
      for (const auto& e : cell) list.push_back(decode_elite(e));
    }
  } else {
    for (const auto& e : elites) backups.push_back({e});
  }
  return GrowingArchive::restore(get<std::size_t>(j, "capacity"), get<std::size_t>(j, "backup_cap"),
                                 std::move(centroids), std::move(elites), std::move(backups));
}

json encode(const TaskSet& t) {
  json genomes = json::array();
  for (const auto& g : t.tasks) {
    const auto p = g.params();
    genomes.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return {{"side", to_string(t.side)},
          {"generation", t.generation},
          {"labels", t.labels},
          {"genomes", std::move(genomes)}};
}

TaskSet decode_task_set(const json& j, EnvId env) {
  TaskSet t;
  t.side = side_from_string(get<std::string>(j, "side"));
  t.generation = get<int>(j, "generation");
  t.labels = get<std::vector<std::string>>(j, "labels");
  try {
    for (const auto& g : field(j, "genomes")) t.tasks.emplace_back(t.side, env, params_of(g));
  } catch (const ConfigError& e) {
    throw DataIntegrityError(std::string("task set: ") + e.what());
  }
  if (t.tasks.size() != t.labels.size()) throw DataIntegrityError("task set: label count mismatch");
  return t;
}

json encode(const BootstrapRecord& r) {
  return {{"task", r.task},
          {"fitness", r.fitness},
          {"behavior", encode(r.behavior)},
          {"genome", encode(r.genome)}};
}

BootstrapRecord decode_bootstrap(const json& j) {
  return {get<std::size_t>(j, "task"), decode_genome(field(j, "genome")), get<double>(j, "fitness"),
          decode_behavior(field(j, "behavior"))};
}

json encode(const RunConfig& c) {
  json out = json::object();
  for (const auto& [k, v] : to_key_values(c)) out[k] = v;
  return out;
}

RunConfig decode_config(const json& j) {
  KeyValues kv;
  try {
    for (const auto& [k, v] : j.items()) kv.emplace(k, v.get<std::string>());
    RunConfig c = run_config_from(kv);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw DataIntegrityError(std::string("config: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataIntegrityError(std::string("config: ") + e.what());
  }
}

json encode(const EvaluationRecord& r) {
  json provenance;
  if (r.provenance.kind == CandidateProvenance::Kind::kRandom) {
    provenance = {{"kind", "random"}};
  } else {
    provenance = {{"kind", "mutation"},
                  {"parent_task", r.provenance.parent_task},
                  {"parent_cell", r.provenance.parent_cell}};
  }
  static constexpr const char* kUpdate[] = {"appended", "grew", "improved", "rejected"};
  return {{"gen", r.generation},
          {"iter", r.iteration},
          {"task_id", r.task},
          {"candidate_provenance", std::move(provenance)},
          {"fitness", r.fitness},
          {"update", kUpdate[static_cast<int>(r.update)]},
          {"behavior", encode(r.behavior)}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataIntegrityError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataIntegrityError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + tmp.string());
    out << text;
    if (!out) throw UsageError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(1) + "\n"); }

}  // namespace gameqd::io
