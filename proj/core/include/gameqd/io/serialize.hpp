#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gameqd/archive/growing_archive.hpp"
#include "gameqd/config.hpp"
#include "gameqd/mtmb/mtmb.hpp"
#include "gameqd/types.hpp"

// JSON encodings of the domain types. Doubles are written in shortest
// round-trip form, so decode(encode(x)) is bit-identical. Behavior descriptors
// are sparse: {"size": n, "nz": [[index, value], ...]}.
namespace gameqd::io {

using nlohmann::json;

std::string tool_version();

json encode(const BehaviorDescriptor& b);
BehaviorDescriptor decode_behavior(const json& j);

json encode(const Genome& g);
Genome decode_genome(const json& j);

json encode(const EliteEntry& e);
EliteEntry decode_elite(const json& j);

// With `with_backups` false only centroids and elites are written; decoding
// such a file restores each backup list as {elite}.
json encode(const GrowingArchive& a, bool with_backups = true);
GrowingArchive decode_archive(const json& j);

json encode(const TaskSet& t);
TaskSet decode_task_set(const json& j, EnvId env);

json encode(const BootstrapRecord& r);
BootstrapRecord decode_bootstrap(const json& j);

json encode(const RunConfig& c);
RunConfig decode_config(const json& j);

json encode(const EvaluationRecord& r);

// Reads a whole JSON file; parse failures become DataIntegrityError.
json read_json(const std::filesystem::path& path);
// Writes `j` (indented) plus a trailing newline, via a temporary file and
// rename so readers never see a partial document.
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace gameqd::io
