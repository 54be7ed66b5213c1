// Copyright 2026 The tot-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "totbench/checksum.hpp"
#include "totbench/error.hpp"

namespace totbench {

struct FileRecord {
    std::string path;
    std::string crc32;
    std::uintmax_t bytes = 0;
};

[[nodiscard]] inline auto record_file(const std::filesystem::path& path) -> FileRecord {
    if (!std::filesystem::exists(path)) {
        throw DataError("file not found: " + path.string());
    }
    return {std::filesystem::absolute(path).lexically_normal().string(), file_crc32_hex(path),
            std::filesystem::file_size(path)};
}

/// What one subcommand read and wrote.
struct ManifestEntry {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<FileRecord> inputs;
    std::vector<FileRecord> outputs;
    nlohmann::ordered_json settings = nlohmann::ordered_json::object();
};

namespace detail {

inline auto to_json(const FileRecord& f) -> nlohmann::ordered_json {
    return {{"path", f.path}, {"crc32", f.crc32}, {"bytes", f.bytes}};
}

inline auto records_from(const nlohmann::json& arr) -> std::vector<FileRecord> {
    std::vector<FileRecord> out;
    for (const auto& f : arr) {
        out.push_back({f.at("path").get<std::string>(), f.at("crc32").get<std::string>(),
                       f.at("bytes").get<std::uintmax_t>()});
    }
    return out;
}

}  // namespace detail

inline constexpr const char* kManifestName = "manifest.json";

/// Adds or replaces `entry` in <dir>/manifest.json. Entries are keyed by
/// command so reruns overwrite rather than accumulate. No timestamps, so
/// reruns leave identical bytes.
inline void update_manifest(const std::filesystem::path& dir, const ManifestEntry& entry) {
    std::filesystem::create_directories(dir);
    const auto path = dir / kManifestName;
    nlohmann::ordered_json doc;
    if (std::filesystem::exists(path)) {
        try {
            doc = nlohmann::ordered_json::parse(read_file(path));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(path.string() + ": unreadable manifest: " + e.what());
        }
    }
    if (!doc.is_object() || !doc.contains("runs")) {
        doc = {{"tool", "tot-bench"}, {"format", 1}, {"runs", nlohmann::ordered_json::object()}};
    }
    nlohmann::ordered_json run;
    run["config_hash"] = entry.config_hash;
    run["seed"] = entry.seed;
    run["settings"] = entry.settings;
    run["inputs"] = nlohmann::ordered_json::array();
    for (const auto& f : entry.inputs) {
        run["inputs"].push_back(detail::to_json(f));
    }
    run["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : entry.outputs) {
        run["outputs"].push_back(detail::to_json(f));
    }
    doc["runs"][entry.command] = std::move(run);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

struct ManifestProblem {
    std::string command;
    std::string path;
    std::string detail;
};

/// Re-hashes every recorded file; an empty result means nothing changed.
[[nodiscard]] inline auto verify_manifest(const std::filesystem::path& manifest_path) -> std::vector<ManifestProblem> {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(manifest_path.string() + ": unreadable manifest: " + e.what());
    }
    std::vector<ManifestProblem> problems;
    try {
        for (const auto& [command, run] : doc.at("runs").items()) {
            for (const char* kind : {"inputs", "outputs"}) {
                for (const auto& f : detail::records_from(run.at(kind))) {
                    if (!std::filesystem::exists(f.path)) {
                        problems.push_back({command, f.path, "missing"});
                        continue;
                    }
                    auto now = file_crc32_hex(f.path);
                    if (now != f.crc32) {
                        problems.push_back({command, f.path, "checksum " + now + " != recorded " + f.crc32});
                    }
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(manifest_path.string() + ": malformed manifest: " + e.what());
    }
    return problems;
}

}  // namespace totbench
