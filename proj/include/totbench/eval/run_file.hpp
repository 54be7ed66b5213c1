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

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/eval/metrics.hpp"

namespace totbench::eval {

struct RunEntry {
    std::string request_id;
    std::string doc_id;
    std::uint32_t rank = 0;
    double score = 0.0;

    friend auto operator==(const RunEntry&, const RunEntry&) -> bool = default;
};

/// request_id -> entries in rank order.
using TrecRun = std::map<std::string, std::vector<RunEntry>>;

[[nodiscard]] inline auto format_score(double score) -> std::string {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    return buf;
}

/// TREC run lines: `request_id Q0 doc_id rank score run_tag`.
inline void write_run(std::ostream& out, const TrecRun& run, const std::string& tag) {
    for (const auto& [rid, entries] : run) {
        for (const auto& e : entries) {
            out << rid << " Q0 " << e.doc_id << ' ' << e.rank << ' ' << format_score(e.score) << ' ' << tag << '\n';
        }
    }
}

inline void save_run(const std::filesystem::path& path, const TrecRun& run, const std::string& tag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    write_run(out, run, tag);
}

[[nodiscard]] inline auto load_run(const std::filesystem::path& path) -> TrecRun {
    auto in = detail::open_lines(path);
    TrecRun run;
    std::map<std::string, std::set<std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        std::istringstream ss(line);
        RunEntry e;
        std::string q0;
        std::string tag;
        long long rank = 0;
        if (!(ss >> e.request_id >> q0 >> e.doc_id >> rank >> e.score >> tag) || rank < 1) {
            throw DataError(detail::where(path, line_no) + "expected 'request_id Q0 doc_id rank score run_tag'");
        }
        if (!seen[e.request_id].insert(e.doc_id).second) {
            throw DataError(detail::where(path, line_no) + "document " + e.doc_id + " listed twice for request " +
                            e.request_id);
        }
        e.rank = static_cast<std::uint32_t>(rank);
        run[e.request_id].push_back(std::move(e));
    }
    for (auto& [rid, entries] : run) {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const RunEntry& a, const RunEntry& b) { return a.rank < b.rank; });
    }
    return run;
}

/// Scores a run against qrels. Every judged request is evaluated; one absent
/// from the run, or whose answer is missing or below `depth`, is NOT_FOUND.
/// Position in the sorted list is used as the rank.
[[nodiscard]] inline auto evaluate_run(const TrecRun& run, const Qrels& qrels, const std::vector<std::uint32_t>& ks,
                                       std::uint32_t depth = kDefaultDepth) -> RunResult {
    if (qrels.size() == 0) {
        throw DataError("qrels contain no judged requests");
    }
    std::vector<RequestOutcome> outcomes;
    for (const auto& [rid, relevant] : qrels.entries()) {
        RequestOutcome o{rid, std::nullopt};
        if (auto it = run.find(rid); it != run.end()) {
            const auto& entries = it->second;
            for (std::size_t i = 0; i < entries.size() && i < depth; ++i) {
                if (entries[i].doc_id == relevant) {
                    o.rank = static_cast<std::uint32_t>(i + 1);
                    break;
                }
            }
        }
        outcomes.push_back(std::move(o));
    }
    return summarize(std::move(outcomes), ks);
}

}  // namespace totbench::eval
