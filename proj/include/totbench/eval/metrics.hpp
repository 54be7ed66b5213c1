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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "totbench/error.hpp"
#include "totbench/retrieval.hpp"

namespace totbench::eval {

[[nodiscard]] inline auto reciprocal_rank(const RelevantRank& r) -> double { return r ? 1.0 / *r : 0.0; }

[[nodiscard]] inline auto hit_at(const RelevantRank& r, std::uint32_t k) -> double { return r && *r <= k ? 1.0 : 0.0; }

[[nodiscard]] inline auto success_at_k(const std::vector<RelevantRank>& ranks, std::uint32_t k) -> double {
    if (ranks.empty()) {
        throw UsageError("success@k of an empty rank list");
    }
    if (k == 0) {
        throw UsageError("success@k needs k >= 1");
    }
    std::size_t hits = 0;
    for (const auto& r : ranks) {
        hits += r && *r <= k ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

[[nodiscard]] inline auto mrr(const std::vector<RelevantRank>& ranks) -> double {
    if (ranks.empty()) {
        throw UsageError("MRR of an empty rank list");
    }
    double sum = 0.0;
    for (const auto& r : ranks) {
        sum += reciprocal_rank(r);
    }
    return sum / static_cast<double>(ranks.size());
}

/// The figure a report optimizes or compares: success@k or MRR.
struct Metric {
    enum class Kind { Success, Mrr };
    Kind kind = Kind::Success;
    std::uint32_t k = 10;

    [[nodiscard]] static auto success(std::uint32_t k) -> Metric { return {Kind::Success, k}; }
    [[nodiscard]] static auto reciprocal() -> Metric { return {Kind::Mrr, 0}; }

    [[nodiscard]] auto name() const -> std::string {
        return kind == Kind::Mrr ? std::string("MRR") : "success@" + std::to_string(k);
    }

    [[nodiscard]] auto per_query(const RelevantRank& r) const -> double {
        return kind == Kind::Mrr ? reciprocal_rank(r) : hit_at(r, k);
    }

    [[nodiscard]] auto aggregate(const std::vector<RelevantRank>& ranks) const -> double {
        return kind == Kind::Mrr ? mrr(ranks) : success_at_k(ranks, k);
    }

    friend auto operator==(const Metric&, const Metric&) -> bool = default;
};

/// "mrr" or "success@K" (also "s@K").
[[nodiscard]] inline auto parse_metric(std::string_view s) -> Metric {
    if (s == "mrr" || s == "MRR") {
        return Metric::reciprocal();
    }
    for (std::string_view prefix : {"success@", "s@"}) {
        if (s.substr(0, prefix.size()) == prefix) {
            try {
                std::size_t used = 0;
                auto digits = std::string(s.substr(prefix.size()));
                auto k = std::stoul(digits, &used);
                if (used == digits.size() && k >= 1) {
                    return Metric::success(static_cast<std::uint32_t>(k));
                }
            } catch (const std::exception&) {
            }
        }
    }
    throw UsageError("unknown metric '" + std::string(s) + "' (expected mrr or success@K)");
}

struct RequestOutcome {
    std::string request_id;
    RelevantRank rank;

    friend auto operator==(const RequestOutcome&, const RequestOutcome&) -> bool = default;
};

/// Per-request ranks in request_id order plus the aggregates.
struct RunResult {
    std::vector<RequestOutcome> outcomes;
    std::map<std::uint32_t, double> success;
    double mrr = 0.0;

    [[nodiscard]] auto ranks() const -> std::vector<RelevantRank> {
        std::vector<RelevantRank> out;
        out.reserve(outcomes.size());
        for (const auto& o : outcomes) {
            out.push_back(o.rank);
        }
        return out;
    }

    [[nodiscard]] auto per_query(const Metric& m) const -> std::vector<double> {
        std::vector<double> out;
        out.reserve(outcomes.size());
        for (const auto& o : outcomes) {
            out.push_back(m.per_query(o.rank));
        }
        return out;
    }

    [[nodiscard]] auto value(const Metric& m) const -> double { return m.aggregate(ranks()); }
};

[[nodiscard]] inline auto summarize(std::vector<RequestOutcome> outcomes, const std::vector<std::uint32_t>& ks)
    -> RunResult {
    std::sort(outcomes.begin(), outcomes.end(),
              [](const RequestOutcome& a, const RequestOutcome& b) { return a.request_id < b.request_id; });
    RunResult result;
    result.outcomes = std::move(outcomes);
    auto ranks = result.ranks();
    for (auto k : ks) {
        result.success[k] = success_at_k(ranks, k);
    }
    result.mrr = mrr(ranks);
    return result;
}

}  // namespace totbench::eval
