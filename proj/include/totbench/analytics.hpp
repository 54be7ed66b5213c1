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
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/taxonomy.hpp"

namespace totbench::analytics {

struct CodeFrequency {
    CodeId code{};
    std::size_t sentences = 0;
    std::size_t requests = 0;
    double sentence_frequency = 0.0;
    double request_frequency = 0.0;
};

struct FrequencyReport {
    std::size_t total_sentences = 0;
    std::size_t total_requests = 0;
    std::vector<CodeFrequency> codes;  // taxonomy order
};

[[nodiscard]] inline auto code_frequencies(const std::vector<TOTRequest>& requests) -> FrequencyReport {
    FrequencyReport report;
    report.total_requests = requests.size();
    std::array<std::size_t, kNumCodes> sentence_counts{};
    std::array<std::size_t, kNumCodes> request_counts{};
    for (const auto& r : requests) {
        CodeSet seen;
        for (const auto& s : r.sentences) {
            ++report.total_sentences;
            for (auto id : s.codes.ids()) {
                ++sentence_counts[to_index(id)];
            }
            seen |= s.codes;
        }
        for (auto id : seen.ids()) {
            ++request_counts[to_index(id)];
        }
    }
    if (report.total_sentences == 0) {
        throw DataError("code frequencies need at least one annotated sentence");
    }
    for (auto id : CodeTaxonomy::all()) {
        auto i = to_index(id);
        report.codes.push_back({id, sentence_counts[i], request_counts[i],
                                static_cast<double>(sentence_counts[i]) / static_cast<double>(report.total_sentences),
                                static_cast<double>(request_counts[i]) / static_cast<double>(report.total_requests)});
    }
    return report;
}

/// 2x2 presence table for one code: both yes (a), A only (b), B only (c),
/// both no (d).
struct ConfusionCounts {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    [[nodiscard]] auto total() const -> std::uint64_t { return a + b + c + d; }
    friend auto operator==(const ConfusionCounts&, const ConfusionCounts&) -> bool = default;
};

/// Cohen's kappa. nullopt when chance agreement is 1 but observed agreement
/// is not (undefined). Evaluated as (n(a+d) - E) / (n^2 - E) with
/// E = (a+b)(a+c) + (c+d)(b+d), so integer inputs lose nothing before the
/// final division (exact whenever n^2 < 2^53).
[[nodiscard]] inline auto cohens_kappa(const ConfusionCounts& m) -> std::optional<double> {
    const auto n = m.total();
    if (n == 0) {
        throw UsageError("Cohen's kappa of an empty confusion table");
    }
    using Wide = long double;
    const Wide nn = static_cast<Wide>(n);
    const Wide agree = static_cast<Wide>(m.a + m.d);
    const Wide expected = static_cast<Wide>(m.a + m.b) * static_cast<Wide>(m.a + m.c) +
                          static_cast<Wide>(m.c + m.d) * static_cast<Wide>(m.b + m.d);
    const Wide denom = nn * nn - expected;
    if (denom == 0) {
        if (agree == nn) {
            return 1.0;
        }
        return std::nullopt;
    }
    return static_cast<double>(nn * agree - expected) / static_cast<double>(denom);
}

/// log2(n_ab * N / (n_a * n_b)); nullopt when n_ab = 0.
[[nodiscard]] inline auto pmi(std::uint64_t n_a, std::uint64_t n_b, std::uint64_t n_ab, std::uint64_t total)
    -> std::optional<double> {
    if (n_ab > n_a || n_ab > n_b || total < std::max(n_a, n_b)) {
        throw UsageError("inconsistent PMI counts (n_a=" + std::to_string(n_a) + ", n_b=" + std::to_string(n_b) +
                         ", n_ab=" + std::to_string(n_ab) + ", N=" + std::to_string(total) + ")");
    }
    if (n_ab == 0) {
        return std::nullopt;
    }
    using Wide = long double;
    const Wide num = static_cast<Wide>(n_ab) * static_cast<Wide>(total);
    const Wide den = static_cast<Wide>(n_a) * static_cast<Wide>(n_b);
    return std::log2(static_cast<double>(num) / static_cast<double>(den));
}

enum class CooccurrenceLevel { Sentence, Request };

struct CooccurrenceRow {
    CodeId code{};
    std::uint64_t n_anchor = 0;
    std::uint64_t n_code = 0;
    std::uint64_t n_joint = 0;
    double pmi = 0.0;
};

struct CooccurrenceReport {
    CodeId anchor{};
    CooccurrenceLevel level = CooccurrenceLevel::Sentence;
    std::uint64_t total_units = 0;
    std::vector<CooccurrenceRow> rows;
};

/// Code sets of the counting units: sentences, or whole requests.
[[nodiscard]] inline auto cooccurrence_units(const std::vector<TOTRequest>& requests, CooccurrenceLevel level)
    -> std::vector<CodeSet> {
    std::vector<CodeSet> units;
    for (const auto& r : requests) {
        if (level == CooccurrenceLevel::Sentence) {
            for (const auto& s : r.sentences) {
                units.push_back(s.codes);
            }
        } else {
            CodeSet all;
            for (const auto& s : r.sentences) {
                all |= s.codes;
            }
            units.push_back(all);
        }
    }
    return units;
}

/// Codes with positive PMI against `anchor`, highest first; ties in
/// taxonomy order.
[[nodiscard]] inline auto pmi_table(const std::vector<TOTRequest>& requests, CodeId anchor,
                                    CooccurrenceLevel level = CooccurrenceLevel::Sentence) -> CooccurrenceReport {
    CooccurrenceReport report;
    report.anchor = anchor;
    report.level = level;
    auto units = cooccurrence_units(requests, level);
    report.total_units = units.size();
    std::array<std::uint64_t, kNumCodes> marginal{};
    std::array<std::uint64_t, kNumCodes> joint{};
    for (const auto& u : units) {
        const bool has_anchor = u.contains(anchor);
        for (auto id : u.ids()) {
            ++marginal[to_index(id)];
            if (has_anchor) {
                ++joint[to_index(id)];
            }
        }
    }
    const auto n_anchor = marginal[to_index(anchor)];
    for (auto id : CodeTaxonomy::all()) {
        if (id == anchor) {
            continue;
        }
        auto i = to_index(id);
        auto value = pmi(n_anchor, marginal[i], joint[i], report.total_units);
        if (value && *value > 0.0) {
            report.rows.push_back({id, n_anchor, marginal[i], joint[i], *value});
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const CooccurrenceRow& x, const CooccurrenceRow& y) { return x.pmi > y.pmi; });
    return report;
}

struct DualAnnotation {
    std::string sentence_id;
    CodeSet annotator_a;
    CodeSet annotator_b;
};

/// JSONL: {"sentence_id": str, "annotator_a": [code], "annotator_b": [code]}.
[[nodiscard]] inline auto load_dual_annotations(const std::filesystem::path& path) -> std::vector<DualAnnotation> {
    auto in = detail::open_lines(path);
    std::vector<DualAnnotation> out;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) {
            continue;
        }
        const auto loc = detail::where(path, line_no);
        auto obj = detail::parse_line(line, loc);
        DualAnnotation d;
        try {
            d.sentence_id = obj.at("sentence_id").get<std::string>();
            for (auto [key, target] : {std::pair{"annotator_a", &d.annotator_a}, std::pair{"annotator_b", &d.annotator_b}}) {
                for (const auto& name : obj.at(key)) {
                    auto id = CodeTaxonomy::find(name.get<std::string>());
                    if (!id) {
                        throw DataError(loc + "unknown code '" + name.get<std::string>() + "'");
                    }
                    target->insert(*id);
                }
            }
        } catch (const nlohmann::json::exception& e) {
            throw DataError(loc + "bad dual-annotation record: " + e.what());
        }
        if (!seen.insert(d.sentence_id).second) {
            throw DataError(loc + "duplicate sentence_id " + d.sentence_id);
        }
        out.push_back(std::move(d));
    }
    return out;
}

struct AgreementRow {
    CodeId code{};
    ConfusionCounts counts;
    std::optional<double> kappa;
};

struct AgreementReport {
    std::size_t sentences = 0;
    std::vector<AgreementRow> rows;  // taxonomy order
};

/// Per-code binary agreement over every dually annotated sentence.
[[nodiscard]] inline auto agreement(const std::vector<DualAnnotation>& sentences) -> AgreementReport {
    if (sentences.empty()) {
        throw DataError("agreement needs at least one dually annotated sentence");
    }
    AgreementReport report;
    report.sentences = sentences.size();
    for (auto id : CodeTaxonomy::all()) {
        AgreementRow row;
        row.code = id;
        for (const auto& s : sentences) {
            const bool x = s.annotator_a.contains(id);
            const bool y = s.annotator_b.contains(id);
            ++(x ? (y ? row.counts.a : row.counts.b) : (y ? row.counts.c : row.counts.d));
        }
        row.kappa = cohens_kappa(row.counts);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace totbench::analytics
