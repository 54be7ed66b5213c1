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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/eval/metrics.hpp"
#include "totbench/eval/run_file.hpp"
#include "totbench/index.hpp"
#include "totbench/parallel.hpp"
#include "totbench/retrieval.hpp"
#include "totbench/rng.hpp"
#include "totbench/taxonomy.hpp"
#include "totbench/textproc/pipeline.hpp"

namespace totbench::eval {

struct ExperimentOptions {
    std::vector<std::uint32_t> ks{1, 10, 100};
    std::uint32_t depth = kDefaultDepth;
    unsigned threads = 1;
    bool weight_by_query_tf = false;
};

/// A request with its query analyzed and resolved against the index.
struct PreparedRequest {
    std::string request_id;
    DocOrdinal relevant = 0;
    PreparedQuery query;
};

/// Everything needed to rank requests against one index.
struct Workbench {
    const InvertedIndex& index;
    const textproc::Analyzer& analyzer;
    const Qrels& qrels;
};

/// Requests that have a judged answer, in input order.
[[nodiscard]] inline auto evaluable_requests(const std::vector<TOTRequest>& requests, const Qrels& qrels)
    -> std::vector<TOTRequest> {
    std::vector<TOTRequest> out;
    std::copy_if(requests.begin(), requests.end(), std::back_inserter(out),
                 [&](const TOTRequest& r) { return qrels.find(r.request_id) != nullptr; });
    return out;
}

[[nodiscard]] inline auto prepare_requests(const Workbench& wb, const std::vector<TOTRequest>& requests,
                                           const QueryStrategy& strategy, bool weight_by_query_tf = false)
    -> std::vector<PreparedRequest> {
    std::vector<PreparedRequest> out;
    out.reserve(requests.size());
    for (const auto& r : requests) {
        const auto* doc_id = wb.qrels.find(r.request_id);
        if (doc_id == nullptr) {
            throw DataError("request " + r.request_id + " has no entry in the qrels");
        }
        auto ordinal = wb.index.find_doc(*doc_id);
        if (!ordinal) {
            throw DataError("relevant document " + *doc_id + " of request " + r.request_id + " is not in the index");
        }
        out.push_back({r.request_id, *ordinal,
                       prepare_query(wb.index, wb.analyzer.analyze(formulate_query(r, strategy)), weight_by_query_tf)});
    }
    return out;
}

/// Rank of each request's answer; an empty query is NOT_FOUND.
[[nodiscard]] inline auto rank_prepared(const InvertedIndex& index, const Bm25Params& params,
                                        const std::vector<PreparedRequest>& prepared, std::uint32_t depth,
                                        unsigned threads) -> std::vector<RequestOutcome> {
    std::vector<RequestOutcome> out(prepared.size());
    parallel_chunks(prepared.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
        Bm25Scorer scorer(index, params);
        for (auto i = begin; i < end; ++i) {
            const auto& p = prepared[i];
            out[i].request_id = p.request_id;
            out[i].rank = p.query.empty() ? std::nullopt : scorer.rank_of(p.query, p.relevant, depth);
        }
    });
    return out;
}

[[nodiscard]] inline auto run_experiment(const Workbench& wb, const Bm25Params& params,
                                         const std::vector<TOTRequest>& requests, const QueryStrategy& strategy,
                                         const ExperimentOptions& options = {}) -> RunResult {
    if (requests.empty()) {
        throw DataError("no requests to evaluate");
    }
    auto prepared = prepare_requests(wb, requests, strategy, options.weight_by_query_tf);
    return summarize(rank_prepared(wb.index, params, prepared, options.depth, options.threads), options.ks);
}

/// Top-k hits per request, for writing TREC runs.
[[nodiscard]] inline auto retrieve(const InvertedIndex& index, const textproc::Analyzer& analyzer,
                                   const Bm25Params& params, const std::vector<TOTRequest>& requests,
                                   const QueryStrategy& strategy, std::size_t k, unsigned threads = 1,
                                   bool weight_by_query_tf = false) -> TrecRun {
    std::vector<std::vector<ScoredHit>> hits(requests.size());
    parallel_chunks(requests.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
        Bm25Scorer scorer(index, params);
        for (auto i = begin; i < end; ++i) {
            auto stems = analyzer.analyze(formulate_query(requests[i], strategy));
            hits[i] = scorer.top_k(prepare_query(index, stems, weight_by_query_tf), k);
        }
    });
    TrecRun run;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        auto& entries = run[requests[i].request_id];
        for (auto& h : hits[i]) {
            entries.push_back({requests[i].request_id, std::move(h.doc_id), h.rank, h.score});
        }
    }
    return run;
}

struct RequestSplit {
    std::vector<TOTRequest> tune;
    std::vector<TOTRequest> heldout;
};

/// Sorts by request_id, shuffles with `seed`, and puts the first
/// ceil(fraction * n) requests in the tune split.
[[nodiscard]] inline auto split_requests(std::vector<TOTRequest> requests, std::uint64_t seed, double fraction = 0.2)
    -> RequestSplit {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw UsageError("tune fraction must lie in (0, 1]");
    }
    if (requests.empty()) {
        throw DataError("tune split is empty: no evaluable requests");
    }
    std::sort(requests.begin(), requests.end(),
              [](const TOTRequest& a, const TOTRequest& b) { return a.request_id < b.request_id; });
    Rng rng(seed);
    rng.shuffle(requests);
    const auto n = requests.size();
    auto n_tune = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    n_tune = std::clamp<std::size_t>(n_tune, 1, n);
    RequestSplit split;
    split.tune.assign(std::make_move_iterator(requests.begin()),
                      std::make_move_iterator(requests.begin() + static_cast<std::ptrdiff_t>(n_tune)));
    split.heldout.assign(std::make_move_iterator(requests.begin() + static_cast<std::ptrdiff_t>(n_tune)),
                         std::make_move_iterator(requests.end()));
    return split;
}

/// k1 in {0.1, ..., 3.0} by 0.1, b in {0.00, ..., 1.00} by 0.05.
[[nodiscard]] inline auto default_grid() -> std::vector<Bm25Params> {
    std::vector<Bm25Params> grid;
    for (int i = 1; i <= 30; ++i) {
        for (int j = 0; j <= 20; ++j) {
            grid.push_back({i / 10.0, j / 20.0});
        }
    }
    return grid;
}

struct GridScore {
    Bm25Params params;
    double value = 0.0;
};

struct TuneResult {
    Bm25Params best;
    double best_value = 0.0;
    Metric objective;
    std::size_t tune_requests = 0;
    std::vector<GridScore> scores;
};

/// Exhaustive grid search. The best objective wins; ties go to the smallest
/// (k1, b).
[[nodiscard]] inline auto tune(const Workbench& wb, const std::vector<TOTRequest>& tune_requests,
                               const QueryStrategy& strategy, const std::vector<Bm25Params>& grid,
                               const Metric& objective = Metric::success(10), const ExperimentOptions& options = {})
    -> TuneResult {
    if (grid.empty()) {
        throw UsageError("tuning grid is empty");
    }
    for (const auto& p : grid) {
        p.validate();
    }
    if (tune_requests.empty()) {
        throw DataError("tune split is empty");
    }
    auto prepared = prepare_requests(wb, tune_requests, strategy, options.weight_by_query_tf);
    TuneResult result;
    result.objective = objective;
    result.tune_requests = tune_requests.size();
    result.scores.resize(grid.size());
    parallel_for(grid.size(), options.threads, [&](std::size_t g) {
        auto outcomes = rank_prepared(wb.index, grid[g], prepared, options.depth, 1);
        std::vector<RelevantRank> ranks;
        ranks.reserve(outcomes.size());
        for (const auto& o : outcomes) {
            ranks.push_back(o.rank);
        }
        result.scores[g] = {grid[g], objective.aggregate(ranks)};
    });
    const GridScore* best = nullptr;
    for (const auto& s : result.scores) {
        if (best == nullptr || s.value > best->value || (s.value == best->value && s.params < best->params)) {
            best = &s;
        }
    }
    result.best = best->params;
    result.best_value = best->value;
    return result;
}

struct AblationSpec {
    std::string label;
    CodeSet codes;
    std::string group;
    bool aggregate = false;
};

struct AblationRow {
    std::string label;
    std::string group;
    bool aggregate = false;
    std::size_t subset_size = 0;
    double frequency = 0.0;
    std::optional<double> all;
    std::optional<double> ablated;
    std::optional<double> absolute;
    std::optional<double> relative;

    /// Empty subset, or zero baseline so the relative change is undefined.
    [[nodiscard]] auto flagged() const -> bool { return !relative.has_value(); }
};

struct AblationReport {
    Metric metric;
    std::size_t num_requests = 0;
    std::vector<AblationRow> rows;
};

[[nodiscard]] inline auto ablation_group(CodeCategory c) -> std::string {
    switch (c) {
    case CodeCategory::Movie: return "Movie";
    case CodeCategory::Context: return "Context";
    default: return "Other";
    }
}

/// Fraction of requests with at least one sentence carrying any of `codes`.
[[nodiscard]] inline auto request_frequency(const std::vector<TOTRequest>& requests, const CodeSet& codes) -> double {
    if (requests.empty()) {
        return 0.0;
    }
    auto n = std::count_if(requests.begin(), requests.end(), [&](const TOTRequest& r) { return r.has_any_code(codes); });
    return static_cast<double>(n) / static_cast<double>(requests.size());
}

/// One row per code present in more than `min_frequency` of the requests,
/// plus an "(all)" row for the Movie and Context groups that have any.
[[nodiscard]] inline auto default_ablation_specs(const std::vector<TOTRequest>& requests, double min_frequency = 0.2)
    -> std::vector<AblationSpec> {
    std::vector<AblationSpec> specs;
    for (auto category : {CodeCategory::Movie, CodeCategory::Context}) {
        auto all = category_codes(category);
        if (request_frequency(requests, all) > min_frequency) {
            specs.push_back({std::string(category_name(category)) + " (all)", all, ablation_group(category), true});
        }
    }
    for (auto id : CodeTaxonomy::all()) {
        CodeSet one{id};
        if (request_frequency(requests, one) > min_frequency) {
            specs.push_back({std::string(CodeTaxonomy::name(id)), one, ablation_group(CodeTaxonomy::category(id)), false});
        }
    }
    return specs;
}

/// Specs for explicit code names; "Movie (all)" style names select a whole
/// category.
[[nodiscard]] inline auto ablation_specs_for(const std::vector<std::string>& names) -> std::vector<AblationSpec> {
    std::vector<AblationSpec> specs;
    for (const auto& raw : names) {
        auto key = canonical_code_key(raw);
        bool matched = false;
        for (auto category : {CodeCategory::Movie, CodeCategory::Context}) {
            auto label = std::string(category_name(category)) + " (all)";
            if (key == canonical_code_key(label)) {
                specs.push_back({label, category_codes(category), ablation_group(category), true});
                matched = true;
            }
        }
        if (matched) {
            continue;
        }
        auto id = CodeTaxonomy::find(raw);
        if (!id) {
            throw UsageError("unknown code '" + raw + "'");
        }
        specs.push_back({std::string(CodeTaxonomy::name(*id)), CodeSet{*id}, ablation_group(CodeTaxonomy::category(*id)),
                         false});
    }
    return specs;
}

/// For each spec: the subset of requests carrying it, scored with the full
/// query and with those sentences removed. Rows come out grouped Movie,
/// Context, Other; each group's "(all)" row first, the rest by ascending
/// relative change, flagged rows last.
[[nodiscard]] inline auto run_ablation(const Workbench& wb, const Bm25Params& params,
                                       const std::vector<TOTRequest>& requests, const std::vector<AblationSpec>& specs,
                                       QueryFields fields = QueryFields::TitleDescription,
                                       const Metric& metric = Metric::success(10), const ExperimentOptions& options = {})
    -> AblationReport {
    AblationReport report;
    report.metric = metric;
    report.num_requests = requests.size();
    auto baseline_prepared = prepare_requests(wb, requests, {fields, {}}, options.weight_by_query_tf);
    auto baseline = rank_prepared(wb.index, params, baseline_prepared, options.depth, options.threads);

    for (const auto& spec : specs) {
        AblationRow row;
        row.label = spec.label;
        row.group = spec.group;
        row.aggregate = spec.aggregate;
        std::vector<TOTRequest> subset;
        std::vector<RelevantRank> all_ranks;
        for (std::size_t i = 0; i < requests.size(); ++i) {
            if (requests[i].has_any_code(spec.codes)) {
                subset.push_back(requests[i]);
                all_ranks.push_back(baseline[i].rank);
            }
        }
        row.subset_size = subset.size();
        row.frequency = requests.empty() ? 0.0 : static_cast<double>(subset.size()) / static_cast<double>(requests.size());
        if (!subset.empty()) {
            auto prepared = prepare_requests(wb, subset, {fields, spec.codes}, options.weight_by_query_tf);
            auto ablated = rank_prepared(wb.index, params, prepared, options.depth, options.threads);
            std::vector<RelevantRank> ablated_ranks;
            for (const auto& o : ablated) {
                ablated_ranks.push_back(o.rank);
            }
            row.all = metric.aggregate(all_ranks);
            row.ablated = metric.aggregate(ablated_ranks);
            row.absolute = *row.ablated - *row.all;
            if (*row.all > 0.0) {
                row.relative = *row.absolute / *row.all;
            }
        }
        report.rows.push_back(std::move(row));
    }

    auto group_rank = [](const std::string& g) { return g == "Movie" ? 0 : g == "Context" ? 1 : 2; };
    std::stable_sort(report.rows.begin(), report.rows.end(), [&](const AblationRow& a, const AblationRow& b) {
        if (group_rank(a.group) != group_rank(b.group)) {
            return group_rank(a.group) < group_rank(b.group);
        }
        if (a.aggregate != b.aggregate) {
            return a.aggregate;
        }
        if (a.flagged() != b.flagged()) {
            return b.flagged();
        }
        return !a.flagged() && *a.relative < *b.relative;
    });
    return report;
}

}  // namespace totbench::eval
