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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/index.hpp"
#include "totbench/taxonomy.hpp"
#include "totbench/textproc/pipeline.hpp"

namespace totbench {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    void validate() const {
        if (!(k1 >= 0.0) || !std::isfinite(k1)) {
            throw UsageError("BM25 k1 must be a finite non-negative number");
        }
        if (!(b >= 0.0 && b <= 1.0)) {
            throw UsageError("BM25 b must lie in [0, 1]");
        }
    }

    friend auto operator==(const Bm25Params&, const Bm25Params&) -> bool = default;
    friend auto operator<=>(const Bm25Params&, const Bm25Params&) = default;
};

/// idf(t) = ln((N - df + 0.5) / (df + 0.5) + 1). Positive for every df in [0, N].
[[nodiscard]] inline auto bm25_idf(std::uint32_t num_docs, std::uint32_t df) -> double {
    return std::log((num_docs - static_cast<double>(df) + 0.5) / (df + 0.5) + 1.0);
}

/// Query resolved against an index: in-vocabulary terms in ascending term id
/// order, each with its query weight (1, or its multiplicity under --tf-query).
struct PreparedQuery {
    std::vector<std::pair<TermId, double>> terms;

    [[nodiscard]] auto empty() const -> bool { return terms.empty(); }
};

[[nodiscard]] inline auto prepare_query(const InvertedIndex& index, const std::vector<std::string>& stems,
                                        bool weight_by_query_tf = false) -> PreparedQuery {
    std::map<TermId, double> weights;
    for (const auto& s : stems) {
        if (auto t = index.term_id(s)) {
            auto& w = weights[*t];
            w = weight_by_query_tf ? w + 1.0 : 1.0;
        }
    }
    PreparedQuery q;
    q.terms.assign(weights.begin(), weights.end());
    return q;
}

struct ScoredHit {
    DocOrdinal doc = 0;
    std::string doc_id;
    double score = 0.0;
    std::uint32_t rank = 0;
};

/// Rank of the relevant document, or nullopt for NOT_FOUND.
using RelevantRank = std::optional<std::uint32_t>;

inline constexpr std::uint32_t kDefaultDepth = 1000;

/// Term-at-a-time BM25 over a dense accumulator. One scorer per worker; the
/// index is shared read-only.
class Bm25Scorer {
  public:
    Bm25Scorer(const InvertedIndex& index, Bm25Params params) : index_(&index), params_(params) {
        params_.validate();
        const auto n = index.num_docs();
        const double avgdl = index.stats().avg_doc_length;
        norm_.resize(n);
        for (DocOrdinal d = 0; d < n; ++d) {
            // All lengths are zero when avgdl is; nothing is indexed then.
            const double ratio = avgdl > 0.0 ? index.doc_length(d) / avgdl : 0.0;
            norm_[d] = params_.k1 * (1.0 - params_.b + params_.b * ratio);
        }
        acc_.assign(n, 0.0);
    }

    [[nodiscard]] auto params() const -> const Bm25Params& { return params_; }
    [[nodiscard]] auto index() const -> const InvertedIndex& { return *index_; }

    /// Sparse scores of every document with a positive score, in ordinal order.
    [[nodiscard]] auto score(const PreparedQuery& query) -> std::vector<std::pair<DocOrdinal, double>> {
        accumulate(query);
        std::sort(touched_.begin(), touched_.end());
        std::vector<std::pair<DocOrdinal, double>> out;
        out.reserve(touched_.size());
        for (auto d : touched_) {
            if (acc_[d] > 0.0) {
                out.emplace_back(d, acc_[d]);
            }
        }
        reset();
        return out;
    }

    [[nodiscard]] auto top_k(const PreparedQuery& query, std::size_t k) -> std::vector<ScoredHit> {
        if (k == 0) {
            throw UsageError("search depth k must be at least 1");
        }
        accumulate(query);
        std::erase_if(touched_, [&](DocOrdinal d) { return !(acc_[d] > 0.0); });
        auto better = [&](DocOrdinal x, DocOrdinal y) { return acc_[x] > acc_[y] || (acc_[x] == acc_[y] && x < y); };
        const auto keep = std::min(k, touched_.size());
        std::partial_sort(touched_.begin(), touched_.begin() + static_cast<std::ptrdiff_t>(keep), touched_.end(),
                          better);
        std::vector<ScoredHit> hits;
        hits.reserve(keep);
        for (std::size_t i = 0; i < keep; ++i) {
            auto d = touched_[i];
            hits.push_back({d, index_->doc(d).doc_id, acc_[d], static_cast<std::uint32_t>(i + 1)});
        }
        reset();
        return hits;
    }

    /// Position `relevant` would take in the full ranking, or NOT_FOUND if it
    /// scores zero or falls below `depth`.
    [[nodiscard]] auto rank_of(const PreparedQuery& query, DocOrdinal relevant, std::uint32_t depth = kDefaultDepth)
        -> RelevantRank {
        accumulate(query);
        const double target = acc_[relevant];
        RelevantRank rank;
        if (target > 0.0) {
            std::uint32_t above = 0;
            for (auto d : touched_) {
                if (acc_[d] > target || (acc_[d] == target && d < relevant)) {
                    ++above;
                }
            }
            if (above < depth) {
                rank = above + 1;
            }
        }
        reset();
        return rank;
    }

  private:
    void accumulate(const PreparedQuery& query) {
        const double k1p1 = params_.k1 + 1.0;
        const auto n = index_->num_docs();
        for (auto [t, weight] : query.terms) {
            const double idf = bm25_idf(n, index_->df(t)) * weight;
            for (const auto& p : index_->postings(t)) {
                if (acc_[p.doc] == 0.0) {
                    touched_.push_back(p.doc);
                }
                const double tf = p.tf;
                acc_[p.doc] += idf * (tf * k1p1 / (tf + norm_[p.doc]));
            }
        }
    }

    void reset() {
        for (auto d : touched_) {
            acc_[d] = 0.0;
        }
        touched_.clear();
    }

    const InvertedIndex* index_;
    Bm25Params params_;
    std::vector<double> norm_;
    std::vector<double> acc_;
    std::vector<DocOrdinal> touched_;
};

/// Throws DataError when `analyzer` would not reproduce the index's analysis.
inline void check_compatible(const InvertedIndex& index, const textproc::Analyzer& analyzer) {
    auto expected = index.pipeline();
    auto actual = describe_pipeline(analyzer, expected.include_titles);
    if (expected.stemmer != actual.stemmer || expected.stopword_fingerprint != actual.stopword_fingerprint) {
        throw DataError("query pipeline (" + actual.stemmer + ", stopwords " + actual.stopword_fingerprint +
                        ") does not match index pipeline (" + expected.stemmer + ", stopwords " +
                        expected.stopword_fingerprint + ")");
    }
}

[[nodiscard]] inline auto bm25_score(const InvertedIndex& index, const Bm25Params& params,
                                     const std::vector<std::string>& query_stems, bool weight_by_query_tf = false)
    -> std::map<DocOrdinal, double> {
    Bm25Scorer scorer(index, params);
    auto sparse = scorer.score(prepare_query(index, query_stems, weight_by_query_tf));
    return {sparse.begin(), sparse.end()};
}

[[nodiscard]] inline auto search(const InvertedIndex& index, const Bm25Params& params,
                                 const textproc::Analyzer& analyzer, std::string_view query_text, std::size_t k,
                                 bool weight_by_query_tf = false) -> std::vector<ScoredHit> {
    Bm25Scorer scorer(index, params);
    return scorer.top_k(prepare_query(index, analyzer.analyze(query_text), weight_by_query_tf), k);
}

enum class QueryFields { Title, Description, TitleDescription };

[[nodiscard]] inline auto query_fields_name(QueryFields f) -> std::string_view {
    switch (f) {
    case QueryFields::Title: return "title";
    case QueryFields::Description: return "desc";
    case QueryFields::TitleDescription: return "both";
    }
    return "both";
}

[[nodiscard]] inline auto parse_query_fields(std::string_view s) -> QueryFields {
    if (s == "title") {
        return QueryFields::Title;
    }
    if (s == "desc" || s == "description") {
        return QueryFields::Description;
    }
    if (s == "both" || s == "title+desc") {
        return QueryFields::TitleDescription;
    }
    throw UsageError("unknown query strategy '" + std::string(s) + "' (expected title, desc or both)");
}

struct QueryStrategy {
    QueryFields fields = QueryFields::TitleDescription;
    CodeSet ablated_codes;
};

/// Description text with every sentence carrying an ablated code removed.
[[nodiscard]] inline auto filtered_description(const TOTRequest& request, const CodeSet& ablated) -> std::string {
    if (request.sentences.empty()) {
        return request.description;
    }
    std::string out;
    for (const auto& s : request.sentences) {
        if (s.codes.intersects(ablated)) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += s.text;
    }
    return out;
}

[[nodiscard]] inline auto formulate_query(const TOTRequest& request, const QueryStrategy& strategy) -> std::string {
    switch (strategy.fields) {
    case QueryFields::Title: return request.title;
    case QueryFields::Description: return filtered_description(request, strategy.ablated_codes);
    case QueryFields::TitleDescription: return request.title + " " + filtered_description(request, strategy.ablated_codes);
    }
    return {};
}

}  // namespace totbench
