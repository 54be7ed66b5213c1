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
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "totbench/analytics.hpp"
#include "totbench/eval/experiment.hpp"
#include "totbench/eval/metrics.hpp"
#include "totbench/eval/significance.hpp"
#include "totbench/index.hpp"

namespace totbench::report {

using Json = nlohmann::ordered_json;

inline auto fixed(double v, int digits = 4) -> std::string {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline auto percent(double fraction, int digits = 1) -> std::string { return fixed(100.0 * fraction, digits) + "%"; }

inline auto signed_fixed(double v, int digits = 4) -> std::string {
    return (v > 0 ? "+" : "") + fixed(v, digits);
}

inline auto optional_json(const std::optional<double>& v) -> Json { return v ? Json(*v) : Json(nullptr); }

inline auto rank_json(const RelevantRank& r) -> Json { return r ? Json(*r) : Json("NOT_FOUND"); }

/// Left-aligned first column, right-aligned rest, two-space gutters.
class Table {
  public:
    explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    [[nodiscard]] auto str() const -> std::string {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()), 0);
            for (std::size_t i = 0; i < r.size(); ++i) {
                width[i] = std::max(width[i], r[i].size());
            }
        }
        std::string out;
        for (std::size_t n = 0; n < rows_.size(); ++n) {
            const auto& r = rows_[n];
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const auto pad = std::string(width[i] - r[i].size(), ' ');
                line += i == 0 ? r[i] + pad : "  " + pad + r[i];
            }
            while (!line.empty() && line.back() == ' ') {
                line.pop_back();
            }
            out += line + '\n';
            if (n == 0) {
                std::size_t total = 0;
                for (std::size_t i = 0; i < width.size(); ++i) {
                    total += width[i] + (i ? 2 : 0);
                }
                out += std::string(total, '-') + '\n';
            }
        }
        return out;
    }

  private:
    std::vector<std::vector<std::string>> rows_;
};

[[nodiscard]] inline auto index_stats_json(const InvertedIndex& index) -> Json {
    Json j;
    j["num_docs"] = index.num_docs();
    j["avg_doc_length"] = index.stats().avg_doc_length;
    j["vocabulary_size"] = index.vocabulary_size();
    j["total_tokens"] = index.stats().total_tokens;
    j["total_postings"] = index.total_postings();
    j["include_titles"] = index.pipeline().include_titles;
    j["stemmer"] = index.pipeline().stemmer;
    j["stopword_fingerprint"] = index.pipeline().stopword_fingerprint;
    return j;
}

[[nodiscard]] inline auto params_json(const Bm25Params& p) -> Json { return {{"k1", p.k1}, {"b", p.b}}; }

[[nodiscard]] inline auto run_json(const eval::RunResult& r, const Json& settings = Json::object()) -> Json {
    Json j;
    j["settings"] = settings;
    j["num_requests"] = r.outcomes.size();
    Json success = Json::object();
    for (auto [k, v] : r.success) {
        success["success@" + std::to_string(k)] = v;
    }
    j["success"] = success;
    j["mrr"] = r.mrr;
    Json per = Json::array();
    for (const auto& o : r.outcomes) {
        per.push_back({{"request_id", o.request_id}, {"rank", rank_json(o.rank)}});
    }
    j["per_request"] = per;
    return j;
}

[[nodiscard]] inline auto run_text(const eval::RunResult& r) -> std::string {
    std::string out = "requests: " + std::to_string(r.outcomes.size()) + "\n";
    for (auto [k, v] : r.success) {
        out += "success@" + std::to_string(k) + " = " + fixed(v) + "\n";
    }
    out += "MRR = " + fixed(r.mrr) + "\n";
    return out;
}

[[nodiscard]] inline auto tune_json(const eval::TuneResult& t) -> Json {
    Json j;
    j["objective"] = t.objective.name();
    j["tune_requests"] = t.tune_requests;
    j["best"] = params_json(t.best);
    j["best_value"] = t.best_value;
    Json grid = Json::array();
    for (const auto& g : t.scores) {
        grid.push_back({{"k1", g.params.k1}, {"b", g.params.b}, {"value", g.value}});
    }
    j["grid"] = grid;
    return j;
}

[[nodiscard]] inline auto tune_text(const eval::TuneResult& t) -> std::string {
    return "tuned on " + std::to_string(t.tune_requests) + " requests over " + std::to_string(t.scores.size()) +
           " grid points\nbest k1 = " + fixed(t.best.k1, 2) + ", b = " + fixed(t.best.b, 2) + " (" + t.objective.name() +
           " = " + fixed(t.best_value) + ")\n";
}

[[nodiscard]] inline auto ablation_json(const eval::AblationReport& r, const Json& settings = Json::object()) -> Json {
    Json j;
    j["settings"] = settings;
    j["metric"] = r.metric.name();
    j["num_requests"] = r.num_requests;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x;
        x["label"] = row.label;
        x["group"] = row.group;
        x["aggregate"] = row.aggregate;
        x["requests"] = row.subset_size;
        x["frequency"] = row.frequency;
        x["all"] = optional_json(row.all);
        x["ablated"] = optional_json(row.ablated);
        x["absolute"] = optional_json(row.absolute);
        x["relative"] = optional_json(row.relative);
        x["flagged"] = row.flagged();
        rows.push_back(std::move(x));
    }
    j["rows"] = rows;
    return j;
}

/// Columns: frequency, all, ablated, absolute, relative. Code rows are
/// indented under their group.
[[nodiscard]] inline auto ablation_text(const eval::AblationReport& r) -> std::string {
    Table t({"", "frequency", "all", "ablated", "absolute", "relative"});
    std::string group;
    bool any_flagged = false;
    for (const auto& row : r.rows) {
        if (row.group != group) {
            group = row.group;
            const bool has_aggregate = row.aggregate;
            if (!has_aggregate) {
                t.add({group});
            }
        }
        std::string label = row.aggregate ? row.label : "   " + row.label;
        if (row.flagged()) {
            label += " *";
            any_flagged = true;
        }
        t.add({label, percent(row.frequency), row.all ? fixed(*row.all) : "n/a", row.ablated ? fixed(*row.ablated) : "n/a",
               row.absolute ? signed_fixed(*row.absolute) : "n/a", row.relative ? percent(*row.relative) : "n/a"});
    }
    std::string out = "metric: " + r.metric.name() + ", requests: " + std::to_string(r.num_requests) + "\n\n" + t.str();
    if (any_flagged) {
        out += "\n* no requests carry the code, or the baseline is 0; relative change undefined\n";
    }
    return out;
}

[[nodiscard]] inline auto frequency_json(const analytics::FrequencyReport& f) -> Json {
    Json j;
    j["total_sentences"] = f.total_sentences;
    j["total_requests"] = f.total_requests;
    Json rows = Json::array();
    for (const auto& c : f.codes) {
        rows.push_back({{"code", CodeTaxonomy::name(c.code)},
                        {"category", category_name(CodeTaxonomy::category(c.code))},
                        {"sentences", c.sentences},
                        {"requests", c.requests},
                        {"sentence_frequency", c.sentence_frequency},
                        {"request_frequency", c.request_frequency}});
    }
    j["codes"] = rows;
    return j;
}

[[nodiscard]] inline auto frequency_text(const analytics::FrequencyReport& f) -> std::string {
    Table t({"code", "category", "sentences", "sentence %", "requests", "request %"});
    for (const auto& c : f.codes) {
        t.add({std::string(CodeTaxonomy::name(c.code)), std::string(category_name(CodeTaxonomy::category(c.code))),
               std::to_string(c.sentences), percent(c.sentence_frequency, 2), std::to_string(c.requests),
               percent(c.request_frequency)});
    }
    return std::to_string(f.total_sentences) + " sentences in " + std::to_string(f.total_requests) + " requests\n\n" +
           t.str();
}

[[nodiscard]] inline auto agreement_json(const analytics::AgreementReport& r) -> Json {
    Json j;
    j["sentences"] = r.sentences;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"code", CodeTaxonomy::name(row.code)},
                        {"both", row.counts.a},
                        {"a_only", row.counts.b},
                        {"b_only", row.counts.c},
                        {"neither", row.counts.d},
                        {"kappa", optional_json(row.kappa)}});
    }
    j["codes"] = rows;
    return j;
}

[[nodiscard]] inline auto agreement_text(const analytics::AgreementReport& r) -> std::string {
    Table t({"code", "both", "A only", "B only", "neither", "kappa"});
    for (const auto& row : r.rows) {
        t.add({std::string(CodeTaxonomy::name(row.code)), std::to_string(row.counts.a), std::to_string(row.counts.b),
               std::to_string(row.counts.c), std::to_string(row.counts.d),
               row.kappa ? fixed(*row.kappa, 3) : "undefined"});
    }
    return "Cohen's kappa per code over " + std::to_string(r.sentences) + " dually annotated sentences\n\n" + t.str();
}

[[nodiscard]] inline auto level_name(analytics::CooccurrenceLevel l) -> std::string {
    return l == analytics::CooccurrenceLevel::Request ? "request" : "sentence";
}

[[nodiscard]] inline auto pmi_json(const analytics::CooccurrenceReport& r) -> Json {
    Json j;
    j["anchor"] = CodeTaxonomy::name(r.anchor);
    j["level"] = level_name(r.level);
    j["log_base"] = 2;
    j["units"] = r.total_units;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"code", CodeTaxonomy::name(row.code)},
                        {"pmi", row.pmi},
                        {"n_anchor", row.n_anchor},
                        {"n_code", row.n_code},
                        {"n_joint", row.n_joint},
                        {"example", ""}});
    }
    j["rows"] = rows;
    return j;
}

[[nodiscard]] inline auto pmi_text(const analytics::CooccurrenceReport& r) -> std::string {
    Table t({"code", "PMI", "joint", "code count", "example"});
    for (const auto& row : r.rows) {
        t.add({std::string(CodeTaxonomy::name(row.code)), fixed(row.pmi, 3), std::to_string(row.n_joint),
               std::to_string(row.n_code), ""});
    }
    return "PMI (log base 2) with '" + std::string(CodeTaxonomy::name(r.anchor)) + "', " + level_name(r.level) +
           "-level co-occurrence over " + std::to_string(r.total_units) + " " + level_name(r.level) + "s\n\n" + t.str();
}

[[nodiscard]] inline auto ttest_json(const eval::SignificanceResult& s, const std::string& metric) -> Json {
    Json j;
    j["run_a"] = s.label_a;
    j["run_b"] = s.label_b;
    j["metric"] = metric;
    j["n"] = s.n;
    j["mean_difference"] = s.mean_difference;
    j["t"] = std::isfinite(s.t_statistic) ? Json(s.t_statistic) : Json(s.t_statistic > 0 ? "inf" : "-inf");
    j["df"] = s.degrees_of_freedom;
    j["p"] = s.p_value;
    j["alpha"] = s.alpha;
    j["corrected_alpha"] = s.corrected_alpha;
    j["significant"] = s.significant();
    j["degenerate_variance"] = s.degenerate_variance;
    return j;
}

[[nodiscard]] inline auto ttest_text(const eval::SignificanceResult& s, const std::string& metric) -> std::string {
    std::string t = std::isfinite(s.t_statistic) ? fixed(s.t_statistic) : (s.t_statistic > 0 ? "inf" : "-inf");
    std::string out = "paired t-test on " + metric + ": " + s.label_a + " vs " + s.label_b + "\n";
    out += "n = " + std::to_string(s.n) + ", mean difference = " + signed_fixed(s.mean_difference) + "\n";
    out += "t = " + t + " (df " + fixed(s.degrees_of_freedom, 0) + "), p = " + fixed(s.p_value, 6) + "\n";
    out += "Bonferroni alpha = " + fixed(s.corrected_alpha, 6) + " -> " +
           (s.significant() ? "significant" : "not significant") + "\n";
    if (s.degenerate_variance) {
        out += "note: degenerate variance (all differences equal)\n";
    }
    return out;
}

}  // namespace totbench::report
