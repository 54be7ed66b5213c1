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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "totbench/checksum.hpp"
#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/eval/metrics.hpp"
#include "totbench/retrieval.hpp"

namespace totbench {

/// Pinned settings for one experiment directory. Empty paths mean "not set";
/// empty stopwords/lexicon paths select the bundled lists.
struct ExperimentConfig {
    // [paths]
    std::string corpus;
    std::string corpus_format = "jsonl";
    std::string requests;
    std::string qrels;
    std::string index;
    std::string output = "out";
    // [pipeline]
    std::string stemmer = "krovetz-light";
    std::string stopwords;
    std::string lexicon;
    bool include_titles = true;
    // [retrieval]
    bool tuned = false;
    Bm25Params params;
    std::string strategy = "both";
    bool tf_query = false;
    std::uint32_t depth = kDefaultDepth;
    // [experiment]
    std::uint64_t seed = 42;
    std::vector<std::uint32_t> ks{1, 10, 100};
    double min_freq = 0.2;
    std::string metric = "success@10";
    double tune_fraction = 0.2;
    std::string evaluate_on = "heldout";

    /// Checks values; with `check_paths`, also that every input file exists.
    void validate(bool check_paths = true) const {
        (void)parse_corpus_format(corpus_format);
        if (stemmer != "krovetz-light" && stemmer != "identity") {
            throw UsageError("config: stemmer must be krovetz-light or identity");
        }
        params.validate();
        (void)parse_query_fields(strategy);
        (void)eval::parse_metric(metric);
        if (depth < 1) {
            throw UsageError("config: depth must be at least 1");
        }
        if (ks.empty()) {
            throw UsageError("config: k list is empty");
        }
        for (auto k : ks) {
            if (k < 1) {
                throw UsageError("config: every k must be at least 1");
            }
        }
        if (!(min_freq >= 0.0 && min_freq <= 1.0)) {
            throw UsageError("config: min_freq must lie in [0, 1]");
        }
        if (!(tune_fraction > 0.0 && tune_fraction <= 1.0)) {
            throw UsageError("config: tune_fraction must lie in (0, 1]");
        }
        if (evaluate_on != "heldout" && evaluate_on != "all") {
            throw UsageError("config: evaluate_on must be heldout or all");
        }
        if (check_paths) {
            for (const auto* p : {&corpus, &requests, &qrels, &stopwords, &lexicon}) {
                if (!p->empty() && !std::filesystem::exists(*p)) {
                    throw DataError("config: file not found: " + *p);
                }
            }
        }
    }

    friend auto operator==(const ExperimentConfig&, const ExperimentConfig&) -> bool = default;
};

namespace detail {

inline auto format_real(double v) -> std::string {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline auto join_ks(const std::vector<std::uint32_t>& ks) -> std::string {
    std::string out;
    for (auto k : ks) {
        out += (out.empty() ? "" : ",") + std::to_string(k);
    }
    return out;
}

}  // namespace detail

[[nodiscard]] inline auto parse_k_list(const std::string& text) -> std::vector<std::uint32_t> {
    std::vector<std::uint32_t> ks;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = std::string(detail::trim(item));
        if (t.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            auto v = std::stoul(t, &used);
            if (used != t.size() || v < 1 || v > 1000000) {
                throw std::invalid_argument(t);
            }
            ks.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw UsageError("bad k value '" + t + "'");
        }
    }
    if (ks.empty()) {
        throw UsageError("empty k list");
    }
    return ks;
}

inline void write_config(std::ostream& out, const ExperimentConfig& c) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    tree.put("paths.corpus", c.corpus);
    tree.put("paths.corpus_format", c.corpus_format);
    tree.put("paths.requests", c.requests);
    tree.put("paths.qrels", c.qrels);
    tree.put("paths.index", c.index);
    tree.put("paths.output", c.output);
    tree.put("pipeline.stemmer", c.stemmer);
    tree.put("pipeline.stopwords", c.stopwords);
    tree.put("pipeline.lexicon", c.lexicon);
    tree.put("pipeline.include_titles", c.include_titles ? "true" : "false");
    tree.put("retrieval.params", c.tuned ? "tuned" : "fixed");
    tree.put("retrieval.k1", detail::format_real(c.params.k1));
    tree.put("retrieval.b", detail::format_real(c.params.b));
    tree.put("retrieval.strategy", c.strategy);
    tree.put("retrieval.tf_query", c.tf_query ? "true" : "false");
    tree.put("retrieval.depth", std::to_string(c.depth));
    tree.put("experiment.seed", std::to_string(c.seed));
    tree.put("experiment.k", detail::join_ks(c.ks));
    tree.put("experiment.min_freq", detail::format_real(c.min_freq));
    tree.put("experiment.metric", c.metric);
    tree.put("experiment.tune_fraction", detail::format_real(c.tune_fraction));
    tree.put("experiment.evaluate_on", c.evaluate_on);
    pt::write_ini(out, tree);
}

[[nodiscard]] inline auto config_text(const ExperimentConfig& c) -> std::string {
    std::ostringstream out;
    write_config(out, c);
    return out.str();
}

/// CRC-32 of the canonical serialization, recorded in manifests.
[[nodiscard]] inline auto config_hash(const ExperimentConfig& c) -> std::string {
    return Crc32::to_hex(crc32_of(config_text(c)));
}

inline void save_config(const std::filesystem::path& path, const ExperimentConfig& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    write_config(out, c);
}

/// Reads an INI config. Unknown sections or keys are errors so typos do not
/// silently fall back to defaults. Missing keys keep their defaults.
[[nodiscard]] inline auto parse_config(std::istream& in, const std::string& source = "config")
    -> ExperimentConfig {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw DataError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    ExperimentConfig c;
    auto text = [&](const std::string& key, std::string& target) {
        if (auto v = tree.get_optional<std::string>(key)) {
            target = *v;
        }
    };
    auto flag = [&](const std::string& key, bool& target) {
        if (auto v = tree.get_optional<std::string>(key)) {
            if (*v == "true" || *v == "1" || *v == "yes") {
                target = true;
            } else if (*v == "false" || *v == "0" || *v == "no") {
                target = false;
            } else {
                throw UsageError(source + ": " + key + " must be true or false");
            }
        }
    };
    auto real = [&](const std::string& key, double& target) {
        if (auto v = tree.get_optional<std::string>(key)) {
            try {
                std::size_t used = 0;
                target = std::stod(*v, &used);
                if (used != v->size()) {
                    throw std::invalid_argument(*v);
                }
            } catch (const std::exception&) {
                throw UsageError(source + ": " + key + " is not a number: '" + *v + "'");
            }
        }
    };
    auto integer = [&](const std::string& key, std::uint64_t& target) {
        if (auto v = tree.get_optional<std::string>(key)) {
            try {
                std::size_t used = 0;
                if (!v->empty() && (*v)[0] == '-') {
                    throw std::invalid_argument(*v);
                }
                target = std::stoull(*v, &used);
                if (used != v->size()) {
                    throw std::invalid_argument(*v);
                }
            } catch (const std::exception&) {
                throw UsageError(source + ": " + key + " is not a non-negative integer: '" + *v + "'");
            }
        }
    };

    static const std::map<std::string, std::vector<std::string>> known{
        {"paths", {"corpus", "corpus_format", "requests", "qrels", "index", "output"}},
        {"pipeline", {"stemmer", "stopwords", "lexicon", "include_titles"}},
        {"retrieval", {"params", "k1", "b", "strategy", "tf_query", "depth"}},
        {"experiment", {"seed", "k", "min_freq", "metric", "tune_fraction", "evaluate_on"}},
    };
    for (const auto& [section, body] : tree) {
        auto it = known.find(section);
        if (it == known.end()) {
            throw UsageError(source + ": unknown section [" + section + "]");
        }
        for (const auto& [key, value] : body) {
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
                throw UsageError(source + ": unknown key '" + key + "' in [" + section + "]");
            }
        }
    }

    text("paths.corpus", c.corpus);
    text("paths.corpus_format", c.corpus_format);
    text("paths.requests", c.requests);
    text("paths.qrels", c.qrels);
    text("paths.index", c.index);
    text("paths.output", c.output);
    text("pipeline.stemmer", c.stemmer);
    text("pipeline.stopwords", c.stopwords);
    text("pipeline.lexicon", c.lexicon);
    flag("pipeline.include_titles", c.include_titles);
    if (auto v = tree.get_optional<std::string>("retrieval.params")) {
        if (*v != "tuned" && *v != "fixed") {
            throw UsageError(source + ": retrieval.params must be tuned or fixed");
        }
        c.tuned = *v == "tuned";
    }
    real("retrieval.k1", c.params.k1);
    real("retrieval.b", c.params.b);
    text("retrieval.strategy", c.strategy);
    flag("retrieval.tf_query", c.tf_query);
    std::uint64_t depth = c.depth;
    integer("retrieval.depth", depth);
    if (depth > 100000000) {
        throw UsageError(source + ": retrieval.depth is too large");
    }
    c.depth = static_cast<std::uint32_t>(depth);
    integer("experiment.seed", c.seed);
    if (auto v = tree.get_optional<std::string>("experiment.k")) {
        c.ks = parse_k_list(*v);
    }
    real("experiment.min_freq", c.min_freq);
    text("experiment.metric", c.metric);
    real("experiment.tune_fraction", c.tune_fraction);
    text("experiment.evaluate_on", c.evaluate_on);
    return c;
}

/// Loads a config file; relative paths inside it are taken relative to the
/// file's directory.
[[nodiscard]] inline auto load_config(const std::filesystem::path& path) -> ExperimentConfig {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open config " + path.string());
    }
    auto c = parse_config(in, path.string());
    const auto base = path.parent_path();
    for (auto* p : {&c.corpus, &c.requests, &c.qrels, &c.index, &c.output, &c.stopwords, &c.lexicon}) {
        if (!p->empty() && std::filesystem::path(*p).is_relative() && !base.empty()) {
            *p = (base / *p).lexically_normal().string();
        }
    }
    return c;
}

}  // namespace totbench
