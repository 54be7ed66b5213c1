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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "totbench/error.hpp"
#include "totbench/textproc/segmenter.hpp"
#include "totbench/textproc/stemmer.hpp"
#include "totbench/textproc/stopwords.hpp"
#include "totbench/textproc/tokenizer.hpp"

namespace totbench::textproc {

struct PipelineConfig {
    StopwordSet stopwords = StopwordSet::indri();
    StemmerKind stemmer = StemmerKind::KrovetzLight;
    KrovetzLightStemmer krovetz;
    AbbreviationSet abbreviations = default_abbreviations();

    /// Tokenization only; used by the toy-corpus tests.
    [[nodiscard]] static auto bare() -> PipelineConfig {
        PipelineConfig cfg;
        cfg.stopwords = StopwordSet{};
        cfg.stemmer = StemmerKind::Identity;
        return cfg;
    }

    void validate() const {
        for (const auto& abbr : abbreviations) {
            if (abbr.empty() || abbr.back() != '.') {
                throw UsageError("abbreviation must end with a period: '" + abbr + "'");
            }
        }
    }
};

/// Token → stopword filter → stemmer. Documents and queries both go through
/// `analyze`, so the two sides cannot drift apart.
class Analyzer {
  public:
    Analyzer() : Analyzer(PipelineConfig{}) {}
    explicit Analyzer(PipelineConfig config)
        : config_(std::make_shared<const PipelineConfig>(std::move(config))),
          segmenter_(config_->abbreviations) {
        config_->validate();
    }

    [[nodiscard]] auto config() const -> const PipelineConfig& { return *config_; }

    [[nodiscard]] auto stem(std::string_view word) const -> std::string {
        if (config_->stemmer == StemmerKind::Identity) {
            return std::string(word);
        }
        return config_->krovetz.stem(word);
    }

    /// Calls `fn(std::string&&)` for each stem in `text`, in order. A stem that
    /// lands on a stopword ("did" -> "do") is dropped as well.
    template <typename Fn>
    void for_each_stem(std::string_view text, Fn&& fn) const {
        for_each_token(text, [&](std::string_view tok) {
            if (config_->stopwords.contains(tok)) {
                return;
            }
            auto s = stem(tok);
            if (!config_->stopwords.contains(s)) {
                fn(std::move(s));
            }
        });
    }

    [[nodiscard]] auto analyze(std::string_view text) const -> std::vector<std::string> {
        std::vector<std::string> out;
        for_each_stem(text, [&](std::string&& s) { out.push_back(std::move(s)); });
        return out;
    }

    [[nodiscard]] auto segment_sentences(std::string_view text) const -> std::vector<std::string> {
        return segmenter_.segment(text);
    }

    [[nodiscard]] auto segmenter() const -> const SentenceSegmenter& { return segmenter_; }

  private:
    std::shared_ptr<const PipelineConfig> config_;
    SentenceSegmenter segmenter_;
};

}  // namespace totbench::textproc
