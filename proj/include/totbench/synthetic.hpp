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
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "totbench/analytics.hpp"
#include "totbench/corpus.hpp"
#include "totbench/error.hpp"
#include "totbench/rng.hpp"
#include "totbench/taxonomy.hpp"
#include "totbench/textproc/pipeline.hpp"

namespace totbench::synthetic {

enum class NoiseProfile { Default, ContextHeavy };

[[nodiscard]] inline auto parse_noise_profile(std::string_view s) -> NoiseProfile {
    if (s == "default") {
        return NoiseProfile::Default;
    }
    if (s == "context-heavy") {
        return NoiseProfile::ContextHeavy;
    }
    throw UsageError("unknown noise profile '" + std::string(s) + "' (expected default or context-heavy)");
}

[[nodiscard]] inline auto noise_profile_name(NoiseProfile p) -> std::string_view {
    return p == NoiseProfile::ContextHeavy ? "context-heavy" : "default";
}

struct GeneratorOptions {
    std::uint64_t seed = 7;
    std::size_t num_docs = 200;
    std::size_t num_requests = 50;
    NoiseProfile profile = NoiseProfile::Default;
    /// Mean content words per plot; each plot draws from [0.7, 1.3] of it.
    std::size_t plot_words = 80;
    std::size_t vocabulary = 6000;
    /// Chance that a quoted plot word is swapped for a random one.
    double misremember_rate = 0.1;

    void validate() const {
        if (num_requests < 1 || num_docs < num_requests) {
            throw UsageError("generator needs num_docs >= num_requests >= 1");
        }
        if (plot_words < 8) {
            throw UsageError("generator needs at least 8 plot words per document");
        }
        if (vocabulary < 50) {
            throw UsageError("generator vocabulary must hold at least 50 words");
        }
        if (!(misremember_rate >= 0.0 && misremember_rate < 1.0)) {
            throw UsageError("misremember rate must lie in [0, 1)");
        }
    }
};

struct Dataset {
    std::vector<Document> docs;
    std::vector<TOTRequest> requests;
    Qrels qrels;
    std::vector<analytics::DualAnnotation> dual;
};

namespace detail {

/// Chance that a request mentions each code. The fifteen commonly ablated
/// codes use their observed request frequencies; the rest are rare.
[[nodiscard]] inline auto code_probability(CodeId id, NoiseProfile profile) -> double {
    struct Entry {
        std::string_view name;
        double p;
    };
    static constexpr std::array<Entry, 15> kMeasured{{
        {"Character", 0.982},       {"Object", 0.823},        {"Scene", 0.897},
        {"Location type", 0.737},   {"Plot summary", 0.617},  {"Category", 0.920},
        {"Genre/tone", 0.348},      {"Release date", 0.434},  {"Visual style", 0.342},
        {"Language", 0.239},        {"Temporal context", 0.578}, {"Physical medium", 0.357},
        {"Uncertainty", 0.885},     {"Relative comparison", 0.206}, {"Social", 0.516},
    }};
    const auto category = CodeTaxonomy::category(id);
    if (profile == NoiseProfile::ContextHeavy && category == CodeCategory::Context) {
        return 0.9;
    }
    for (const auto& e : kMeasured) {
        if (CodeTaxonomy::name(id) == e.name) {
            return e.p;
        }
    }
    return category == CodeCategory::Movie ? 0.08 : 0.12;
}

/// Codes whose sentences quote the answer's plot.
[[nodiscard]] inline auto answer_bearing() -> CodeSet {
    CodeSet s;
    for (auto name : {"Character", "Object", "Scene", "Location type", "Plot summary"}) {
        s.insert(*CodeTaxonomy::find(name));
    }
    return s;
}

// Corpus-absent phrasing. Plot vocabulary is made of invented words, so none
// of these can match a document.
inline constexpr std::array<std::string_view, 6> kSocial{
    "Thanks in advance for any help!", "Hi everyone, hoping someone here can help me.",
    "Any help would be greatly appreciated.", "This has been bugging me for weeks, thank you!",
    "Sorry for the long post.", "Cheers and thanks for reading."};
inline constexpr std::array<std::string_view, 6> kTemporal{
    "I watched it around Christmas when I was a kid.", "I saw it sometime in the early nineties.",
    "This was maybe fifteen years ago.", "I remember watching it one summer at my grandparents.",
    "It was on late at night during a holiday weekend.", "I caught it years ago after school."};
inline constexpr std::array<std::string_view, 5> kMedium{
    "I saw it on cable television.", "We rented it on VHS.", "It was on a DVD my cousin owned.",
    "I streamed it on some website.", "I watched it at a drive-in theater."};
inline constexpr std::array<std::string_view, 5> kOtherContext{
    "My brother watched it with me.", "It came up in a conversation at work.",
    "I was living abroad back then.", "It was shown in my classroom.", "I think there was a video game based on it."};
/// Phrasing for the remaining Movie codes, by code name; unknown names fall
/// back to the last entry.
struct MetaPhrase {
    std::string_view code;
    std::string_view text;
};
inline constexpr std::array<MetaPhrase, 9> kMeta{{
    {"Category", "It was a feature film, probably live action."},
    {"Genre/tone", "It felt like a dark comedy."},
    {"Visual style", "The colors were washed out and grainy."},
    {"Language", "Everyone spoke English with heavy accents."},
    {"Regional origin", "I believe it was a European production."},
    {"Target audience", "It was definitely made for kids."},
    {"Real person", "I think a famous singer had a cameo."},
    {"Camera angle", "Lots of shaky handheld shots."},
    {"", "Something about it felt very specific."},
}};

inline auto meta_phrase(std::string_view code) -> std::string {
    for (const auto& m : kMeta) {
        if (m.code == code || m.code.empty()) {
            return std::string(m.text);
        }
    }
    return {};
}

inline constexpr std::array<std::string_view, 4> kReleaseDate{
    "It probably came out in the 1980s.", "I would guess it was released around 1995.",
    "It is likely from the 2000s.", "Maybe made in the 1970s."};
inline constexpr std::array<std::string_view, 4> kPreviousSearch{
    "I already searched Google and IMDb with no luck.", "I tried every keyword I could think of.",
    "Reverse image search did not help either.", "Nobody on other forums knew it."};
inline constexpr std::array<std::string_view, 4> kOpinion{
    "It was honestly really good.", "The acting was pretty bad.", "I loved the soundtrack.",
    "Probably underrated."};
inline constexpr std::array<std::string_view, 3> kEmotion{
    "It scared me so much.", "I cried at the ending.", "It made me feel uneasy for days."};
inline constexpr std::array<std::string_view, 5> kHedges{
    "I think", "I'm not sure but maybe", "If I remember correctly", "Possibly", "I could be wrong but"};
inline constexpr std::array<std::string_view, 7> kGlue{"the", "a", "of", "and", "with", "to", "in"};

template <std::size_t N>
auto pick(Rng& rng, const std::array<std::string_view, N>& options) -> std::string {
    return std::string(options[rng.below(N)]);
}

/// Invented words: consonant-vowel syllables ending in a vowel, so no stemmer
/// rule applies, and never a stopword.
inline auto make_vocabulary(Rng& rng, std::size_t size) -> std::vector<std::string> {
    static constexpr std::string_view consonants = "bdfgklmnprtv";
    static constexpr std::string_view vowels = "aiou";
    const auto& stopwords = textproc::StopwordSet::indri();
    std::unordered_set<std::string> seen;
    std::vector<std::string> words;
    while (words.size() < size) {
        std::string w;
        for (std::uint64_t s = 0, n = 2 + rng.below(3); s < n; ++s) {
            w += consonants[rng.below(consonants.size())];
            w += vowels[rng.below(vowels.size())];
        }
        if (!stopwords.contains(w) && seen.insert(w).second) {
            words.push_back(std::move(w));
        }
    }
    return words;
}

/// Zipf-like sampler (exponent 0.8) over vocabulary ranks.
class ZipfSampler {
  public:
    explicit ZipfSampler(std::size_t n) : cumulative_(n) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            total += 1.0 / std::pow(static_cast<double>(r + 1), 0.8);
            cumulative_[r] = total;
        }
    }
    auto operator()(Rng& rng) const -> std::size_t {
        const double x = rng.unit() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

  private:
    std::vector<double> cumulative_;
};

inline auto capitalize(std::string s) -> std::string {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') {
        s[0] = static_cast<char>(s[0] - 'a' + 'A');
    }
    return s;
}

}  // namespace detail

/// Builds a planted dataset: invented-word plots, requests whose content
/// sentences quote their answer's plot, and noise sentences (social, context,
/// meta) in words no plot contains. Identical options give identical output.
[[nodiscard]] inline auto generate(const GeneratorOptions& options) -> Dataset {
    options.validate();
    using namespace detail;
    Rng vocab_rng(Rng::derive(options.seed, 0));
    Rng doc_rng(Rng::derive(options.seed, 1));
    Rng req_rng(Rng::derive(options.seed, 2));
    Rng dual_rng(Rng::derive(options.seed, 3));

    const auto vocab = make_vocabulary(vocab_rng, options.vocabulary);
    const ZipfSampler zipf(vocab.size());

    Dataset data;
    std::vector<std::vector<std::string>> content(options.num_docs);
    data.docs.reserve(options.num_docs);
    for (std::size_t d = 0; d < options.num_docs; ++d) {
        Document doc;
        doc.doc_id = "doc" + std::to_string(d);
        doc.catalog_id = "tt" + std::string(7 - std::min<std::size_t>(7, std::to_string(d + 1).size()), '0') +
                         std::to_string(d + 1);
        for (std::uint64_t t = 0, n = 1 + doc_rng.below(3); t < n; ++t) {
            doc.title += (t ? " " : "") + capitalize(vocab[zipf(doc_rng)]);
        }
        const auto lo = options.plot_words * 7 / 10;
        const auto hi = options.plot_words * 13 / 10;
        const auto target = lo + doc_rng.below(hi - lo + 1);
        auto& words = content[d];
        words.reserve(target);
        std::string& plot = doc.plot;
        while (words.size() < target) {
            const auto len = std::min<std::size_t>(target - words.size(), 5 + doc_rng.below(5));
            for (std::size_t i = 0; i < len; ++i) {
                std::string w = vocab[zipf(doc_rng)];
                std::string piece = doc_rng.chance(0.4) ? std::string(pick(doc_rng, kGlue)) + " " + w : w;
                plot += i == 0 ? capitalize(piece) : " " + piece;
                words.push_back(std::move(w));
            }
            plot += words.size() < target ? ". " : ".";
        }
        data.docs.push_back(std::move(doc));
    }

    std::vector<std::size_t> answers(options.num_docs);
    for (std::size_t i = 0; i < answers.size(); ++i) {
        answers[i] = i;
    }
    req_rng.shuffle(answers);

    const CodeSet bearing = answer_bearing();
    const auto quote = [&](std::size_t doc) {
        const auto& words = content[doc];
        const auto len = std::min<std::size_t>(words.size(), 4 + req_rng.below(3));
        const auto start = req_rng.below(words.size() - len + 1);
        std::string out;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& w = req_rng.chance(options.misremember_rate) ? vocab[zipf(req_rng)] : words[start + i];
            out += (i ? " " : "") + w;
        }
        return out;
    };

    for (std::size_t r = 0; r < options.num_requests; ++r) {
        const auto answer = answers[r];
        TOTRequest req;
        req.request_id = "tot" + std::to_string(1000 + r);
        req.answer_catalog_id = *data.docs[answer].catalog_id;
        req.title = req_rng.chance(0.3) ? "Movie with a " + content[answer][req_rng.below(content[answer].size())]
                                        : "Help me find this movie";

        // Decide which codes the request mentions first, so each code's request
        // frequency is its target; co-codes are drawn from this set.
        CodeSet present;
        for (auto id : CodeTaxonomy::all()) {
            if (req_rng.chance(code_probability(id, options.profile))) {
                present.insert(id);
            }
        }
        if (!present.intersects(bearing)) {
            present.insert(*CodeTaxonomy::find("Character"));
        }
        std::vector<CodeId> bearing_present;
        for (auto id : present.ids()) {
            if (bearing.contains(id)) {
                bearing_present.push_back(id);
            }
        }

        std::vector<Sentence> sentences;
        auto add = [&](std::string text, CodeSet codes) { sentences.push_back({0, std::move(text), codes}); };
        for (auto id : present.ids()) {
            const auto name = CodeTaxonomy::name(id);
            const auto category = CodeTaxonomy::category(id);
            if (bearing.contains(id)) {
                CodeSet codes{id};
                // Content sentences often mention two kinds of detail.
                if (req_rng.chance(0.25)) {
                    codes.insert(req_rng.pick(bearing_present));
                }
                add("There was a " + quote(answer) + ".", codes);
            } else if (name == "Uncertainty") {
                add(pick(req_rng, kHedges) + " there was " + quote(answer) + ".", CodeSet{id, req_rng.pick(bearing_present)});
            } else if (name == "Relative comparison") {
                add("It reminded me of " + data.docs[req_rng.below(options.num_docs)].title + ".", CodeSet{id});
            } else if (name == "Social") {
                add(pick(req_rng, kSocial), CodeSet{id});
            } else if (name == "Temporal context") {
                add(pick(req_rng, kTemporal), CodeSet{id});
            } else if (name == "Physical medium") {
                add(pick(req_rng, kMedium), CodeSet{id});
            } else if (category == CodeCategory::Context) {
                add(pick(req_rng, kOtherContext), CodeSet{id});
            } else if (name == "Release date") {
                add(pick(req_rng, kReleaseDate), CodeSet{id});
            } else if (name == "Previous search") {
                add(pick(req_rng, kPreviousSearch), CodeSet{id});
            } else if (name == "Opinion") {
                add(pick(req_rng, kOpinion), CodeSet{id});
            } else if (name == "Emotion") {
                add(pick(req_rng, kEmotion), CodeSet{id});
            } else {
                add(meta_phrase(name), CodeSet{id});
            }
        }
        if (options.profile == NoiseProfile::ContextHeavy) {
            for (std::uint64_t extra = 0, n = 1 + req_rng.below(3); extra < n; ++extra) {
                add(pick(req_rng, kTemporal), CodeSet{*CodeTaxonomy::find("Temporal context")});
            }
        }
        req_rng.shuffle(sentences);
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            sentences[i].index = i;
            req.description += (i ? " " : "") + sentences[i].text;
        }
        req.sentences = std::move(sentences);
        data.qrels.add(req.request_id, data.docs[answer].doc_id);
        data.requests.push_back(std::move(req));
    }

    // A second annotator who mostly agrees: drops a present code 10% of the
    // time and adds an absent one 0.5% of the time.
    for (const auto& req : data.requests) {
        for (const auto& s : req.sentences) {
            analytics::DualAnnotation d;
            d.sentence_id = req.request_id + ":" + std::to_string(s.index);
            d.annotator_a = s.codes;
            for (auto id : CodeTaxonomy::all()) {
                if (s.codes.contains(id) ? !dual_rng.chance(0.10) : dual_rng.chance(0.005)) {
                    d.annotator_b.insert(id);
                }
            }
            data.dual.push_back(std::move(d));
        }
    }
    return data;
}

inline void save_dual_annotations(const std::filesystem::path& path,
                                  const std::vector<analytics::DualAnnotation>& dual) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    auto names = [](const CodeSet& s) {
        auto arr = nlohmann::ordered_json::array();
        for (auto id : s.ids()) {
            arr.push_back(std::string(CodeTaxonomy::name(id)));
        }
        return arr;
    };
    for (const auto& d : dual) {
        nlohmann::ordered_json obj;
        obj["sentence_id"] = d.sentence_id;
        obj["annotator_a"] = names(d.annotator_a);
        obj["annotator_b"] = names(d.annotator_b);
        out << obj.dump() << '\n';
    }
}

struct DatasetFiles {
    std::filesystem::path corpus;
    std::filesystem::path requests;
    std::filesystem::path qrels;
    std::filesystem::path dual;
};

[[nodiscard]] inline auto dataset_files(const std::filesystem::path& dir) -> DatasetFiles {
    return {dir / "corpus.jsonl", dir / "requests.jsonl", dir / "qrels.txt", dir / "dual.jsonl"};
}

inline auto write_dataset(const Dataset& data, const std::filesystem::path& dir) -> DatasetFiles {
    std::filesystem::create_directories(dir);
    auto files = dataset_files(dir);
    save_corpus(files.corpus, data.docs);
    save_requests(files.requests, data.requests);
    save_qrels(files.qrels, data.qrels);
    save_dual_annotations(files.dual, data.dual);
    return files;
}

}  // namespace totbench::synthetic
