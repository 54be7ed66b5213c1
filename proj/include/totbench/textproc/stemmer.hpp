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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "totbench/error.hpp"
#include "totbench/textproc/stem_lexicon.hpp"
#include "totbench/textproc/stopwords.hpp"

namespace totbench::textproc {

enum class StemmerKind { KrovetzLight, Identity };

/// Inflectional stemmer in the spirit of Krovetz's KStem, without the full
/// derivational dictionary. Handles plurals, past tense and present
/// participles, consulting a small exception lexicon before and after every
/// rule.
///
/// A single pass runs: lexicon lookup, then the first applicable rule out of
/// plural / past tense / participle. Passes repeat until neither the lexicon
/// nor a rule changes the word. Every rule strictly shortens its input and
/// every lexicon value is itself a fixed point, so the loop terminates and
/// stem(stem(w)) == stem(w).
class KrovetzLightStemmer {
  public:
    using Lexicon = std::unordered_map<std::string, std::string, StringHash, std::equal_to<>>;

    static constexpr std::size_t kMinStemLength = 2;

    KrovetzLightStemmer() : lexicon_(bundled_lexicon()) {}
    explicit KrovetzLightStemmer(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

    [[nodiscard]] static auto bundled_lexicon() -> Lexicon {
        Lexicon lex;
        for (auto [surface, stem] : kStemLexicon) {
            lex.emplace(surface, stem);
        }
        return lex;
    }

    /// TSV `surface<TAB>stem`, '#' comments allowed.
    [[nodiscard]] static auto load_lexicon(const std::filesystem::path& path) -> Lexicon {
        std::ifstream in(path);
        if (!in) {
            throw DataError("cannot open lexicon " + path.string());
        }
        Lexicon lex;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line.front() == '#') {
                continue;
            }
            auto tab = line.find('\t');
            if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
                throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected surface<TAB>stem");
            }
            lex.insert_or_assign(line.substr(0, tab), line.substr(tab + 1));
        }
        return lex;
    }

    [[nodiscard]] auto lexicon() const -> const Lexicon& { return lexicon_; }

    [[nodiscard]] auto stem(std::string_view word) const -> std::string {
        std::string w(word);
        while (true) {
            if (auto it = lexicon_.find(w); it != lexicon_.end()) {
                return it->second;
            }
            auto next = plural(w);
            if (!next) {
                next = past_tense(w);
            }
            if (!next) {
                next = participle(w);
            }
            if (!next) {
                return w;
            }
            w = std::move(*next);
        }
    }

  private:
    [[nodiscard]] static auto ends_with(std::string_view w, std::string_view suffix) -> bool {
        return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
    }

    [[nodiscard]] static auto is_letter(char c) -> bool { return c >= 'a' && c <= 'z'; }

    // 'y' is a vowel when it follows a consonant.
    [[nodiscard]] static auto is_vowel(std::string_view w, std::size_t i) -> bool {
        switch (w[i]) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u': return true;
        case 'y': return i > 0 && !is_vowel(w, i - 1);
        default: return false;
        }
    }

    [[nodiscard]] static auto is_consonant(std::string_view w, std::size_t i) -> bool {
        return is_letter(w[i]) && !is_vowel(w, i);
    }

    [[nodiscard]] static auto has_vowel(std::string_view w) -> bool {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (is_vowel(w, i)) {
                return true;
            }
        }
        return false;
    }

    // Number of vowel-run→consonant-run transitions.
    [[nodiscard]] static auto measure(std::string_view w) -> int {
        int m = 0;
        bool prev_vowel = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            bool v = is_vowel(w, i);
            if (prev_vowel && !v) {
                ++m;
            }
            prev_vowel = v;
        }
        return m;
    }

    [[nodiscard]] static auto ends_cvc(std::string_view w) -> bool {
        auto n = w.size();
        if (n < 3) {
            return false;
        }
        char last = w[n - 1];
        return is_consonant(w, n - 3) && is_vowel(w, n - 2) && is_consonant(w, n - 1) && last != 'w' &&
               last != 'x' && last != 'y';
    }

    // Consonant followed by the two-letter ending `tail`.
    [[nodiscard]] static auto ends_consonant_then(std::string_view w, std::string_view tail) -> bool {
        return w.size() >= 3 && ends_with(w, tail) && is_consonant(w, w.size() - 3);
    }

    [[nodiscard]] static auto plural(std::string_view w) -> std::optional<std::string> {
        auto n = w.size();
        if (!ends_with(w, "s")) {
            return std::nullopt;
        }
        if (ends_with(w, "ies")) {
            if (n == 4) {
                return std::string(w.substr(0, 2)) + "ie";
            }
            if (n > 4) {
                return std::string(w.substr(0, n - 3)) + "y";
            }
            return std::nullopt;
        }
        if (ends_with(w, "sses") || ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "zzes") ||
            (ends_with(w, "xes") && n > 4) || (ends_with(w, "oes") && n > 5)) {
            return std::string(w.substr(0, n - 2));
        }
        if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || n <= 3) {
            return std::nullopt;
        }
        return std::string(w.substr(0, n - 1));
    }

    [[nodiscard]] static auto past_tense(std::string_view w) -> std::optional<std::string> {
        auto n = w.size();
        if (!ends_with(w, "ed") || n < 4) {
            return std::nullopt;
        }
        if (ends_with(w, "ied")) {
            if (n == 4) {
                return std::string(w.substr(0, 1)) + "ie";
            }
            return std::string(w.substr(0, n - 3)) + "y";
        }
        if (ends_with(w, "eed")) {
            if (n <= 4) {
                return std::nullopt;
            }
            return std::string(w.substr(0, n - 1));
        }
        return strip_and_repair(w.substr(0, n - 2));
    }

    [[nodiscard]] static auto participle(std::string_view w) -> std::optional<std::string> {
        auto n = w.size();
        if (!ends_with(w, "ing")) {
            return std::nullopt;
        }
        if (n == 5 && ends_with(w, "ying") && is_consonant(w, 0)) {
            return std::string(w.substr(0, 1)) + "ie";
        }
        return strip_and_repair(w.substr(0, n - 3));
    }

    // Shared by -ed and -ing: undouble a final consonant pair or restore a
    // silent 'e'. Refuses stems without a vowel or shorter than the minimum.
    [[nodiscard]] static auto strip_and_repair(std::string_view stem) -> std::optional<std::string> {
        if (stem.size() < kMinStemLength || !has_vowel(stem)) {
            return std::nullopt;
        }
        auto out = repair(stem);
        if (out.size() < kMinStemLength) {
            return std::nullopt;
        }
        return out;
    }

    [[nodiscard]] static auto repair(std::string_view s) -> std::string {
        auto n = s.size();
        char last = s[n - 1];
        char prev = n >= 2 ? s[n - 2] : '\0';
        auto with_e = [&] { return std::string(s) + "e"; };

        if (n >= 3 && last == prev && is_consonant(s, n - 1) && last != 'l' && last != 's' && last != 'z' &&
            last != 'f') {
            return std::string(s.substr(0, n - 1));
        }
        if (last == 'v' || ends_with(s, "iz") || ends_with(s, "yz") || last == 'c' || last == 'u') {
            return with_e();
        }
        if (last == 'l' && n >= 2 && std::string_view("bcdfgkptz").find(prev) != std::string_view::npos) {
            return with_e();
        }
        if (ends_with(s, "dg") || ends_with(s, "rg") || ends_with(s, "lg")) {
            return with_e();
        }
        if (last == 'z' && n >= 2 && is_vowel(s, n - 2)) {
            return with_e();
        }
        if (last == 's' && prev != 's') {
            return with_e();
        }
        for (std::string_view tail : {"at", "ut", "in", "ar", "ir", "ur", "um", "ib", "ot", "ok", "ag"}) {
            if (ends_consonant_then(s, tail)) {
                return with_e();
            }
        }
        if (last == 'd' && n >= 3 && std::string_view("aiou").find(prev) != std::string_view::npos &&
            is_consonant(s, n - 3)) {
            return with_e();
        }
        if (measure(s) == 1 && ends_cvc(s)) {
            return with_e();
        }
        return std::string(s);
    }

    Lexicon lexicon_;
};

}  // namespace totbench::textproc
