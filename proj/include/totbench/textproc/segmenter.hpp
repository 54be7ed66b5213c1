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
#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace totbench::textproc {

/// Abbreviations (lowercase, each ending with '.') after which a period never
/// ends a sentence.
using AbbreviationSet = std::set<std::string, std::less<>>;

[[nodiscard]] inline auto default_abbreviations() -> AbbreviationSet {
    return {"mr.",  "mrs.", "ms.",  "dr.",   "prof.", "sr.",  "jr.",  "st.",   "mt.",  "ft.",  "vs.",
            "e.g.", "i.e.", "inc.", "ltd.",  "co.",   "jan.", "feb.", "apr.",  "jun.", "jul.", "aug.",
            "sep.", "oct.", "nov.", "dec.",  "sept.", "vol.", "gen.", "col.",  "lt.",  "sgt.", "capt.",
            "rev.", "u.s.", "u.k.", "a.m.", "p.m.",  "ca.",  "cf.",  "approx."};
}

/// Half-open byte range [begin, end) into the segmented text.
struct SentenceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    friend auto operator==(const SentenceSpan&, const SentenceSpan&) -> bool = default;
};

namespace detail {
[[nodiscard]] inline auto is_space(char c) -> bool { return std::isspace(static_cast<unsigned char>(c)) != 0; }
[[nodiscard]] inline auto is_terminator(char c) -> bool { return c == '.' || c == '!' || c == '?'; }
[[nodiscard]] inline auto is_closer(char c) -> bool { return c == '"' || c == '\'' || c == ')' || c == ']'; }
[[nodiscard]] inline auto is_opener(char c) -> bool { return c == '"' || c == '\'' || c == '(' || c == '['; }
[[nodiscard]] inline auto is_upper(char c) -> bool { return c >= 'A' && c <= 'Z'; }
[[nodiscard]] inline auto is_digit(char c) -> bool { return c >= '0' && c <= '9'; }
}  // namespace detail

/// Rule-based segmenter. Splits after '.', '!' or '?' (plus any trailing
/// closing quotes or brackets) when followed by whitespace and an uppercase
/// letter, or by end of text. A period does not split after a listed
/// abbreviation, after a single-letter initial, or between two digits.
class SentenceSegmenter {
  public:
    SentenceSegmenter() : abbreviations_(default_abbreviations()) {}
    explicit SentenceSegmenter(AbbreviationSet abbreviations) : abbreviations_(std::move(abbreviations)) {}

    [[nodiscard]] auto abbreviations() const -> const AbbreviationSet& { return abbreviations_; }

    /// Spans of each sentence in `text`, trimmed of surrounding whitespace.
    [[nodiscard]] auto spans(std::string_view text) const -> std::vector<SentenceSpan> {
        std::vector<SentenceSpan> out;
        std::size_t start = 0;
        std::size_t i = 0;
        const std::size_t n = text.size();
        while (i < n) {
            if (!detail::is_terminator(text[i])) {
                ++i;
                continue;
            }
            std::size_t mark = i;
            std::size_t j = i;
            while (j < n && detail::is_terminator(text[j])) {
                ++j;
            }
            while (j < n && detail::is_closer(text[j])) {
                ++j;
            }
            if (is_boundary(text, mark, j)) {
                push_trimmed(text, start, j, out);
                start = j;
            }
            i = j;
        }
        push_trimmed(text, start, n, out);
        return out;
    }

    /// Sentence strings with internal whitespace collapsed to single spaces.
    [[nodiscard]] auto segment(std::string_view text) const -> std::vector<std::string> {
        std::vector<std::string> out;
        for (auto span : spans(text)) {
            out.push_back(normalize_whitespace(text.substr(span.begin, span.end - span.begin)));
        }
        return out;
    }

    [[nodiscard]] static auto normalize_whitespace(std::string_view text) -> std::string {
        std::string out;
        out.reserve(text.size());
        bool pending = false;
        for (char c : text) {
            if (detail::is_space(c)) {
                pending = !out.empty();
                continue;
            }
            if (pending) {
                out.push_back(' ');
                pending = false;
            }
            out.push_back(c);
        }
        return out;
    }

  private:
    // `mark` is the first terminator, `after` one past the terminator run and
    // any closers.
    [[nodiscard]] auto is_boundary(std::string_view text, std::size_t mark, std::size_t after) const -> bool {
        const std::size_t n = text.size();
        std::size_t k = after;
        while (k < n && detail::is_space(text[k])) {
            ++k;
        }
        if (k == n) {
            return true;
        }
        if (k == after) {
            return false;  // no whitespace after the terminator
        }
        char next = text[k];
        if (detail::is_opener(next) && k + 1 < n) {
            next = text[k + 1];
        }
        if (!detail::is_upper(next)) {
            return false;
        }
        if (text[mark] == '.' && after == mark + 1) {
            return !period_is_guarded(text, mark);
        }
        return true;
    }

    [[nodiscard]] auto period_is_guarded(std::string_view text, std::size_t dot) const -> bool {
        if (dot > 0 && dot + 1 < text.size() && detail::is_digit(text[dot - 1]) && detail::is_digit(text[dot + 1])) {
            return true;
        }
        std::size_t b = dot;
        while (b > 0 && !detail::is_space(text[b - 1])) {
            --b;
        }
        while (b < dot && detail::is_opener(text[b])) {
            ++b;
        }
        std::string word(text.substr(b, dot + 1 - b));
        std::transform(word.begin(), word.end(), word.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (word.size() == 2 && std::isalpha(static_cast<unsigned char>(word[0]))) {
            return true;  // initial, e.g. "J."
        }
        return abbreviations_.contains(word);
    }

    static void push_trimmed(std::string_view text, std::size_t b, std::size_t e, std::vector<SentenceSpan>& out) {
        while (b < e && detail::is_space(text[b])) {
            ++b;
        }
        while (e > b && detail::is_space(text[e - 1])) {
            --e;
        }
        if (b < e) {
            out.push_back({b, e});
        }
    }

    AbbreviationSet abbreviations_;
};

}  // namespace totbench::textproc
