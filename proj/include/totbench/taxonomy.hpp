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

#include <array>
#include <bitset>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace totbench {

/// The seven broad categories the sentence codes are grouped into.
enum class CodeCategory : std::uint8_t {
    Movie,
    Context,
    PreviousSearch,
    Social,
    Uncertainty,
    OpinionEmotion,
    RelativeComparison,
};

[[nodiscard]] constexpr auto category_name(CodeCategory c) -> std::string_view {
    switch (c) {
    case CodeCategory::Movie: return "Movie";
    case CodeCategory::Context: return "Context";
    case CodeCategory::PreviousSearch: return "Previous search";
    case CodeCategory::Social: return "Social";
    case CodeCategory::Uncertainty: return "Uncertainty";
    case CodeCategory::OpinionEmotion: return "Opinion/emotion";
    case CodeCategory::RelativeComparison: return "Relative comparison";
    }
    return "?";
}

struct CodeLabel {
    std::string_view name;
    CodeCategory category;
};

inline constexpr std::size_t kNumCodes = 34;

/// Dense index into the shipped taxonomy.
enum class CodeId : std::uint8_t {};

[[nodiscard]] constexpr auto to_index(CodeId id) -> std::size_t { return static_cast<std::size_t>(id); }

namespace detail {
inline constexpr std::array<CodeLabel, kNumCodes> kTaxonomy = {{
    // Movie (content) codes.
    {"Character", CodeCategory::Movie},
    {"Scene", CodeCategory::Movie},
    {"Object", CodeCategory::Movie},
    {"Category", CodeCategory::Movie},
    {"Location type", CodeCategory::Movie},
    {"Plot summary", CodeCategory::Movie},
    {"Release date", CodeCategory::Movie},
    {"Genre/tone", CodeCategory::Movie},
    {"Visual style", CodeCategory::Movie},
    {"Language", CodeCategory::Movie},
    {"Regional origin", CodeCategory::Movie},
    {"Specific location", CodeCategory::Movie},
    {"Quote/dialogue", CodeCategory::Movie},
    {"Real person", CodeCategory::Movie},
    {"Camera angle", CodeCategory::Movie},
    {"Singular timeframe", CodeCategory::Movie},
    {"Multiple timeframe", CodeCategory::Movie},
    {"Fictional person", CodeCategory::Movie},
    {"Actor nationality", CodeCategory::Movie},
    {"Target audience", CodeCategory::Movie},
    {"Compares music", CodeCategory::Movie},
    {"Specific music", CodeCategory::Movie},
    // Context codes.
    {"Temporal context", CodeCategory::Context},
    {"Physical medium", CodeCategory::Context},
    {"Cross media", CodeCategory::Context},
    {"Contextual witness", CodeCategory::Context},
    {"Physical location", CodeCategory::Context},
    {"Concurrent events", CodeCategory::Context},
    // Remaining codes.
    {"Previous search", CodeCategory::PreviousSearch},
    {"Social", CodeCategory::Social},
    {"Uncertainty", CodeCategory::Uncertainty},
    {"Opinion", CodeCategory::OpinionEmotion},
    {"Emotion", CodeCategory::OpinionEmotion},
    {"Relative comparison", CodeCategory::RelativeComparison},
}};
}  // namespace detail

/// Lowercases and collapses internal whitespace runs to one space; leading and
/// trailing whitespace is dropped.
[[nodiscard]] inline auto canonical_code_key(std::string_view name) -> std::string {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (unsigned char ch : name) {
        if (std::isspace(ch)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(ch)));
    }
    return out;
}

class CodeTaxonomy {
  public:
    [[nodiscard]] static constexpr auto size() -> std::size_t { return kNumCodes; }

    [[nodiscard]] static constexpr auto label(CodeId id) -> const CodeLabel& {
        return detail::kTaxonomy[to_index(id)];
    }

    [[nodiscard]] static constexpr auto name(CodeId id) -> std::string_view { return label(id).name; }

    [[nodiscard]] static constexpr auto category(CodeId id) -> CodeCategory { return label(id).category; }

    [[nodiscard]] static auto find(std::string_view name) -> std::optional<CodeId> {
        auto key = canonical_code_key(name);
        for (std::size_t i = 0; i < kNumCodes; ++i) {
            if (canonical_code_key(detail::kTaxonomy[i].name) == key) {
                return CodeId{static_cast<std::uint8_t>(i)};
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] static auto all() -> std::vector<CodeId> {
        std::vector<CodeId> ids;
        ids.reserve(kNumCodes);
        for (std::size_t i = 0; i < kNumCodes; ++i) {
            ids.push_back(CodeId{static_cast<std::uint8_t>(i)});
        }
        return ids;
    }

    [[nodiscard]] static auto in_category(CodeCategory c) -> std::vector<CodeId> {
        std::vector<CodeId> ids;
        for (auto id : all()) {
            if (category(id) == c) {
                ids.push_back(id);
            }
        }
        return ids;
    }
};

/// A set of codes. Codes are not mutually exclusive, so any subset is legal.
class CodeSet {
  public:
    CodeSet() = default;
    CodeSet(std::initializer_list<CodeId> ids) {
        for (auto id : ids) {
            insert(id);
        }
    }

    void insert(CodeId id) { bits_.set(to_index(id)); }
    void erase(CodeId id) { bits_.reset(to_index(id)); }
    [[nodiscard]] auto contains(CodeId id) const -> bool { return bits_.test(to_index(id)); }
    [[nodiscard]] auto empty() const -> bool { return bits_.none(); }
    [[nodiscard]] auto size() const -> std::size_t { return bits_.count(); }
    [[nodiscard]] auto intersects(const CodeSet& other) const -> bool { return (bits_ & other.bits_).any(); }

    [[nodiscard]] auto ids() const -> std::vector<CodeId> {
        std::vector<CodeId> out;
        for (std::size_t i = 0; i < kNumCodes; ++i) {
            if (bits_.test(i)) {
                out.push_back(CodeId{static_cast<std::uint8_t>(i)});
            }
        }
        return out;
    }

    auto operator|=(const CodeSet& other) -> CodeSet& {
        bits_ |= other.bits_;
        return *this;
    }

    friend auto operator==(const CodeSet&, const CodeSet&) -> bool = default;

  private:
    std::bitset<kNumCodes> bits_;
};

[[nodiscard]] inline auto category_codes(CodeCategory c) -> CodeSet {
    CodeSet set;
    for (auto id : CodeTaxonomy::in_category(c)) {
        set.insert(id);
    }
    return set;
}

}  // namespace totbench
