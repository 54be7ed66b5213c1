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
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "totbench/checksum.hpp"
#include "totbench/error.hpp"
#include "totbench/textproc/stopword_list.hpp"

namespace totbench::textproc {

struct StringHash {
    using is_transparent = void;
    auto operator()(std::string_view s) const noexcept -> std::size_t { return std::hash<std::string_view>{}(s); }
};

/// Set of lowercase stopwords with string_view lookup.
class StopwordSet {
  public:
    StopwordSet() = default;

    template <typename Range>
    explicit StopwordSet(const Range& words) {
        for (const auto& w : words) {
            words_.emplace(w);
        }
    }

    /// The pinned list shipped with the library.
    [[nodiscard]] static auto indri() -> const StopwordSet& {
        static const StopwordSet set(kIndriStopwords);
        return set;
    }

    /// One word per line; blank lines and lines starting with '#' are skipped.
    [[nodiscard]] static auto load(const std::filesystem::path& path) -> StopwordSet {
        std::ifstream in(path);
        if (!in) {
            throw DataError("cannot open stopword list " + path.string());
        }
        StopwordSet set;
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            auto last = line.find_last_not_of(" \t\r");
            std::string word = line.substr(first, last - first + 1);
            std::transform(word.begin(), word.end(), word.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            set.words_.insert(std::move(word));
        }
        return set;
    }

    [[nodiscard]] auto contains(std::string_view word) const -> bool { return words_.find(word) != words_.end(); }
    [[nodiscard]] auto size() const -> std::size_t { return words_.size(); }
    [[nodiscard]] auto empty() const -> bool { return words_.empty(); }

    [[nodiscard]] auto sorted() const -> std::vector<std::string> {
        std::vector<std::string> out(words_.begin(), words_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    /// CRC-32 over the sorted words joined by '\n'; pins the list contents.
    [[nodiscard]] auto fingerprint() const -> std::string {
        Crc32 crc;
        for (const auto& w : sorted()) {
            crc.update(w).update("\n");
        }
        return crc.hex();
    }

  private:
    std::unordered_set<std::string, StringHash, std::equal_to<>> words_;
};

/// Order-preserving filter.
[[nodiscard]] inline auto remove_stopwords(const std::vector<std::string>& tokens, const StopwordSet& stopwords)
    -> std::vector<std::string> {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
                 [&](const std::string& t) { return !stopwords.contains(t); });
    return out;
}

}  // namespace totbench::textproc
