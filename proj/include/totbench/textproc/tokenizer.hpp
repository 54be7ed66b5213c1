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

#include <string>
#include <string_view>
#include <vector>

namespace totbench::textproc {

namespace detail {
// Bytes >= 0x80 are kept so UTF-8 sequences stay inside one token.
[[nodiscard]] constexpr auto is_word_byte(unsigned char ch) -> bool {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch >= 0x80;
}

[[nodiscard]] constexpr auto fold_case(unsigned char ch) -> char {
    return static_cast<char>((ch >= 'A' && ch <= 'Z') ? ch + ('a' - 'A') : ch);
}
}  // namespace detail

/// Calls `fn(std::string_view)` for each lowercased token of `text`. The view
/// is only valid for the duration of the call.
template <typename Fn>
void for_each_token(std::string_view text, Fn&& fn) {
    std::string buf;
    for (unsigned char ch : text) {
        if (detail::is_word_byte(ch)) {
            buf.push_back(detail::fold_case(ch));
        } else if (!buf.empty()) {
            fn(std::string_view{buf});
            buf.clear();
        }
    }
    if (!buf.empty()) {
        fn(std::string_view{buf});
    }
}

/// Lowercase, split on every non-alphanumeric character, drop empty tokens.
/// Digits are word characters, so "70s" and "1986" survive intact.
[[nodiscard]] inline auto tokenize(std::string_view text) -> std::vector<std::string> {
    std::vector<std::string> out;
    for_each_token(text, [&](std::string_view tok) { out.emplace_back(tok); });
    return out;
}

}  // namespace totbench::textproc
