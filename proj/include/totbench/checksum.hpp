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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include <zlib.h>

#include "totbench/error.hpp"

namespace totbench {

/// CRC-32 (zlib polynomial) incrementally over byte ranges.
class Crc32 {
  public:
    auto update(std::string_view bytes) -> Crc32& {
        // zlib takes a uInt length; feed in bounded chunks.
        constexpr std::size_t kChunk = 1U << 30U;
        while (!bytes.empty()) {
            auto n = std::min(bytes.size(), kChunk);
            value_ = ::crc32(value_, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(n));
            bytes.remove_prefix(n);
        }
        return *this;
    }

    [[nodiscard]] auto value() const -> std::uint32_t { return static_cast<std::uint32_t>(value_); }

    [[nodiscard]] auto hex() const -> std::string { return to_hex(value()); }

    [[nodiscard]] static auto to_hex(std::uint32_t v) -> std::string {
        std::ostringstream os;
        os << std::hex << std::setw(8) << std::setfill('0') << v;
        return os.str();
    }

  private:
    uLong value_ = ::crc32(0L, Z_NULL, 0);
};

[[nodiscard]] inline auto crc32_of(std::string_view bytes) -> std::uint32_t { return Crc32{}.update(bytes).value(); }

[[nodiscard]] inline auto read_file(const std::filesystem::path& path) -> std::string {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

[[nodiscard]] inline auto file_crc32_hex(const std::filesystem::path& path) -> std::string {
    return Crc32::to_hex(crc32_of(read_file(path)));
}

}  // namespace totbench
