/*
 * Copyright 2026 The mtt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtt {

/// A 32-byte SHA-256 output. The universal node value: leaves, internal
/// nodes, roots, and header hashes are all Digests.
struct Digest {
    static constexpr std::size_t kSize = 32;

    std::array<std::uint8_t, kSize> bytes{};

    auto operator<=>(const Digest&) const = default;

    /// Lowercase hex, exactly 64 characters, no prefix. This rendering is
    /// used everywhere: files, CLI output, logs.
    [[nodiscard]] std::string to_hex() const;

    /// Parses 64 hex characters. Throws ParseError on wrong length or a
    /// non-hex character.
    static Digest from_hex(std::string_view hex);

    static constexpr Digest zero() { return Digest{}; }

    [[nodiscard]] std::span<const std::uint8_t> as_span() const { return bytes; }
};

/// Lowercase hex of an arbitrary byte string.
[[nodiscard]] std::string to_hex(std::span<const std::uint8_t> data);

/// Inverse of to_hex. Throws ParseError on odd length or a non-hex character.
[[nodiscard]] std::vector<std::uint8_t> bytes_from_hex(std::string_view hex);

}  // namespace mtt
