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

#include "mtt/digest.hpp"

#include "mtt/errors.hpp"

namespace mtt {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> data) {
    std::string out;
    out.resize(data.size() * 2);
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[2 * i] = kHexDigits[data[i] >> 4];
        out[2 * i + 1] = kHexDigits[data[i] & 0x0f];
    }
    return out;
}

std::vector<std::uint8_t> bytes_from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw ParseError("ParseError: hex string has odd length " + std::to_string(hex.size()));
    }
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw ParseError("ParseError: non-hex character at offset " + std::to_string(2 * i));
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string Digest::to_hex() const {
    return mtt::to_hex(bytes);
}

Digest Digest::from_hex(std::string_view hex) {
    if (hex.size() != 2 * kSize) {
        throw ParseError("ParseError: digest hex must be 64 characters, got " +
                         std::to_string(hex.size()));
    }
    const auto raw = bytes_from_hex(hex);
    Digest d;
    std::copy(raw.begin(), raw.end(), d.bytes.begin());
    return d;
}

}  // namespace mtt
