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

#include <cstdint>
#include <span>
#include <string_view>

#include "mtt/digest.hpp"

namespace mtt {

/// Hash-input framing shared by a tree and every proof over it.
///
/// PlainConcat is the textbook scheme: leaf = SHA-256(payload) and
/// internal = SHA-256(left || right). DomainSeparated prefixes 0x00 to leaf
/// preimages and 0x01 to internal preimages, so a leaf can never be
/// reinterpreted as an internal pairing (the classic shape-ambiguity
/// attack on concatenation trees). DomainSeparated is the default;
/// PlainConcat is kept as a compatibility mode.
///
/// Single SHA-256 throughout -- not Bitcoin's double-SHA-256, and no byte
/// order reversal -- so roots are not wire-compatible with Bitcoin.
enum class HashMode : std::uint8_t {
    PlainConcat,
    DomainSeparated,
};

/// Leaf digest of a payload (empty payload allowed). Counts one invocation.
Digest hash_leaf(std::span<const std::uint8_t> payload, HashMode mode);

inline Digest hash_leaf(std::string_view payload, HashMode mode) {
    return hash_leaf(std::span{reinterpret_cast<const std::uint8_t*>(payload.data()),
                               payload.size()},
                     mode);
}

/// Parent digest of two children, left-then-right. Counts one invocation.
/// left == right is well-defined (used by the Traditional variant's
/// duplicate-last pairing).
Digest hash_internal(const Digest& left, const Digest& right, HashMode mode);

/// Process-wide total of hash invocations (hash_leaf + hash_internal) since
/// start or the last reset. Updated with a relaxed atomic, so the total
/// stays exact under concurrent builds. This count is the benchmark
/// harness's energy proxy: one SHA-256 compression-equivalent per unit.
std::uint64_t hash_counter_snapshot();
void hash_counter_reset();

/// Invocation count of the calling thread only. Never reset; callers
/// measure deltas. Used by benchmark cells that run concurrently and must
/// not observe each other's hashing.
std::uint64_t hash_counter_thread();

}  // namespace mtt
