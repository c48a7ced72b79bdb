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
#include <vector>

#include "mtt/digest.hpp"
#include "mtt/hashing.hpp"
#include "mtt/merkle.hpp"

namespace mtt::kernels {

/// Root-only level folds. Same pairing rules as the arena builders in
/// merkle.hpp, without node bookkeeping. Used where only the root matters
/// (block assembly, chain validation) and by the kernel benchmark.

/// Serial reference fold.
Digest root_serial(TreeVariant variant, std::span<const Digest> leaves, HashMode mode);

/// Each level's pairings hashed in an OpenMP parallel loop. Bit-identical
/// to root_serial; falls back to the serial loop when built without OpenMP.
/// Hash counting stays exact (relaxed atomic), but per-thread counters see
/// only the slice each worker hashed.
Digest root_parallel(TreeVariant variant, std::span<const Digest> leaves, HashMode mode);

/// Leaf digests of a payload batch, in order.
std::vector<Digest> hash_leaves(std::span<const std::vector<std::uint8_t>> payloads,
                                HashMode mode);
std::vector<Digest> hash_leaves_parallel(std::span<const std::vector<std::uint8_t>> payloads,
                                         HashMode mode);

/// OpenMP thread budget (1 when built without OpenMP).
int max_threads();

}  // namespace mtt::kernels
