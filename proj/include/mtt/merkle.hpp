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

namespace mtt {

enum class TreeVariant : std::uint8_t {
    /// Bitcoin-style: an odd-width level pairs its last node with itself.
    Traditional,
    /// Trim: the first node of an odd-width level is set aside (the carry)
    /// and paired later, as the LEFT child, with the first node of the next
    /// odd-width level or with the final reduced node. At most one carry is
    /// ever pending. No node is ever paired with itself, and the tree holds
    /// exactly 2n-1 nodes for every n.
    Trim,
};

enum class NodeKind : std::uint8_t { Leaf, Internal };
enum class Side : std::uint8_t { Left, Right };

inline constexpr std::uint32_t kNoNode = 0xffffffffu;

/// Flat-arena node. Ordinals index MerkleTree::nodes; leaves occupy
/// ordinals [0, n) in leaf order, internals follow in creation order.
struct MerkleNode {
    Digest digest;
    NodeKind kind = NodeKind::Leaf;
    /// 0 for leaves; 1 + max(children levels) for internals.
    std::uint32_t level = 0;
    std::uint32_t parent = kNoNode;
    /// Side under parent; meaningful only when parent != kNoNode. A
    /// Traditional duplicate-last child records Left.
    Side side = Side::Left;
    /// Children; equal ordinals occur only in Traditional duplication.
    std::uint32_t left = kNoNode;
    std::uint32_t right = kNoNode;

    [[nodiscard]] bool is_leaf() const { return kind == NodeKind::Leaf; }
};

struct TreeStats {
    std::uint64_t n = 0;
    std::uint64_t total_nodes = 0;
    std::uint64_t internal_hashes = 0;
    /// Pairings of a node with itself. Traditional only; always 0 for Trim.
    std::uint64_t duplicated_pairings = 0;
    std::uint64_t levels = 0;
    std::uint64_t build_nanos = 0;
};

/// A built tree is immutable; concurrent reads (root queries, proof
/// generation) are safe. Building itself is single-threaded -- see
/// kernels.hpp for the root-only parallel path.
struct MerkleTree {
    TreeVariant variant = TreeVariant::Trim;
    HashMode mode = HashMode::DomainSeparated;
    std::vector<MerkleNode> nodes;
    std::uint32_t root_index = kNoNode;
    TreeStats stats;

    [[nodiscard]] std::uint64_t leaf_count() const { return stats.n; }
    [[nodiscard]] const Digest& root() const { return nodes[root_index].digest; }
};

/// Builds the duplicate-last tree. n = 1 yields root = the leaf and zero
/// internal hashes. Throws EmptyLeaves for an empty list.
MerkleTree build_traditional(std::span<const Digest> leaves, HashMode mode);

/// Builds the trim tree under the carry rule described on TreeVariant::Trim.
/// Guarantees total_nodes = 2n-1 and internal_hashes = n-1. Throws
/// EmptyLeaves for an empty list.
MerkleTree build_trim(std::span<const Digest> leaves, HashMode mode);

MerkleTree build_tree(TreeVariant variant, std::span<const Digest> leaves, HashMode mode);

/// Node and hash counts derived from the level-width recurrence alone; no
/// hashing, O(log n). Duplicated pairings hash an existing node against
/// itself, so they cost an invocation but store no extra node.
struct StructuralCounts {
    std::uint64_t stored_nodes = 0;
    std::uint64_t internal_hashes = 0;
    std::uint64_t duplicated_pairings = 0;
};
StructuralCounts structural_counts(std::uint64_t n, TreeVariant variant);

/// Trim: 2n-1. Traditional: n plus one stored parent per pairing at every
/// level. Throws InvalidCount for n = 0.
std::uint64_t expected_node_count(std::uint64_t n, TreeVariant variant);

/// Stored node count per level, leaf level first. A pending Trim carry is
/// a leaf-level node; it shows up again only through the width of the level
/// where its parent lands (the level that consumes it).
std::vector<std::uint64_t> level_widths(const MerkleTree& tree);

}  // namespace mtt
