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

#include "mtt/merkle.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>

#include "mtt/errors.hpp"

namespace mtt {
namespace {

using SteadyClock = std::chrono::steady_clock;

std::uint64_t nanos_since(SteadyClock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(SteadyClock::now() - start)
            .count());
}

MerkleTree init_tree(TreeVariant variant, std::span<const Digest> leaves, HashMode mode) {
    if (leaves.empty()) {
        throw EmptyLeavesError("EmptyLeaves: cannot build a tree from zero leaves");
    }
    MerkleTree t;
    t.variant = variant;
    t.mode = mode;
    t.stats.n = leaves.size();
    t.nodes.reserve(structural_counts(leaves.size(), variant).stored_nodes);
    for (const Digest& d : leaves) {
        MerkleNode leaf;
        leaf.digest = d;
        leaf.kind = NodeKind::Leaf;
        t.nodes.push_back(leaf);
    }
    return t;
}

// Hashes left||right into a new arena node and wires parent links. The
// children may be the same ordinal (Traditional duplication); the child then
// records Left and keeps a single parent link.
std::uint32_t add_internal(MerkleTree& t, std::uint32_t left, std::uint32_t right) {
    MerkleNode node;
    node.kind = NodeKind::Internal;
    node.digest = hash_internal(t.nodes[left].digest, t.nodes[right].digest, t.mode);
    node.level = 1 + std::max(t.nodes[left].level, t.nodes[right].level);
    node.left = left;
    node.right = right;
    const auto index = static_cast<std::uint32_t>(t.nodes.size());
    t.nodes[left].parent = index;
    t.nodes[left].side = Side::Left;
    if (right != left) {
        t.nodes[right].parent = index;
        t.nodes[right].side = Side::Right;
    }
    t.nodes.push_back(node);
    ++t.stats.internal_hashes;
    return index;
}

void finalize(MerkleTree& t, std::uint32_t root, SteadyClock::time_point start) {
    t.root_index = root;
    t.stats.total_nodes = t.nodes.size();
    t.stats.levels = t.nodes[root].level + 1;
    t.stats.build_nanos = nanos_since(start);
}

}  // namespace

MerkleTree build_traditional(std::span<const Digest> leaves, HashMode mode) {
    const auto start = SteadyClock::now();
    MerkleTree t = init_tree(TreeVariant::Traditional, leaves, mode);

    std::vector<std::uint32_t> level(leaves.size());
    std::iota(level.begin(), level.end(), 0u);

    while (level.size() > 1) {
        std::vector<std::uint32_t> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            const std::uint32_t left = level[i];
            const std::uint32_t right = (i + 1 < level.size()) ? level[i + 1] : level[i];
            if (right == left) ++t.stats.duplicated_pairings;
            next.push_back(add_internal(t, left, right));
        }
        level = std::move(next);
    }

    finalize(t, level[0], start);
    return t;
}

MerkleTree build_trim(std::span<const Digest> leaves, HashMode mode) {
    const auto start = SteadyClock::now();
    MerkleTree t = init_tree(TreeVariant::Trim, leaves, mode);

    std::vector<std::uint32_t> level(leaves.size());
    std::iota(level.begin(), level.end(), 0u);
    std::optional<std::uint32_t> carry;

    while (!(level.size() == 1 && !carry)) {
        if (level.size() == 1) {
            // Final reduction: the pending carry pairs, as left child, with
            // the fully reduced node.
            level[0] = add_internal(t, *carry, level[0]);
            carry.reset();
            continue;
        }
        std::vector<std::uint32_t> next;
        next.reserve(level.size() / 2 + 1);
        std::size_t i = 0;
        if (level.size() % 2 == 1) {
            if (carry) {
                // Consuming the carry restores even width.
                next.push_back(add_internal(t, *carry, level[0]));
                carry.reset();
            } else {
                carry = level[0];
            }
            i = 1;
        }
        for (; i < level.size(); i += 2) {
            next.push_back(add_internal(t, level[i], level[i + 1]));
        }
        level = std::move(next);
    }

    finalize(t, level[0], start);
    return t;
}

MerkleTree build_tree(TreeVariant variant, std::span<const Digest> leaves, HashMode mode) {
    return variant == TreeVariant::Trim ? build_trim(leaves, mode)
                                        : build_traditional(leaves, mode);
}

StructuralCounts structural_counts(std::uint64_t n, TreeVariant variant) {
    if (n == 0) {
        throw InvalidCountError("InvalidCount: leaf count must be at least 1");
    }
    StructuralCounts c;
    if (variant == TreeVariant::Trim) {
        c.stored_nodes = 2 * n - 1;
        c.internal_hashes = n - 1;
        return c;
    }
    c.stored_nodes = n;
    std::uint64_t width = n;
    while (width > 1) {
        if (width % 2 == 1) ++c.duplicated_pairings;
        width = (width + 1) / 2;
        c.stored_nodes += width;
        c.internal_hashes += width;
    }
    return c;
}

std::uint64_t expected_node_count(std::uint64_t n, TreeVariant variant) {
    return structural_counts(n, variant).stored_nodes;
}

std::vector<std::uint64_t> level_widths(const MerkleTree& tree) {
    std::vector<std::uint64_t> widths(tree.stats.levels, 0);
    for (const MerkleNode& node : tree.nodes) {
        ++widths[node.level];
    }
    return widths;
}

}  // namespace mtt
