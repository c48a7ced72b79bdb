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

#include "mtt/proofs.hpp"

#include <algorithm>
#include <string>

#include "mtt/errors.hpp"

namespace mtt {

InclusionProof generate_proof(const MerkleTree& tree, std::uint64_t leaf_index) {
    if (leaf_index >= tree.leaf_count()) {
        throw IndexOutOfRangeError("IndexOutOfRange: leaf index " + std::to_string(leaf_index) +
                                   " not in [0, " + std::to_string(tree.leaf_count()) + ")");
    }
    InclusionProof proof;
    proof.leaf_index = leaf_index;
    proof.leaf_digest = tree.nodes[leaf_index].digest;
    proof.variant = tree.variant;
    proof.mode = tree.mode;
    proof.n = tree.leaf_count();

    std::uint32_t cur = static_cast<std::uint32_t>(leaf_index);
    while (tree.nodes[cur].parent != kNoNode) {
        const MerkleNode& parent = tree.nodes[tree.nodes[cur].parent];
        ProofStep step;
        if (tree.nodes[cur].side == Side::Left) {
            step.sibling = tree.nodes[parent.right].digest;
            step.side = Side::Right;
        } else {
            step.sibling = tree.nodes[parent.left].digest;
            step.side = Side::Left;
        }
        proof.path.push_back(step);
        cur = tree.nodes[cur].parent;
    }
    return proof;
}

VerificationOutcome verify_proof(const InclusionProof& proof, const Digest& expected_root) {
    VerificationOutcome out;
    out.expected_root = expected_root;
    Digest h = proof.leaf_digest;
    for (const ProofStep& step : proof.path) {
        h = step.side == Side::Left ? hash_internal(step.sibling, h, proof.mode)
                                    : hash_internal(h, step.sibling, proof.mode);
        ++out.steps_applied;
    }
    out.computed_root = h;
    out.valid = h == expected_root;
    return out;
}

namespace {

// Shadow-tree DFS. Both trees came from the same deterministic builder, so
// ordinals line up node for node; a subtree whose recomputed digest matches
// is pruned without visiting its leaves.
void collect_mismatches(const MerkleTree& stored, const MerkleTree& shadow, std::uint32_t node,
                        std::vector<std::uint64_t>& out) {
    if (stored.nodes[node].digest == shadow.nodes[node].digest) return;
    if (stored.nodes[node].is_leaf()) {
        out.push_back(node);
        return;
    }
    const std::uint32_t left = stored.nodes[node].left;
    const std::uint32_t right = stored.nodes[node].right;
    collect_mismatches(stored, shadow, left, out);
    if (right != left) collect_mismatches(stored, shadow, right, out);
}

}  // namespace

std::vector<std::uint64_t> detect_tamper(const MerkleTree& tree, std::span<const Digest> leaves) {
    if (leaves.size() != tree.leaf_count()) {
        throw LengthMismatchError("LengthMismatch: tree holds " +
                                  std::to_string(tree.leaf_count()) + " leaves, got " +
                                  std::to_string(leaves.size()));
    }
    const MerkleTree shadow = build_tree(tree.variant, leaves, tree.mode);
    std::vector<std::uint64_t> mismatched;
    collect_mismatches(tree, shadow, tree.root_index, mismatched);
    std::sort(mismatched.begin(), mismatched.end());
    return mismatched;
}

std::size_t proof_size_bytes(const InclusionProof& proof) {
    return kProofHeaderBytes + Digest::kSize * proof.path.size();
}

}  // namespace mtt
