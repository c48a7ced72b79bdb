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

#include "mtt/merkle.hpp"

namespace mtt {

/// One audit-path step. `side` is the side the SIBLING occupies in the
/// pairing, recorded explicitly because trim trees are irregular: a carry
/// breaks the usual index arithmetic, so the side cannot be derived from
/// the leaf index.
struct ProofStep {
    Digest sibling;
    Side side = Side::Right;
};

/// Self-contained inclusion proof: carries n, variant, and mode so
/// verification needs nothing but the proof and the expected root.
struct InclusionProof {
    std::uint64_t leaf_index = 0;
    Digest leaf_digest;
    std::vector<ProofStep> path;  // leaf to root; empty only when n = 1
    TreeVariant variant = TreeVariant::Trim;
    HashMode mode = HashMode::DomainSeparated;
    std::uint64_t n = 0;
};

struct VerificationOutcome {
    bool valid = false;
    Digest computed_root;
    Digest expected_root;
    std::uint64_t steps_applied = 0;
};

/// Fixed per-proof overhead besides the 32-byte siblings:
/// version(1) + variant(1) + mode(1) + reserved(1) + leaf_index(8) + n(8) +
/// leaf_digest(32) + path_length(4) = 56 bytes.
inline constexpr std::size_t kProofHeaderBytes = 56;

/// Audit path for one leaf: walking parent links to the root, emit the
/// other child of each pairing. A Traditional duplicated pairing emits the
/// node's own digest as its sibling; a Trim carry consumption emits the
/// carry (or the reduced node) with the recorded side. Throws
/// IndexOutOfRange.
InclusionProof generate_proof(const MerkleTree& tree, std::uint64_t leaf_index);

/// Folds the path: h starts at leaf_digest, then h = H(sibling || h) when
/// the sibling is Left, H(h || sibling) when Right. Never consults a tree.
/// An invalid proof is a false outcome, not an error.
VerificationOutcome verify_proof(const InclusionProof& proof, const Digest& expected_root);

/// Recomputes the tree from the supplied leaves under the stored variant
/// and mode. Returns the sorted leaf indices under mismatching subtrees,
/// found by descending from the root and pruning subtrees whose recomputed
/// digest matches; empty means the leaves reproduce the stored root.
/// Throws LengthMismatch when leaves.size() != tree leaf count.
std::vector<std::uint64_t> detect_tamper(const MerkleTree& tree, std::span<const Digest> leaves);

/// Serialized size: kProofHeaderBytes + 32 * path length.
std::size_t proof_size_bytes(const InclusionProof& proof);

}  // namespace mtt
