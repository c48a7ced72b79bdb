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

#include <filesystem>
#include <string>
#include <string_view>

#include "mtt/merkle.hpp"
#include "mtt/proofs.hpp"

namespace mtt {

// Canonical tokens used in files and CLI flags.
std::string to_string(TreeVariant variant);  // "traditional" | "trim"
std::string to_string(HashMode mode);        // "plain" | "domsep"
std::string to_string(Side side);            // "L" | "R"

// Throw ParseError on unknown tokens.
TreeVariant variant_from_string(std::string_view s);
HashMode mode_from_string(std::string_view s);
Side side_from_string(std::string_view s);

std::string read_text_file(const std::filesystem::path& path);           // IoError
void write_text_file(const std::filesystem::path& path, std::string_view text);  // IoError

/// Tree dump document:
/// {variant, mode, n, levels: [[hex digests]], root: hex, stats} with levels
/// ordered leaf level first and stats holding the structural fields only
/// (total_nodes, internal_hashes, duplicated_pairings, levels), so dumps of
/// the same input are byte-identical across runs.
void write_tree_dump(const MerkleTree& tree, const std::filesystem::path& path);

/// Rebuilds the tree from the dump's leaf level under the recorded variant
/// and mode, then cross-checks the recomputed root and levels against the
/// stored ones. Throws ParseError on any mismatch (an edited or corrupt
/// dump), IoError if unreadable.
MerkleTree read_tree_dump(const std::filesystem::path& path);

/// Proof document:
/// {version: 1, variant, mode, n, leaf_index, leaf_digest: hex,
///  path: [{sibling: hex, side: "L"|"R"}], root: hex}.
void write_proof_file(const InclusionProof& proof, const Digest& root,
                      const std::filesystem::path& path);

struct ProofFile {
    InclusionProof proof;
    Digest root;  // root recorded at generation time
};
ProofFile read_proof_file(const std::filesystem::path& path);

}  // namespace mtt
