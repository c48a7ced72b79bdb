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

#include "mtt/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "mtt/errors.hpp"

namespace mtt {

std::string to_string(TreeVariant variant) {
    return variant == TreeVariant::Trim ? "trim" : "traditional";
}

std::string to_string(HashMode mode) {
    return mode == HashMode::DomainSeparated ? "domsep" : "plain";
}

std::string to_string(Side side) {
    return side == Side::Left ? "L" : "R";
}

TreeVariant variant_from_string(std::string_view s) {
    if (s == "trim") return TreeVariant::Trim;
    if (s == "traditional") return TreeVariant::Traditional;
    throw ParseError("Parse: unknown variant \"" + std::string(s) +
                     "\" (expected \"trim\" or \"traditional\")");
}

HashMode mode_from_string(std::string_view s) {
    if (s == "domsep") return HashMode::DomainSeparated;
    if (s == "plain") return HashMode::PlainConcat;
    throw ParseError("Parse: unknown mode \"" + std::string(s) +
                     "\" (expected \"plain\" or \"domsep\")");
}

Side side_from_string(std::string_view s) {
    if (s == "L") return Side::Left;
    if (s == "R") return Side::Right;
    throw ParseError("Parse: unknown side \"" + std::string(s) + "\" (expected \"L\" or \"R\")");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("Io: cannot open " + path.string() + " for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("Io: failed reading " + path.string());
    }
    return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("Io: cannot open " + path.string() + " for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw IoError("Io: failed writing " + path.string());
    }
}

namespace {

// Digests grouped by level ordinal, leaf level first, arena order within a
// level. The deterministic builders make this grouping reproducible, which
// is what lets a reload cross-check level for level.
std::vector<std::vector<std::string>> levels_hex(const MerkleTree& tree) {
    std::vector<std::vector<std::string>> levels(tree.stats.levels);
    for (const MerkleNode& node : tree.nodes) {
        levels[node.level].push_back(node.digest.to_hex());
    }
    return levels;
}

}  // namespace

void write_tree_dump(const MerkleTree& tree, const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["variant"] = to_string(tree.variant);
    doc["mode"] = to_string(tree.mode);
    doc["n"] = tree.stats.n;
    doc["levels"] = levels_hex(tree);
    doc["root"] = tree.root().to_hex();
    // build_nanos is deliberately left out so dumps of the same input are
    // byte-identical across runs.
    doc["stats"] = {
        {"total_nodes", tree.stats.total_nodes},
        {"internal_hashes", tree.stats.internal_hashes},
        {"duplicated_pairings", tree.stats.duplicated_pairings},
        {"levels", tree.stats.levels},
    };
    write_text_file(path, doc.dump(2) + "\n");
}

MerkleTree read_tree_dump(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        const TreeVariant variant = variant_from_string(doc.at("variant").get<std::string>());
        const HashMode mode = mode_from_string(doc.at("mode").get<std::string>());
        const auto n = doc.at("n").get<std::uint64_t>();
        const auto& levels = doc.at("levels");
        if (!levels.is_array() || levels.empty() || !levels.at(0).is_array()) {
            throw ParseError("Parse: tree dump levels must be an array of arrays");
        }

        std::vector<Digest> leaves;
        leaves.reserve(levels.at(0).size());
        for (const nlohmann::json& hex : levels.at(0)) {
            leaves.push_back(Digest::from_hex(hex.get<std::string>()));
        }
        if (leaves.size() != n) {
            throw ParseError("Parse: tree dump n=" + std::to_string(n) + " but leaf level holds " +
                             std::to_string(leaves.size()) + " digests");
        }

        MerkleTree tree = build_tree(variant, leaves, mode);
        if (tree.root().to_hex() != doc.at("root").get<std::string>()) {
            throw ParseError("Parse: tree dump root does not match the tree rebuilt from its leaves");
        }
        const auto rebuilt_levels = levels_hex(tree);
        if (rebuilt_levels.size() != levels.size()) {
            throw ParseError("Parse: tree dump level count does not match the rebuilt tree");
        }
        for (std::size_t l = 0; l < rebuilt_levels.size(); ++l) {
            const auto stored = levels.at(l).get<std::vector<std::string>>();
            if (stored != rebuilt_levels[l]) {
                throw ParseError("Parse: tree dump level " + std::to_string(l) +
                                 " does not match the rebuilt tree");
            }
        }
        const auto& stats = doc.at("stats");
        if (stats.at("total_nodes").get<std::uint64_t>() != tree.stats.total_nodes ||
            stats.at("internal_hashes").get<std::uint64_t>() != tree.stats.internal_hashes ||
            stats.at("duplicated_pairings").get<std::uint64_t>() !=
                tree.stats.duplicated_pairings ||
            stats.at("levels").get<std::uint64_t>() != tree.stats.levels) {
            throw ParseError("Parse: tree dump stats do not match the rebuilt tree");
        }
        return tree;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError("Parse: " + path.string() + ": " + e.what());
    }
}

void write_proof_file(const InclusionProof& proof, const Digest& root,
                      const std::filesystem::path& path) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["variant"] = to_string(proof.variant);
    doc["mode"] = to_string(proof.mode);
    doc["n"] = proof.n;
    doc["leaf_index"] = proof.leaf_index;
    doc["leaf_digest"] = proof.leaf_digest.to_hex();
    auto& path_array = doc["path"] = nlohmann::ordered_json::array();
    for (const ProofStep& step : proof.path) {
        path_array.push_back({{"sibling", step.sibling.to_hex()}, {"side", to_string(step.side)}});
    }
    doc["root"] = root.to_hex();
    write_text_file(path, doc.dump(2) + "\n");
}

ProofFile read_proof_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        if (doc.at("version").get<int>() != 1) {
            throw ParseError("Parse: unsupported proof file version");
        }
        ProofFile file;
        file.proof.variant = variant_from_string(doc.at("variant").get<std::string>());
        file.proof.mode = mode_from_string(doc.at("mode").get<std::string>());
        file.proof.n = doc.at("n").get<std::uint64_t>();
        file.proof.leaf_index = doc.at("leaf_index").get<std::uint64_t>();
        file.proof.leaf_digest = Digest::from_hex(doc.at("leaf_digest").get<std::string>());
        for (const nlohmann::json& step_doc : doc.at("path")) {
            ProofStep step;
            step.sibling = Digest::from_hex(step_doc.at("sibling").get<std::string>());
            step.side = side_from_string(step_doc.at("side").get<std::string>());
            file.proof.path.push_back(step);
        }
        file.root = Digest::from_hex(doc.at("root").get<std::string>());
        return file;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError("Parse: " + path.string() + ": " + e.what());
    }
}

}  // namespace mtt
