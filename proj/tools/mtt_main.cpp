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

// mtt: Merkle trim-tree toolkit.
//
// Exit codes: 0 success; 1 verification/validation failure (invalid proof,
// failing chain, tampering found); 2 usage or parse error; 3 I/O error.
// Human-readable results go to standard output, diagnostics to standard
// error, and machine formats (CSV/JSON) are never mixed with notes.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtt/bench.hpp"
#include "mtt/chain.hpp"
#include "mtt/errors.hpp"
#include "mtt/io.hpp"
#include "mtt/merkle.hpp"
#include "mtt/proofs.hpp"

namespace {

std::vector<mtt::Digest> mempool_leaf_digests(const std::filesystem::path& input,
                                              mtt::HashMode mode) {
    const auto records = mtt::ingest_transactions(input);
    std::vector<mtt::Digest> leaves;
    leaves.reserve(records.size());
    for (const auto& record : records) {
        leaves.push_back(
            mtt::hash_leaf(std::span<const std::uint8_t>(record.payload), mode));
    }
    return leaves;
}

int run_build(const std::string& input, const std::string& variant_token,
              const std::string& mode_token, const std::string& out) {
    const mtt::TreeVariant variant = mtt::variant_from_string(variant_token);
    const mtt::HashMode mode = mtt::mode_from_string(mode_token);
    const auto leaves = mempool_leaf_digests(input, mode);
    const mtt::MerkleTree tree = mtt::build_tree(variant, leaves, mode);
    std::cout << tree.root().to_hex() << "\n"
              << "nodes=" << tree.stats.total_nodes
              << " internal_hashes=" << tree.stats.internal_hashes
              << " duplicated_pairings=" << tree.stats.duplicated_pairings
              << " levels=" << tree.stats.levels << "\n";
    if (!out.empty()) {
        mtt::write_tree_dump(tree, out);
    }
    return 0;
}

int run_prove(const std::string& tree_file, std::uint64_t index, const std::string& out) {
    const mtt::MerkleTree tree = mtt::read_tree_dump(tree_file);
    const mtt::InclusionProof proof = mtt::generate_proof(tree, index);
    std::cout << "depth=" << proof.path.size() << "\n";
    if (!out.empty()) {
        mtt::write_proof_file(proof, tree.root(), out);
    }
    return 0;
}

int run_verify(const std::string& proof_file, const std::string& root_hex,
               const std::string& mode_token) {
    const mtt::ProofFile file = mtt::read_proof_file(proof_file);
    const mtt::Digest root = mtt::Digest::from_hex(root_hex);
    if (!mode_token.empty() && mtt::mode_from_string(mode_token) != file.proof.mode) {
        throw mtt::UsageError("Usage: mode mismatch: proof records \"" +
                              mtt::to_string(file.proof.mode) + "\", --mode says \"" +
                              mode_token + "\"");
    }
    const mtt::VerificationOutcome outcome = mtt::verify_proof(file.proof, root);
    std::cout << (outcome.valid ? "VALID" : "INVALID") << "\n";
    return outcome.valid ? 0 : 1;
}

int run_tamper(const std::string& tree_file, const std::string& input) {
    const mtt::MerkleTree tree = mtt::read_tree_dump(tree_file);
    const auto leaves = mempool_leaf_digests(input, tree.mode);
    const auto indices = mtt::detect_tamper(tree, leaves);
    if (indices.empty()) {
        std::cout << "CLEAN\n";
        return 0;
    }
    std::cout << "TAMPERED indices=";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        std::cout << (i ? "," : "") << indices[i];
    }
    std::cout << "\n";
    return 1;
}

int run_chain_assemble(const std::string& dir, const std::string& input,
                       const std::string& variant_token, const std::string& mode_token) {
    const mtt::TreeVariant variant = mtt::variant_from_string(variant_token);
    const mtt::HashMode mode = mtt::mode_from_string(mode_token);
    auto mempool = mtt::ingest_transactions(input);

    const mtt::ChainStore store(dir);
    const std::size_t base = store.block_count();
    std::optional<mtt::Digest> prev;
    if (base > 0) {
        const mtt::Block last = store.read_block(base - 1);
        prev = mtt::header_digest(last.header, last.mode);
    }
    const auto blocks = mtt::assemble_blocks(std::move(mempool), variant, mode, prev,
                                             mtt::system_clock_seconds);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        store.write_block(base + i, blocks[i]);
        std::cout << "block_" << base + i << " root=" << blocks[i].header.merkle_root.to_hex()
                  << " txs=" << blocks[i].transactions.size() << "\n";
    }
    return 0;
}

int run_chain_validate(const std::string& dir) {
    const mtt::ChainStore store(dir);
    if (store.block_count() == 0) {
        throw mtt::UsageError("Usage: store " + dir + " contains no blocks");
    }
    const mtt::ValidationReport report = mtt::validate_chain(store);
    for (const auto& entry : report.blocks) {
        std::cout << "block_" << entry.index;
        if (entry.pass) {
            std::cout << " PASS\n";
        } else {
            std::cout << " FAIL " << entry.failed_check << "\n";
        }
    }
    return report.all_pass() ? 0 : 1;
}

int run_compare(std::uint64_t from, std::uint64_t to, const std::string& mode_token) {
    const auto rows = mtt::compare_variants(from, to, mtt::mode_from_string(mode_token));
    std::printf("%8s %12s %12s %12s %12s %12s %12s %12s\n", "n", "trad_nodes", "trim_nodes",
                "node_delta", "trad_hashes", "trim_hashes", "hash_delta", "trad_dups");
    for (const auto& row : rows) {
        std::printf("%8llu %12llu %12llu %12lld %12llu %12llu %12lld %12llu\n",
                    static_cast<unsigned long long>(row.n),
                    static_cast<unsigned long long>(row.traditional_nodes),
                    static_cast<unsigned long long>(row.trim_nodes),
                    static_cast<long long>(row.node_delta),
                    static_cast<unsigned long long>(row.traditional_internal_hashes),
                    static_cast<unsigned long long>(row.trim_internal_hashes),
                    static_cast<long long>(row.internal_hash_delta),
                    static_cast<unsigned long long>(row.traditional_duplicated_pairings));
    }
    return 0;
}

int run_bench(const std::vector<std::uint64_t>& sizes, std::uint32_t reps,
              const std::string& format_token, const std::string& out,
              const std::string& mode_token, std::uint32_t payload_bytes, std::uint64_t seed,
              bool parallel) {
    mtt::BenchConfig config;
    config.sizes = sizes;
    config.repetitions = reps;
    config.mode = mtt::mode_from_string(mode_token);
    config.payload_bytes = payload_bytes;
    config.seed = seed;

    mtt::ReportFormat format;
    if (format_token == "csv") {
        format = mtt::ReportFormat::Csv;
    } else if (format_token == "json") {
        format = mtt::ReportFormat::Json;
    } else {
        throw mtt::UsageError("Usage: unknown format \"" + format_token +
                              "\" (expected \"csv\" or \"json\")");
    }

    const auto exec = parallel ? mtt::CellExecution::ParallelCells
                               : mtt::CellExecution::Sequential;
    const mtt::BenchReport report = mtt::run_benchmark(config, exec);
    std::cerr << "note: " << report.environment << "\n";
    if (out.empty()) {
        std::cout << mtt::render_report(report, format);
    } else {
        mtt::emit_report(report, format, out);
        std::cout << "report written to " << out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merkle trim-tree toolkit: build trees, prove and verify inclusion, "
                 "detect tampering, assemble and validate block chains, benchmark variants"};
    app.require_subcommand(1);
    int rc = 0;

    std::string build_input, build_variant{"trim"}, build_mode{"domsep"}, build_out;
    auto* build = app.add_subcommand("build", "Build a tree over a mempool file's payloads");
    build->add_option("--input", build_input, "Mempool file (JSON lines)")->required();
    build->add_option("--variant", build_variant, "trim|traditional")->capture_default_str();
    build->add_option("--mode", build_mode, "plain|domsep")->capture_default_str();
    build->add_option("--out", build_out, "Tree dump file to write");
    build->callback([&] { rc = run_build(build_input, build_variant, build_mode, build_out); });

    std::string prove_tree, prove_out;
    std::uint64_t prove_index = 0;
    auto* prove = app.add_subcommand("prove", "Generate an inclusion proof from a tree dump");
    prove->add_option("--tree", prove_tree, "Tree dump file")->required();
    prove->add_option("--index", prove_index, "Leaf index")->required();
    prove->add_option("--out", prove_out, "Proof file to write");
    prove->callback([&] { rc = run_prove(prove_tree, prove_index, prove_out); });

    std::string verify_proof, verify_root, verify_mode;
    auto* verify = app.add_subcommand("verify", "Verify a proof file against a root digest");
    verify->add_option("--proof", verify_proof, "Proof file")->required();
    verify->add_option("--root", verify_root, "Expected root (64 hex digits)")->required();
    verify->add_option("--mode", verify_mode,
                       "Claimed mode; exits 2 when it contradicts the proof's recorded mode");
    verify->callback([&] { rc = run_verify(verify_proof, verify_root, verify_mode); });

    std::string tamper_tree, tamper_input;
    auto* tamper = app.add_subcommand(
        "tamper", "Compare a mempool file against a tree dump and list mismatching leaves");
    tamper->add_option("--tree", tamper_tree, "Tree dump file")->required();
    tamper->add_option("--input", tamper_input, "Mempool file to check")->required();
    tamper->callback([&] { rc = run_tamper(tamper_tree, tamper_input); });

    auto* chain = app.add_subcommand("chain", "Assemble or validate a block store");
    chain->require_subcommand(1);

    std::string asm_dir, asm_input, asm_variant{"trim"}, asm_mode{"domsep"};
    auto* assemble = chain->add_subcommand(
        "assemble", "Pack a mempool into capped blocks appended to a store");
    assemble->add_option("--dir", asm_dir, "Block store directory")->required();
    assemble->add_option("--input", asm_input, "Mempool file (JSON lines)")->required();
    assemble->add_option("--variant", asm_variant, "trim|traditional")->capture_default_str();
    assemble->add_option("--mode", asm_mode, "plain|domsep")->capture_default_str();
    assemble->callback(
        [&] { rc = run_chain_assemble(asm_dir, asm_input, asm_variant, asm_mode); });

    std::string val_dir;
    auto* validate = chain->add_subcommand("validate", "Recheck every stored block");
    validate->add_option("--dir", val_dir, "Block store directory")->required();
    validate->callback([&] { rc = run_chain_validate(val_dir); });

    std::uint64_t cmp_from = 0, cmp_to = 0;
    std::string cmp_mode{"domsep"};
    auto* compare = app.add_subcommand("compare", "Structural comparison table per leaf count");
    compare->add_option("--from", cmp_from, "First leaf count")->required();
    compare->add_option("--to", cmp_to, "Last leaf count")->required();
    compare->add_option("--mode", cmp_mode, "plain|domsep")->capture_default_str();
    compare->callback([&] { rc = run_compare(cmp_from, cmp_to, cmp_mode); });

    std::vector<std::uint64_t> bench_sizes;
    std::uint32_t bench_reps = 5, bench_payload = 256;
    std::uint64_t bench_seed = 0;
    std::string bench_format{"csv"}, bench_out, bench_mode{"domsep"};
    bool bench_parallel = false;
    auto* bench = app.add_subcommand("bench", "Timed and counted variant comparison");
    bench->add_option("--sizes", bench_sizes, "Comma-separated leaf counts")
        ->required()
        ->delimiter(',');
    bench->add_option("--reps", bench_reps, "Repetitions per cell (>= 3)")
        ->capture_default_str();
    bench->add_option("--format", bench_format, "csv|json")->capture_default_str();
    bench->add_option("--out", bench_out, "Report file (stdout when omitted)");
    bench->add_option("--mode", bench_mode, "plain|domsep")->capture_default_str();
    bench->add_option("--payload-bytes", bench_payload, "Synthetic payload size")
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "Payload generator seed")->capture_default_str();
    bench->add_flag("--parallel", bench_parallel, "Run benchmark cells on concurrent threads");
    bench->callback([&] {
        rc = run_bench(bench_sizes, bench_reps, bench_format, bench_out, bench_mode,
                       bench_payload, bench_seed, bench_parallel);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mtt::IoError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const mtt::StoreCorruptError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const mtt::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
