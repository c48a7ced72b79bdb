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
#include <filesystem>
#include <string>
#include <vector>

#include "mtt/hashing.hpp"
#include "mtt/merkle.hpp"

namespace mtt {

/// One benchmark run. Payloads are generated from `seed` with mt19937_64,
/// so every structural column is reproducible; only wall-clock columns vary.
struct BenchConfig {
    std::vector<std::uint64_t> sizes;  // leaf counts, all >= 1
    std::vector<TreeVariant> variants{TreeVariant::Traditional, TreeVariant::Trim};
    HashMode mode = HashMode::DomainSeparated;
    std::uint32_t repetitions = 5;  // >= 3 so medians exist
    std::uint32_t payload_bytes = 256;
    std::uint64_t seed = 0;
};

/// One (variant, n) cell; timing columns are medians over repetitions.
struct BenchSample {
    TreeVariant variant = TreeVariant::Trim;
    std::uint64_t n = 0;
    std::uint64_t build_nanos = 0;  // leaf hashing + tree build
    double prove_nanos_mean = 0.0;  // per-proof mean over sampled leaves
    double verify_nanos_mean = 0.0;
    std::uint64_t internal_hashes = 0;
    std::uint64_t total_hash_invocations = 0;  // one build: leaf + internal
    std::uint64_t stored_nodes = 0;
    std::uint64_t stored_bytes = 0;  // 32 * stored_nodes
    double mean_proof_depth = 0.0;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchSample> samples;  // sorted by (variant, n)
    /// Free text naming the PRNG and the measurement proxies.
    std::string environment;
};

/// Cells run sequentially by default to keep timings clean. ParallelCells
/// runs independent (variant, n) cells on their own threads; hash counts
/// stay exact because each cell measures its own thread's counter.
enum class CellExecution { Sequential, ParallelCells };

/// Proof generation/verification is timed over every leaf, or over a fixed
/// deterministic 1000-leaf sample when n exceeds this.
inline constexpr std::uint64_t kProofSampleCap = 1000;

/// Throws InvalidRange on an empty or zero-containing size list,
/// repetitions < 3, or an empty variant list.
BenchReport run_benchmark(const BenchConfig& config,
                          CellExecution exec = CellExecution::Sequential);

/// Structural comparison per n in [n_from, n_to]; no hashing, no timing.
struct ComparisonRow {
    std::uint64_t n = 0;
    std::uint64_t traditional_nodes = 0;
    std::uint64_t trim_nodes = 0;
    std::int64_t node_delta = 0;  // traditional - trim
    std::uint64_t traditional_internal_hashes = 0;
    std::uint64_t trim_internal_hashes = 0;
    std::int64_t internal_hash_delta = 0;
    std::uint64_t traditional_duplicated_pairings = 0;
};

/// Throws InvalidRange unless 1 <= n_from <= n_to.
std::vector<ComparisonRow> compare_variants(std::uint64_t n_from, std::uint64_t n_to,
                                            HashMode mode);

enum class ReportFormat { Csv, Json };

/// CSV columns, exactly:
/// variant,n,build_nanos,prove_nanos_mean,verify_nanos_mean,internal_hashes,
/// total_hash_invocations,stored_nodes,stored_bytes,mean_proof_depth
std::string render_report(const BenchReport& report, ReportFormat format);

/// Throws IoError naming the path when it cannot be written.
void emit_report(const BenchReport& report, ReportFormat format,
                 const std::filesystem::path& out);

/// The deterministic payload generator behind run_benchmark: payload i is a
/// function of (seed, payload_bytes, i) only, filled 8 bytes at a time from
/// mt19937_64 outputs in little-endian order.
std::vector<std::vector<std::uint8_t>> deterministic_payloads(std::uint64_t count,
                                                              std::uint32_t payload_bytes,
                                                              std::uint64_t seed);

}  // namespace mtt
