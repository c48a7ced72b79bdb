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

#include "mtt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mtt/errors.hpp"
#include "mtt/io.hpp"
#include "mtt/kernels.hpp"
#include "mtt/proofs.hpp"

namespace mtt {
namespace {

using SteadyClock = std::chrono::steady_clock;

std::uint64_t nanos_between(SteadyClock::time_point a, SteadyClock::time_point b) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

// Unbiased draw in [0, bound) by rejection. The standard pins mt19937_64
// outputs but not uniform_int_distribution's algorithm, so distributions
// would break cross-platform reproducibility.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t v = rng();
    while (v < threshold) v = rng();
    return v % bound;
}

// Deterministic choice of kProofSampleCap distinct leaf indices via a
// partial Fisher-Yates pass, returned sorted.
std::vector<std::uint64_t> sample_leaf_indices(std::uint64_t n, std::uint64_t seed) {
    std::vector<std::uint64_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0u);
    if (n <= kProofSampleCap) return indices;
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * n));
    for (std::uint64_t j = 0; j < kProofSampleCap; ++j) {
        const std::uint64_t k = j + bounded_uniform(rng, n - j);
        std::swap(indices[j], indices[k]);
    }
    indices.resize(kProofSampleCap);
    std::sort(indices.begin(), indices.end());
    return indices;
}

std::uint64_t median_u64(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

double median_double(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

// One (variant, n) cell: all repetitions, medians recorded. Hash counts
// are measured as deltas of the calling thread's counter, so cells stay
// isolated even when run on concurrent threads.
BenchSample run_cell(TreeVariant variant, std::uint64_t n, const BenchConfig& config) {
    const auto payloads = deterministic_payloads(n, config.payload_bytes, config.seed);
    const auto sample = sample_leaf_indices(n, config.seed);

    BenchSample out;
    out.variant = variant;
    out.n = n;

    std::vector<std::uint64_t> build_times;
    std::vector<double> prove_means;
    std::vector<double> verify_means;
    build_times.reserve(config.repetitions);

    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
        const std::uint64_t hashes_before = hash_counter_thread();
        const auto t0 = SteadyClock::now();
        const std::vector<Digest> leaves = kernels::hash_leaves(payloads, config.mode);
        const MerkleTree tree = build_tree(variant, leaves, config.mode);
        const auto t1 = SteadyClock::now();
        const std::uint64_t build_hashes = hash_counter_thread() - hashes_before;
        build_times.push_back(nanos_between(t0, t1));

        std::vector<InclusionProof> proofs;
        proofs.reserve(sample.size());
        const auto p0 = SteadyClock::now();
        for (std::uint64_t idx : sample) {
            proofs.push_back(generate_proof(tree, idx));
        }
        const auto p1 = SteadyClock::now();
        prove_means.push_back(static_cast<double>(nanos_between(p0, p1)) /
                              static_cast<double>(sample.size()));

        const Digest root = tree.root();
        const auto v0 = SteadyClock::now();
        for (const InclusionProof& proof : proofs) {
            if (!verify_proof(proof, root).valid) {
                throw Error("Internal: benchmark proof failed to verify");
            }
        }
        const auto v1 = SteadyClock::now();
        verify_means.push_back(static_cast<double>(nanos_between(v0, v1)) /
                               static_cast<double>(sample.size()));

        if (rep == 0) {
            out.internal_hashes = tree.stats.internal_hashes;
            out.total_hash_invocations = build_hashes;
            out.stored_nodes = tree.stats.total_nodes;
            out.stored_bytes = Digest::kSize * tree.stats.total_nodes;
            std::uint64_t depth_sum = 0;
            for (const InclusionProof& proof : proofs) depth_sum += proof.path.size();
            out.mean_proof_depth =
                static_cast<double>(depth_sum) / static_cast<double>(proofs.size());
        }
    }

    out.build_nanos = median_u64(std::move(build_times));
    out.prove_nanos_mean = median_double(std::move(prove_means));
    out.verify_nanos_mean = median_double(std::move(verify_means));
    return out;
}

std::string environment_note(const BenchConfig& config) {
    std::ostringstream os;
    os << "energy proxy: hash invocations (one SHA-256 call per unit), not joules; "
       << "payloads: mt19937_64, 8-byte little-endian chunks, seed=" << config.seed
       << ", payload_bytes=" << config.payload_bytes
       << "; timings: medians over " << config.repetitions
       << " repetitions, steady_clock nanoseconds"
       << "; proof sample cap: " << kProofSampleCap << " leaves"
       << "; threads available: " << kernels::max_threads();
    return os.str();
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

}  // namespace

std::vector<std::vector<std::uint8_t>> deterministic_payloads(std::uint64_t count,
                                                              std::uint32_t payload_bytes,
                                                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint8_t>> payloads(count);
    for (auto& payload : payloads) {
        payload.resize(payload_bytes);
        std::size_t i = 0;
        while (i < payload.size()) {
            const std::uint64_t word = rng();
            for (std::size_t b = 0; b < 8 && i < payload.size(); ++b, ++i) {
                payload[i] = static_cast<std::uint8_t>(word >> (8 * b));
            }
        }
    }
    return payloads;
}

BenchReport run_benchmark(const BenchConfig& config, CellExecution exec) {
    if (config.sizes.empty()) {
        throw InvalidRangeError("InvalidRange: benchmark size list is empty");
    }
    for (std::uint64_t n : config.sizes) {
        if (n == 0) {
            throw InvalidRangeError("InvalidRange: benchmark sizes must be at least 1");
        }
    }
    if (config.repetitions < 3) {
        throw InvalidRangeError("InvalidRange: repetitions must be at least 3 (got " +
                                std::to_string(config.repetitions) + ")");
    }
    if (config.variants.empty()) {
        throw InvalidRangeError("InvalidRange: benchmark variant list is empty");
    }

    // One cell per distinct (variant, n); output order is (variant, n).
    const std::set<TreeVariant> variants(config.variants.begin(), config.variants.end());
    const std::set<std::uint64_t> sizes(config.sizes.begin(), config.sizes.end());
    struct Cell {
        TreeVariant variant;
        std::uint64_t n;
    };
    std::vector<Cell> cells;
    for (TreeVariant variant : variants) {
        for (std::uint64_t n : sizes) cells.push_back({variant, n});
    }

    BenchReport report;
    report.config = config;
    report.environment = environment_note(config);
    report.samples.resize(cells.size());

    if (exec == CellExecution::ParallelCells) {
        std::vector<std::thread> workers;
        workers.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            workers.emplace_back([&, i] {
                report.samples[i] = run_cell(cells[i].variant, cells[i].n, config);
            });
        }
        for (std::thread& w : workers) w.join();
    } else {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            report.samples[i] = run_cell(cells[i].variant, cells[i].n, config);
        }
    }
    return report;
}

std::vector<ComparisonRow> compare_variants(std::uint64_t n_from, std::uint64_t n_to,
                                            HashMode /*mode*/) {
    if (n_from < 1 || n_from > n_to) {
        throw InvalidRangeError("InvalidRange: need 1 <= from <= to, got from=" +
                                std::to_string(n_from) + " to=" + std::to_string(n_to));
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(n_to - n_from + 1);
    for (std::uint64_t n = n_from; n <= n_to; ++n) {
        const StructuralCounts trad = structural_counts(n, TreeVariant::Traditional);
        const StructuralCounts trim = structural_counts(n, TreeVariant::Trim);
        ComparisonRow row;
        row.n = n;
        row.traditional_nodes = trad.stored_nodes;
        row.trim_nodes = trim.stored_nodes;
        row.node_delta = static_cast<std::int64_t>(trad.stored_nodes) -
                         static_cast<std::int64_t>(trim.stored_nodes);
        row.traditional_internal_hashes = trad.internal_hashes;
        row.trim_internal_hashes = trim.internal_hashes;
        row.internal_hash_delta = static_cast<std::int64_t>(trad.internal_hashes) -
                                  static_cast<std::int64_t>(trim.internal_hashes);
        row.traditional_duplicated_pairings = trad.duplicated_pairings;
        rows.push_back(row);
    }
    return rows;
}

std::string render_report(const BenchReport& report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << "variant,n,build_nanos,prove_nanos_mean,verify_nanos_mean,internal_hashes,"
              "total_hash_invocations,stored_nodes,stored_bytes,mean_proof_depth\n";
        for (const BenchSample& s : report.samples) {
            os << to_string(s.variant) << ',' << s.n << ',' << s.build_nanos << ','
               << format_double(s.prove_nanos_mean) << ',' << format_double(s.verify_nanos_mean)
               << ',' << s.internal_hashes << ',' << s.total_hash_invocations << ','
               << s.stored_nodes << ',' << s.stored_bytes << ','
               << format_double(s.mean_proof_depth) << '\n';
        }
        return os.str();
    }

    nlohmann::ordered_json doc;
    auto& config = doc["config"];
    config["sizes"] = report.config.sizes;
    auto variants = nlohmann::ordered_json::array();
    for (TreeVariant v : report.config.variants) variants.push_back(to_string(v));
    config["variants"] = std::move(variants);
    config["mode"] = to_string(report.config.mode);
    config["repetitions"] = report.config.repetitions;
    config["payload_bytes"] = report.config.payload_bytes;
    config["seed"] = report.config.seed;
    doc["environment"] = report.environment;
    auto& samples = doc["samples"] = nlohmann::ordered_json::array();
    for (const BenchSample& s : report.samples) {
        samples.push_back({
            {"variant", to_string(s.variant)},
            {"n", s.n},
            {"build_nanos", s.build_nanos},
            {"prove_nanos_mean", s.prove_nanos_mean},
            {"verify_nanos_mean", s.verify_nanos_mean},
            {"internal_hashes", s.internal_hashes},
            {"total_hash_invocations", s.total_hash_invocations},
            {"stored_nodes", s.stored_nodes},
            {"stored_bytes", s.stored_bytes},
            {"mean_proof_depth", s.mean_proof_depth},
        });
    }
    return doc.dump(2) + "\n";
}

void emit_report(const BenchReport& report, ReportFormat format,
                 const std::filesystem::path& out) {
    write_text_file(out, render_report(report, format));
}

}  // namespace mtt
