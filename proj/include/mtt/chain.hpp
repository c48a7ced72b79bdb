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

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mtt/digest.hpp"
#include "mtt/hashing.hpp"
#include "mtt/merkle.hpp"

namespace mtt {

/// Hard cap on the summed transaction payload bytes one block may carry
/// ("1 MB" read as a decimal million; headers excluded).
inline constexpr std::uint64_t kBlockPayloadCap = 1'000'000;

/// Transaction content is opaque bytes; ids are unique within a mempool.
struct TransactionRecord {
    std::string id;
    std::vector<std::uint8_t> payload;

    [[nodiscard]] std::uint64_t byte_size() const { return payload.size(); }
};

struct BlockHeader {
    std::uint32_t version = 1;
    Digest prev_hash;  // all zero for the genesis block
    Digest merkle_root;
    std::int64_t timestamp = 0;  // seconds since epoch
    std::uint64_t nonce = 0;     // fixed 0: no proof of work here
    std::uint32_t tx_count = 0;
};

inline constexpr std::size_t kHeaderPreimageBytes = 88;

/// Canonical header preimage, bit-exact:
/// version(4 LE) || prev_hash(32) || merkle_root(32) || timestamp(8 LE) ||
/// nonce(8 LE) || tx_count(4 LE).
std::array<std::uint8_t, kHeaderPreimageBytes> header_preimage(const BlockHeader& header);

/// SHA-256 of the preimage, framed as a leaf in the block's mode.
Digest header_digest(const BlockHeader& header, HashMode mode);

struct Block {
    BlockHeader header;
    std::vector<TransactionRecord> transactions;
    TreeVariant variant = TreeVariant::Trim;
    HashMode mode = HashMode::DomainSeparated;
};

/// Root of the block's tree over hash_leaf(payload, mode) in tx order.
Digest block_merkle_root(const Block& block);

/// Clock injected by the caller so assembly is deterministic under test.
using ClockFn = std::function<std::int64_t()>;
std::int64_t system_clock_seconds();

/// Parses a JSON-lines mempool file: one {"id", "payload_hex"} object per
/// line, blank lines ignored, UTF-8. Throws IoError if the file cannot be
/// opened; ParseError (naming the line) on malformed lines or hex;
/// DuplicateId; OversizedTransaction for a payload over the block cap.
std::vector<TransactionRecord> ingest_transactions(const std::filesystem::path& file);

/// Greedy first-fit packing in mempool order: a transaction that would push
/// the running payload sum past the cap closes the current block and opens
/// the next. Headers are chained from `prev` (or genesis zeros), timestamps
/// come from `clock`, nonce is 0. Throws EmptyMempool.
std::vector<Block> assemble_blocks(std::vector<TransactionRecord> mempool,
                                   TreeVariant variant, HashMode mode,
                                   std::optional<Digest> prev, const ClockFn& clock);

/// Directory of block_<k>.json files, k contiguous from 0. Single writer;
/// concurrent readers are fine between writes.
class ChainStore {
  public:
    explicit ChainStore(std::filesystem::path directory);

    [[nodiscard]] const std::filesystem::path& directory() const { return dir_; }
    [[nodiscard]] std::filesystem::path block_path(std::size_t index) const;

    /// Count of contiguous block files starting at block_0.json. Throws
    /// StoreCorrupt if block files exist beyond a gap.
    [[nodiscard]] std::size_t block_count() const;

    /// Throws IoError if the file cannot be written.
    void write_block(std::size_t index, const Block& block) const;

    /// Throws StoreCorrupt if the file is missing, unreadable, or not a
    /// well-formed block document.
    [[nodiscard]] Block read_block(std::size_t index) const;

  private:
    std::filesystem::path dir_;
};

struct ValidationReport {
    struct Entry {
        std::size_t index = 0;
        bool pass = true;
        std::string failed_check;  // first failing check; empty when pass
    };
    std::vector<Entry> blocks;

    [[nodiscard]] bool all_pass() const;
};

/// Recomputes every block's Merkle root from its stored payloads under the
/// recorded variant/mode and checks prev-hash linkage against the previous
/// block's stored header. All blocks are evaluated even after a failure.
ValidationReport validate_chain(const ChainStore& store);

}  // namespace mtt
