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

#include "mtt/chain.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "mtt/errors.hpp"
#include "mtt/io.hpp"
#include "mtt/kernels.hpp"

namespace mtt {
namespace {

void put_le(std::uint8_t* out, std::uint64_t value, std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i) {
        out[i] = static_cast<std::uint8_t>(value >> (8 * i));
    }
}

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::array<std::uint8_t, kHeaderPreimageBytes> header_preimage(const BlockHeader& header) {
    std::array<std::uint8_t, kHeaderPreimageBytes> out{};
    std::uint8_t* p = out.data();
    put_le(p, header.version, 4);
    p += 4;
    std::copy(header.prev_hash.bytes.begin(), header.prev_hash.bytes.end(), p);
    p += Digest::kSize;
    std::copy(header.merkle_root.bytes.begin(), header.merkle_root.bytes.end(), p);
    p += Digest::kSize;
    put_le(p, static_cast<std::uint64_t>(header.timestamp), 8);
    p += 8;
    put_le(p, header.nonce, 8);
    p += 8;
    put_le(p, header.tx_count, 4);
    return out;
}

Digest header_digest(const BlockHeader& header, HashMode mode) {
    const auto preimage = header_preimage(header);
    return hash_leaf(std::span<const std::uint8_t>(preimage), mode);
}

Digest block_merkle_root(const Block& block) {
    std::vector<Digest> leaves;
    leaves.reserve(block.transactions.size());
    for (const TransactionRecord& tx : block.transactions) {
        leaves.push_back(hash_leaf(std::span<const std::uint8_t>(tx.payload), block.mode));
    }
    return kernels::root_serial(block.variant, leaves, block.mode);
}

std::int64_t system_clock_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::vector<TransactionRecord> ingest_transactions(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("Io: cannot open mempool file " + file.string());
    }
    std::vector<TransactionRecord> records;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("Parse: mempool line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() ||
            !doc.contains("payload_hex") || !doc["payload_hex"].is_string()) {
            throw ParseError("Parse: mempool line " + std::to_string(line_no) +
                             ": expected {\"id\": string, \"payload_hex\": string}");
        }
        TransactionRecord rec;
        rec.id = doc["id"].get<std::string>();
        try {
            rec.payload = bytes_from_hex(doc["payload_hex"].get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError("Parse: mempool line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!seen_ids.insert(rec.id).second) {
            throw DuplicateIdError("DuplicateId: transaction id \"" + rec.id + "\" repeated at line " +
                                   std::to_string(line_no));
        }
        if (rec.byte_size() > kBlockPayloadCap) {
            throw OversizedTransactionError(
                "OversizedTransaction: transaction \"" + rec.id + "\" is " +
                std::to_string(rec.byte_size()) + " bytes, cap is " +
                std::to_string(kBlockPayloadCap));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<Block> assemble_blocks(std::vector<TransactionRecord> mempool, TreeVariant variant,
                                   HashMode mode, std::optional<Digest> prev,
                                   const ClockFn& clock) {
    if (mempool.empty()) {
        throw EmptyMempoolError("EmptyMempool: no transactions to assemble");
    }
    std::vector<Block> blocks;
    Digest prev_hash = prev.value_or(Digest::zero());

    std::size_t i = 0;
    while (i < mempool.size()) {
        Block block;
        block.variant = variant;
        block.mode = mode;
        std::uint64_t payload_sum = 0;
        while (i < mempool.size()) {
            const std::uint64_t size = mempool[i].byte_size();
            if (size > kBlockPayloadCap) {
                throw OversizedTransactionError(
                    "OversizedTransaction: transaction \"" + mempool[i].id + "\" is " +
                    std::to_string(size) + " bytes, cap is " + std::to_string(kBlockPayloadCap));
            }
            if (payload_sum + size > kBlockPayloadCap) break;
            payload_sum += size;
            block.transactions.push_back(std::move(mempool[i]));
            ++i;
        }
        block.header.version = 1;
        block.header.prev_hash = prev_hash;
        block.header.merkle_root = block_merkle_root(block);
        block.header.timestamp = clock();
        block.header.nonce = 0;
        block.header.tx_count = static_cast<std::uint32_t>(block.transactions.size());
        prev_hash = header_digest(block.header, mode);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

ChainStore::ChainStore(std::filesystem::path directory) : dir_(std::move(directory)) {}

std::filesystem::path ChainStore::block_path(std::size_t index) const {
    return dir_ / ("block_" + std::to_string(index) + ".json");
}

std::size_t ChainStore::block_count() const {
    if (!std::filesystem::exists(dir_)) return 0;
    std::set<std::size_t> indices;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        constexpr std::string_view prefix = "block_";
        constexpr std::string_view suffix = ".json";
        if (name.size() <= prefix.size() + suffix.size()) continue;
        if (name.compare(0, prefix.size(), prefix) != 0) continue;
        if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        const char* first = name.data() + prefix.size();
        const char* last = name.data() + name.size() - suffix.size();
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(first, last, index);
        if (ec != std::errc() || ptr != last) continue;
        indices.insert(index);
    }
    if (indices.empty()) return 0;
    // Contiguity: block_0 through block_{count-1} with no holes.
    std::size_t expected = 0;
    for (std::size_t index : indices) {
        if (index != expected) {
            throw StoreCorruptError("StoreCorrupt: missing block_" + std::to_string(expected) +
                                    ".json in " + dir_.string());
        }
        ++expected;
    }
    return indices.size();
}

void ChainStore::write_block(std::size_t index, const Block& block) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw IoError("Io: cannot create directory " + dir_.string() + ": " + ec.message());
    }
    nlohmann::ordered_json doc;
    doc["header"] = {
        {"version", block.header.version},
        {"prev_hash", block.header.prev_hash.to_hex()},
        {"merkle_root", block.header.merkle_root.to_hex()},
        {"timestamp", block.header.timestamp},
        {"nonce", block.header.nonce},
        {"tx_count", block.header.tx_count},
    };
    doc["variant"] = to_string(block.variant);
    doc["mode"] = to_string(block.mode);
    auto& txs = doc["transactions"] = nlohmann::ordered_json::array();
    for (const TransactionRecord& tx : block.transactions) {
        txs.push_back({{"id", tx.id}, {"payload_hex", to_hex(tx.payload)}});
    }
    write_text_file(block_path(index), doc.dump(2) + "\n");
}

Block ChainStore::read_block(std::size_t index) const {
    const std::filesystem::path path = block_path(index);
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const IoError& e) {
        throw StoreCorruptError("StoreCorrupt: " + std::string(e.what()));
    }
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        Block block;
        const nlohmann::json& header = doc.at("header");
        block.header.version = header.at("version").get<std::uint32_t>();
        block.header.prev_hash = Digest::from_hex(header.at("prev_hash").get<std::string>());
        block.header.merkle_root = Digest::from_hex(header.at("merkle_root").get<std::string>());
        block.header.timestamp = header.at("timestamp").get<std::int64_t>();
        block.header.nonce = header.at("nonce").get<std::uint64_t>();
        block.header.tx_count = header.at("tx_count").get<std::uint32_t>();
        block.variant = variant_from_string(doc.at("variant").get<std::string>());
        block.mode = mode_from_string(doc.at("mode").get<std::string>());
        for (const nlohmann::json& tx : doc.at("transactions")) {
            TransactionRecord rec;
            rec.id = tx.at("id").get<std::string>();
            rec.payload = bytes_from_hex(tx.at("payload_hex").get<std::string>());
            block.transactions.push_back(std::move(rec));
        }
        return block;
    } catch (const StoreCorruptError&) {
        throw;
    } catch (const std::exception& e) {
        throw StoreCorruptError("StoreCorrupt: " + path.string() + ": " + e.what());
    }
}

bool ValidationReport::all_pass() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const Entry& e) { return e.pass; });
}

ValidationReport validate_chain(const ChainStore& store) {
    ValidationReport report;
    const std::size_t count = store.block_count();
    Digest expected_prev = Digest::zero();
    for (std::size_t k = 0; k < count; ++k) {
        const Block block = store.read_block(k);
        ValidationReport::Entry entry;
        entry.index = k;

        std::string failed;
        if (block.transactions.empty() ||
            block_merkle_root(block) != block.header.merkle_root) {
            failed = "merkle_root";
        } else if (block.header.prev_hash != expected_prev) {
            failed = "prev_hash";
        } else if (block.header.tx_count != block.transactions.size()) {
            failed = "tx_count";
        } else {
            std::uint64_t payload_sum = 0;
            for (const TransactionRecord& tx : block.transactions) payload_sum += tx.byte_size();
            if (payload_sum > kBlockPayloadCap) failed = "payload_cap";
        }

        entry.pass = failed.empty();
        entry.failed_check = std::move(failed);
        report.blocks.push_back(std::move(entry));
        expected_prev = header_digest(block.header, block.mode);
    }
    return report;
}

}  // namespace mtt
