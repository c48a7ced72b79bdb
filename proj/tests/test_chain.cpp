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

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "mtt/chain.hpp"
#include "mtt/errors.hpp"
#include "mtt/io.hpp"

using namespace mtt;

namespace {

namespace fs = std::filesystem;

// Unique scratch directory, removed on scope exit.
struct TempDir {
    fs::path path;

    TempDir() {
        static std::atomic<unsigned> counter{0};
        path = fs::temp_directory_path() /
               ("mtt_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

constexpr std::int64_t kFixedTime = 1'700'000'000;
std::int64_t fixed_clock() { return kFixedTime; }

std::vector<TransactionRecord> make_mempool(const std::vector<std::uint64_t>& sizes) {
    std::vector<TransactionRecord> mempool;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        TransactionRecord tx;
        tx.id = "tx" + std::to_string(i);
        tx.payload.assign(sizes[i], static_cast<std::uint8_t>(i + 1));
        mempool.push_back(std::move(tx));
    }
    return mempool;
}

fs::path write_mempool_file(const TempDir& dir, const std::string& content) {
    const fs::path file = dir.path / "mempool.jsonl";
    write_text_file(file, content);
    return file;
}

}  // namespace

TEST_CASE("header preimage is the fixed 88-byte little-endian layout") {
    BlockHeader h;
    h.version = 1;
    h.prev_hash = Digest::zero();
    h.merkle_root = Digest::from_hex(
        "752821240785a10ff69866c51c9a6127818248942981c5e8c703e26467119712");
    h.timestamp = kFixedTime;
    h.nonce = 0;
    h.tx_count = 5;

    const auto pre = header_preimage(h);
    CHECK(pre.size() == kHeaderPreimageBytes);
    CHECK(pre[0] == 0x01);  // version 1, little-endian
    CHECK(pre[1] == 0x00);
    for (std::size_t i = 4; i < 36; ++i) CHECK(pre[i] == 0x00);
    for (std::size_t i = 0; i < 32; ++i) CHECK(pre[36 + i] == h.merkle_root.bytes[i]);
    std::int64_t ts = 0;
    for (int i = 7; i >= 0; --i) ts = (ts << 8) | pre[68 + i];
    CHECK(ts == kFixedTime);
    for (std::size_t i = 76; i < 84; ++i) CHECK(pre[i] == 0x00);  // nonce
    CHECK(pre[84] == 0x05);  // tx_count
    CHECK(pre[85] == 0x00);

    // Frozen digests computed over this exact layout with a separate
    // hashlib script.
    CHECK(header_digest(h, HashMode::PlainConcat).to_hex() ==
          "2d5b38bce1ebaf04abe8fa74e3a2f4d214772463c4484c42562dbc4f44ec4885");
    CHECK(header_digest(h, HashMode::DomainSeparated).to_hex() ==
          "389b9f2383d00266fde3428f144858564aeef84ac06fa4c9693d34465b242750");
}

TEST_CASE("mempool ingest keeps file order and skips blank lines") {
    TempDir dir;
    const auto file = write_mempool_file(
        dir,
        "{\"id\": \"a\", \"payload_hex\": \"00\"}\n"
        "\n"
        "{\"id\": \"b\", \"payload_hex\": \"cafe\"}\n"
        "   \n"
        "{\"id\": \"c\", \"payload_hex\": \"\"}\n");
    const auto records = ingest_transactions(file);
    REQUIRE(records.size() == 3);
    CHECK(records[0].id == "a");
    CHECK(records[0].payload == std::vector<std::uint8_t>{0x00});
    CHECK(records[1].id == "b");
    CHECK(records[1].payload == std::vector<std::uint8_t>{0xca, 0xfe});
    CHECK(records[2].id == "c");
    CHECK(records[2].payload.empty());
    CHECK(records[2].byte_size() == 0);
}

TEST_CASE("mempool ingest names the offending line") {
    TempDir dir;

    const auto odd_hex = write_mempool_file(
        dir, "{\"id\": \"a\", \"payload_hex\": \"00\"}\n{\"id\": \"b\", \"payload_hex\": \"abc\"}\n");
    CHECK_THROWS_WITH_AS(ingest_transactions(odd_hex), doctest::Contains("line 2"), ParseError);

    const auto bad_json = write_mempool_file(dir, "{\"id\": \"a\", \"payload_hex\"\n");
    CHECK_THROWS_WITH_AS(ingest_transactions(bad_json), doctest::Contains("line 1"), ParseError);

    const auto missing_field = write_mempool_file(dir, "{\"id\": \"a\"}\n");
    CHECK_THROWS_AS(ingest_transactions(missing_field), ParseError);

    const auto bad_type = write_mempool_file(dir, "{\"id\": 7, \"payload_hex\": \"00\"}\n");
    CHECK_THROWS_AS(ingest_transactions(bad_type), ParseError);
}

TEST_CASE("mempool ingest rejects duplicates, oversize, and missing files") {
    TempDir dir;

    const auto dup = write_mempool_file(
        dir, "{\"id\": \"a\", \"payload_hex\": \"00\"}\n{\"id\": \"a\", \"payload_hex\": \"11\"}\n");
    CHECK_THROWS_AS(ingest_transactions(dup), DuplicateIdError);

    const std::string big(2 * (kBlockPayloadCap + 1), 'a');
    const auto oversized =
        write_mempool_file(dir, "{\"id\": \"big\", \"payload_hex\": \"" + big + "\"}\n");
    CHECK_THROWS_AS(ingest_transactions(oversized), OversizedTransactionError);

    CHECK_THROWS_AS(ingest_transactions(dir.path / "absent.jsonl"), IoError);
}

TEST_CASE("five small transactions pack into one genesis block") {
    const auto blocks = assemble_blocks(make_mempool({100, 100, 100, 100, 100}),
                                        TreeVariant::Trim, HashMode::DomainSeparated,
                                        std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 1);
    const Block& b = blocks[0];
    CHECK(b.transactions.size() == 5);
    CHECK(b.header.version == 1);
    CHECK(b.header.prev_hash == Digest::zero());
    CHECK(b.header.timestamp == kFixedTime);
    CHECK(b.header.nonce == 0);
    CHECK(b.header.tx_count == 5);
    CHECK(b.header.merkle_root == block_merkle_root(b));

    // The root is the trim tree over the payload leaf digests, in order.
    std::vector<Digest> leaves;
    for (const auto& tx : b.transactions) {
        leaves.push_back(hash_leaf(std::span<const std::uint8_t>(tx.payload), b.mode));
    }
    CHECK(b.header.merkle_root == build_trim(leaves, b.mode).root());
}

TEST_CASE("the payload cap splits blocks greedily in order") {
    const auto blocks =
        assemble_blocks(make_mempool({400'000, 400'000, 400'000}), TreeVariant::Trim,
                        HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].transactions.size() == 2);
    CHECK(blocks[1].transactions.size() == 1);
    CHECK(blocks[0].transactions[0].id == "tx0");
    CHECK(blocks[0].transactions[1].id == "tx1");
    CHECK(blocks[1].transactions[0].id == "tx2");
    CHECK(blocks[1].header.prev_hash == header_digest(blocks[0].header, blocks[0].mode));

    // A sum of exactly 1,000,000 bytes still fits in one block.
    const auto exact = assemble_blocks(make_mempool({600'000, 400'000}), TreeVariant::Trim,
                                       HashMode::DomainSeparated, std::nullopt, fixed_clock);
    CHECK(exact.size() == 1);

    const auto over = assemble_blocks(make_mempool({600'000, 400'000, 1}), TreeVariant::Trim,
                                      HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(over.size() == 2);
    CHECK(over[0].transactions.size() == 2);
    CHECK(over[1].transactions.size() == 1);
}

TEST_CASE("assembly rejects an empty mempool and chains from a given tip") {
    CHECK_THROWS_AS(assemble_blocks({}, TreeVariant::Trim, HashMode::DomainSeparated,
                                    std::nullopt, fixed_clock),
                    EmptyMempoolError);

    Digest tip;
    tip.bytes.fill(0xab);
    const auto blocks = assemble_blocks(make_mempool({10}), TreeVariant::Trim,
                                        HashMode::DomainSeparated, tip, fixed_clock);
    CHECK(blocks[0].header.prev_hash == tip);
}

TEST_CASE("store round-trips blocks byte for byte") {
    TempDir dir;
    const ChainStore store(dir.path / "chain");
    const auto blocks = assemble_blocks(make_mempool({100, 200, 300}), TreeVariant::Trim,
                                        HashMode::DomainSeparated, std::nullopt, fixed_clock);
    store.write_block(0, blocks[0]);
    CHECK(store.block_count() == 1);

    const Block loaded = store.read_block(0);
    CHECK(loaded.header.version == blocks[0].header.version);
    CHECK(loaded.header.prev_hash == blocks[0].header.prev_hash);
    CHECK(loaded.header.merkle_root == blocks[0].header.merkle_root);
    CHECK(loaded.header.timestamp == blocks[0].header.timestamp);
    CHECK(loaded.header.nonce == blocks[0].header.nonce);
    CHECK(loaded.header.tx_count == blocks[0].header.tx_count);
    CHECK(loaded.variant == blocks[0].variant);
    CHECK(loaded.mode == blocks[0].mode);
    REQUIRE(loaded.transactions.size() == blocks[0].transactions.size());
    for (std::size_t i = 0; i < loaded.transactions.size(); ++i) {
        CHECK(loaded.transactions[i].id == blocks[0].transactions[i].id);
        CHECK(loaded.transactions[i].payload == blocks[0].transactions[i].payload);
    }

    // Rewriting the same block yields an identical file.
    const std::string first = read_text_file(store.block_path(0));
    store.write_block(0, blocks[0]);
    CHECK(read_text_file(store.block_path(0)) == first);
}

TEST_CASE("store counts contiguous blocks and flags gaps") {
    TempDir dir;
    const ChainStore store(dir.path / "chain");
    CHECK(store.block_count() == 0);  // directory does not exist yet

    const auto blocks =
        assemble_blocks(make_mempool({500'000, 600'000, 700'000}), TreeVariant::Trim,
                        HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 3);
    for (std::size_t i = 0; i < blocks.size(); ++i) store.write_block(i, blocks[i]);
    CHECK(store.block_count() == 3);

    fs::remove(store.block_path(1));
    CHECK_THROWS_AS(store.block_count(), StoreCorruptError);

    CHECK_THROWS_AS(store.read_block(1), StoreCorruptError);
    write_text_file(store.block_path(1), "not json");
    CHECK_THROWS_AS(store.read_block(1), StoreCorruptError);
}

TEST_CASE("a fresh chain validates clean") {
    TempDir dir;
    const ChainStore store(dir.path / "chain");
    const auto blocks = assemble_blocks(
        make_mempool({400'000, 400'000, 400'000, 400'000, 400'000, 400'000, 400'000}),
        TreeVariant::Trim, HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 4);  // 2 + 2 + 2 + 1
    for (std::size_t i = 0; i < blocks.size(); ++i) store.write_block(i, blocks[i]);

    const ValidationReport report = validate_chain(store);
    CHECK(report.all_pass());
    CHECK(report.blocks.size() == 4);
    for (const auto& entry : report.blocks) {
        CHECK(entry.pass);
        CHECK(entry.failed_check.empty());
    }
}

TEST_CASE("a flipped payload byte fails exactly the affected block") {
    TempDir dir;
    const ChainStore store(dir.path / "chain");
    const auto blocks =
        assemble_blocks(make_mempool({300'000, 800'000, 900'000}), TreeVariant::Trim,
                        HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 3);
    for (std::size_t i = 0; i < blocks.size(); ++i) store.write_block(i, blocks[i]);

    Block tampered = store.read_block(1);
    tampered.transactions[0].payload[12345] ^= 0x01;
    store.write_block(1, tampered);

    const ValidationReport report = validate_chain(store);
    CHECK(!report.all_pass());
    CHECK(report.blocks[0].pass);
    CHECK(!report.blocks[1].pass);
    CHECK(report.blocks[1].failed_check == "merkle_root");
    CHECK(report.blocks[2].pass);  // linkage is over stored headers, still intact
}

TEST_CASE("an overwritten prev_hash fails the linkage check") {
    TempDir dir;
    const ChainStore store(dir.path / "chain");
    const auto blocks =
        assemble_blocks(make_mempool({900'000, 900'000, 900'000}), TreeVariant::Trim,
                        HashMode::DomainSeparated, std::nullopt, fixed_clock);
    REQUIRE(blocks.size() == 3);
    for (std::size_t i = 0; i < blocks.size(); ++i) store.write_block(i, blocks[i]);

    Block tampered = store.read_block(2);
    tampered.header.prev_hash.bytes[0] ^= 0xff;
    store.write_block(2, tampered);

    const ValidationReport report = validate_chain(store);
    CHECK(report.blocks[0].pass);
    CHECK(report.blocks[1].pass);
    CHECK(!report.blocks[2].pass);
    CHECK(report.blocks[2].failed_check == "prev_hash");
}

TEST_CASE("randomized mempools never exceed the block cap") {
    std::mt19937_64 rng(900);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::uint64_t> sizes;
        const std::size_t count = 2 + rng() % 8;
        for (std::size_t i = 0; i < count; ++i) {
            sizes.push_back(rng() % 600'000);
        }
        const auto blocks = assemble_blocks(make_mempool(sizes), TreeVariant::Trim,
                                            HashMode::DomainSeparated, std::nullopt, fixed_clock);
        std::size_t tx_total = 0;
        for (const Block& b : blocks) {
            CHECK(!b.transactions.empty());
            std::uint64_t sum = 0;
            for (const auto& tx : b.transactions) sum += tx.byte_size();
            CHECK(sum <= kBlockPayloadCap);
            tx_total += b.transactions.size();
        }
        CHECK(tx_total == sizes.size());
    }
}
