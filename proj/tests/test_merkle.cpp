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

#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "mtt/errors.hpp"
#include "mtt/merkle.hpp"
#include "reference.hpp"

using namespace mtt;

namespace {

// Leaves over payloads "t1".."tn"; the frozen roots below were computed
// over these same payloads with a separate Python hashlib script.
std::vector<Digest> numbered_leaves(std::size_t n, HashMode mode) {
    std::vector<Digest> leaves;
    leaves.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        leaves.push_back(hash_leaf("t" + std::to_string(i), mode));
    }
    return leaves;
}

std::vector<Digest> random_digests(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Digest> leaves(n);
    for (auto& leaf : leaves) {
        for (std::size_t i = 0; i < leaf.bytes.size(); i += 8) {
            const std::uint64_t word = rng();
            for (std::size_t b = 0; b < 8; ++b) {
                leaf.bytes[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
            }
        }
    }
    return leaves;
}

std::vector<testref::Hash> to_ref(const std::vector<Digest>& leaves) {
    std::vector<testref::Hash> out;
    out.reserve(leaves.size());
    for (const Digest& d : leaves) out.push_back(d.bytes);
    return out;
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Arena wiring soundness: one parentless node (the root), children point
// back at their parent, levels increase, internal digests recompute.
void check_arena(const MerkleTree& t) {
    std::size_t parentless = 0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const MerkleNode& node = t.nodes[i];
        if (node.parent == kNoNode) {
            ++parentless;
            CHECK(i == t.root_index);
        }
        if (node.is_leaf()) {
            CHECK(node.level == 0);
            CHECK(node.left == kNoNode);
            CHECK(node.right == kNoNode);
            CHECK(i < t.leaf_count());
            continue;
        }
        REQUIRE(node.left != kNoNode);
        REQUIRE(node.right != kNoNode);
        const MerkleNode& l = t.nodes[node.left];
        const MerkleNode& r = t.nodes[node.right];
        CHECK(node.level == 1 + std::max(l.level, r.level));
        CHECK(node.digest == hash_internal(l.digest, r.digest, t.mode));
        CHECK(l.parent == i);
        CHECK(l.side == Side::Left);
        if (node.right != node.left) {
            CHECK(r.parent == i);
            CHECK(r.side == Side::Right);
        } else {
            CHECK(t.variant == TreeVariant::Traditional);
        }
        if (t.variant == TreeVariant::Trim) CHECK(node.left != node.right);
    }
    CHECK(parentless == 1);
}

}  // namespace

TEST_CASE("five-leaf roots match the frozen cross-implementation vectors") {
    const auto plain = numbered_leaves(5, HashMode::PlainConcat);
    CHECK(build_trim(plain, HashMode::PlainConcat).root().to_hex() ==
          "752821240785a10ff69866c51c9a6127818248942981c5e8c703e26467119712");
    CHECK(build_traditional(plain, HashMode::PlainConcat).root().to_hex() ==
          "33d6017410a573a22936000d1a87c7407127e036dcd7762ea42078b856bac483");

    const auto sep = numbered_leaves(5, HashMode::DomainSeparated);
    CHECK(build_trim(sep, HashMode::DomainSeparated).root().to_hex() ==
          "95bd755f22ddfd8b6e37952a251a57932f99e42a42aab21717cdf9d134dcacfa");
    CHECK(build_traditional(sep, HashMode::DomainSeparated).root().to_hex() ==
          "ebe7745db865c0359ca2eeedf64247c15af042135af6def6d8882bf3f99d8b14");
}

TEST_CASE("three-leaf trim roots match the frozen vectors") {
    CHECK(build_trim(numbered_leaves(3, HashMode::PlainConcat), HashMode::PlainConcat)
              .root()
              .to_hex() == "b5c1ea12d93ef670b587f6d9ad906c6f7b002b04c0f9dd6b238a5630d70d74c6");
    CHECK(build_trim(numbered_leaves(3, HashMode::DomainSeparated), HashMode::DomainSeparated)
              .root()
              .to_hex() == "be9d049b3f63e4cc3436834cf5ac2473dacd5717d455e6b761c8da9182500d2a");
}

TEST_CASE("trim five-leaf structure: carry joins as left child at the top") {
    const auto leaves = numbered_leaves(5, HashMode::DomainSeparated);
    const MerkleTree t = build_trim(leaves, HashMode::DomainSeparated);
    CHECK(t.stats.n == 5);
    CHECK(t.stats.total_nodes == 9);
    CHECK(t.stats.internal_hashes == 4);
    CHECK(t.stats.duplicated_pairings == 0);
    CHECK(t.stats.levels == 4);
    CHECK(level_widths(t) == std::vector<std::uint64_t>{5, 2, 1, 1});

    // Leaf 0 is the carry: its parent is the root and it sits on the left.
    const MerkleNode& leaf0 = t.nodes[0];
    CHECK(leaf0.parent == t.root_index);
    CHECK(leaf0.side == Side::Left);
    CHECK(t.nodes[t.root_index].left == 0);
    check_arena(t);
}

TEST_CASE("traditional five-leaf structure duplicates twice") {
    const auto leaves = numbered_leaves(5, HashMode::DomainSeparated);
    const MerkleTree t = build_traditional(leaves, HashMode::DomainSeparated);
    CHECK(t.stats.total_nodes == 11);
    CHECK(t.stats.internal_hashes == 6);
    CHECK(t.stats.duplicated_pairings == 2);
    CHECK(t.stats.levels == 4);
    CHECK(level_widths(t) == std::vector<std::uint64_t>{5, 3, 2, 1});
    check_arena(t);
}

TEST_CASE("trim level widths for hand-traced sizes") {
    struct Case {
        std::size_t n;
        std::vector<std::uint64_t> widths;
    };
    const Case cases[] = {
        {1, {1}},          {2, {2, 1}},        {3, {3, 1, 1}},
        {4, {4, 2, 1}},    {6, {6, 3, 1, 1}},  {7, {7, 3, 2, 1}},
        {9, {9, 4, 2, 1, 1}}, {11, {11, 5, 3, 1, 1}},
    };
    for (const Case& c : cases) {
        const MerkleTree t =
            build_trim(random_digests(c.n, 100 + c.n), HashMode::DomainSeparated);
        CHECK(level_widths(t) == c.widths);
        CHECK(t.stats.total_nodes == 2 * c.n - 1);
        CHECK(t.stats.internal_hashes == c.n - 1);
    }
}

TEST_CASE("single leaf is its own root in both variants") {
    const auto leaves = numbered_leaves(1, HashMode::DomainSeparated);
    for (TreeVariant variant : {TreeVariant::Trim, TreeVariant::Traditional}) {
        const MerkleTree t = build_tree(variant, leaves, HashMode::DomainSeparated);
        CHECK(t.root() == leaves[0]);
        CHECK(t.root_index == 0);
        CHECK(t.stats.total_nodes == 1);
        CHECK(t.stats.internal_hashes == 0);
        CHECK(t.stats.levels == 1);
    }
}

TEST_CASE("zero leaves is rejected") {
    const std::vector<Digest> none;
    CHECK_THROWS_AS(build_trim(none, HashMode::DomainSeparated), EmptyLeavesError);
    CHECK_THROWS_AS(build_traditional(none, HashMode::DomainSeparated), EmptyLeavesError);
    CHECK_THROWS_AS(structural_counts(0, TreeVariant::Trim), InvalidCountError);
    CHECK_THROWS_AS(expected_node_count(0, TreeVariant::Traditional), InvalidCountError);
}

TEST_CASE("structural counts match built trees across a sweep") {
    for (std::uint64_t n = 1; n <= 320; ++n) {
        const auto leaves = random_digests(n, 7'000 + n);
        const MerkleTree trim = build_trim(leaves, HashMode::DomainSeparated);
        const MerkleTree trad = build_traditional(leaves, HashMode::DomainSeparated);

        const StructuralCounts trim_counts = structural_counts(n, TreeVariant::Trim);
        CHECK(trim.stats.total_nodes == trim_counts.stored_nodes);
        CHECK(trim.stats.internal_hashes == trim_counts.internal_hashes);
        CHECK(trim.stats.duplicated_pairings == 0);
        CHECK(trim.stats.total_nodes == 2 * n - 1);
        CHECK(trim.stats.internal_hashes == n - 1);
        CHECK(trim.nodes.size() == expected_node_count(n, TreeVariant::Trim));

        const StructuralCounts trad_counts = structural_counts(n, TreeVariant::Traditional);
        CHECK(trad.stats.total_nodes == trad_counts.stored_nodes);
        CHECK(trad.stats.internal_hashes == trad_counts.internal_hashes);
        CHECK(trad.stats.duplicated_pairings == trad_counts.duplicated_pairings);
        CHECK(trad.stats.internal_hashes >= n - 1);
        CHECK((trad.stats.internal_hashes == n - 1) == is_power_of_two(n));
        CHECK((trad.stats.duplicated_pairings == 0) == is_power_of_two(n));

        // Widths partition the arenas.
        std::uint64_t trim_width_sum = 0, trad_width_sum = 0;
        for (std::uint64_t w : level_widths(trim)) trim_width_sum += w;
        for (std::uint64_t w : level_widths(trad)) trad_width_sum += w;
        CHECK(trim_width_sum == trim.stats.total_nodes);
        CHECK(trad_width_sum == trad.stats.total_nodes);
    }
}

TEST_CASE("arena wiring is sound for a spread of sizes") {
    for (std::uint64_t n : {2u, 3u, 5u, 8u, 13u, 21u, 64u, 97u, 128u, 255u}) {
        const auto leaves = random_digests(n, 9'000 + n);
        check_arena(build_trim(leaves, HashMode::DomainSeparated));
        check_arena(build_traditional(leaves, HashMode::DomainSeparated));
        check_arena(build_trim(leaves, HashMode::PlainConcat));
        check_arena(build_traditional(leaves, HashMode::PlainConcat));
    }
}

TEST_CASE("both builders agree with the brute-force reference fold") {
    std::uint64_t seed = 40'000;
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t n = 1; n <= 40; ++n) sizes.push_back(n);
    for (std::uint64_t n : {63u, 64u, 65u, 127u, 128u, 129u, 255u, 256u, 257u}) {
        sizes.push_back(n);
    }
    for (std::uint64_t n : sizes) {
        for (HashMode mode : {HashMode::PlainConcat, HashMode::DomainSeparated}) {
            const auto leaves = random_digests(n, ++seed);
            const bool sep = mode == HashMode::DomainSeparated;
            CHECK(build_trim(leaves, mode).root().bytes ==
                  testref::trim_root(to_ref(leaves), sep));
            CHECK(build_traditional(leaves, mode).root().bytes ==
                  testref::traditional_root(to_ref(leaves), sep));
        }
    }
}

TEST_CASE("variants coincide exactly on power-of-two widths") {
    for (std::uint64_t n : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u}) {
        const auto leaves = random_digests(n, 60'000 + n);
        CHECK(build_trim(leaves, HashMode::DomainSeparated).root() ==
              build_traditional(leaves, HashMode::DomainSeparated).root());
    }
}

TEST_CASE("builds are deterministic node for node") {
    const auto leaves = random_digests(77, 321);
    const MerkleTree a = build_trim(leaves, HashMode::DomainSeparated);
    const MerkleTree b = build_trim(leaves, HashMode::DomainSeparated);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].digest == b.nodes[i].digest);
        CHECK(a.nodes[i].parent == b.nodes[i].parent);
        CHECK(a.nodes[i].level == b.nodes[i].level);
    }
    CHECK(a.root_index == b.root_index);
}

TEST_CASE("mode changes the root") {
    const auto leaves = random_digests(19, 777);
    CHECK(build_trim(leaves, HashMode::PlainConcat).root() !=
          build_trim(leaves, HashMode::DomainSeparated).root());
}
