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

#include "mtt/hashing.hpp"

#include <openssl/evp.h>

#include <atomic>

namespace mtt {
namespace {

std::atomic<std::uint64_t> g_hash_total{0};
thread_local std::uint64_t t_hash_count = 0;

inline void count_one() noexcept {
    g_hash_total.fetch_add(1, std::memory_order_relaxed);
    ++t_hash_count;
}

// One EVP context per thread, re-initialized per digest.
struct Sha256Ctx {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    Sha256Ctx() = default;
    Sha256Ctx(const Sha256Ctx&) = delete;
    Sha256Ctx& operator=(const Sha256Ctx&) = delete;
    ~Sha256Ctx() { EVP_MD_CTX_free(ctx); }
};

Digest sha256_counted(std::span<const std::uint8_t> prefix,
                      std::span<const std::uint8_t> a,
                      std::span<const std::uint8_t> b) {
    thread_local Sha256Ctx tls;
    EVP_DigestInit_ex(tls.ctx, EVP_sha256(), nullptr);
    if (!prefix.empty()) EVP_DigestUpdate(tls.ctx, prefix.data(), prefix.size());
    if (!a.empty()) EVP_DigestUpdate(tls.ctx, a.data(), a.size());
    if (!b.empty()) EVP_DigestUpdate(tls.ctx, b.data(), b.size());
    Digest out;
    unsigned int len = 0;
    EVP_DigestFinal_ex(tls.ctx, out.bytes.data(), &len);
    count_one();
    return out;
}

constexpr std::uint8_t kLeafPrefix[1] = {0x00};
constexpr std::uint8_t kInternalPrefix[1] = {0x01};

}  // namespace

Digest hash_leaf(std::span<const std::uint8_t> payload, HashMode mode) {
    if (mode == HashMode::PlainConcat) {
        return sha256_counted({}, payload, {});
    }
    return sha256_counted(kLeafPrefix, payload, {});
}

Digest hash_internal(const Digest& left, const Digest& right, HashMode mode) {
    if (mode == HashMode::PlainConcat) {
        return sha256_counted({}, left.bytes, right.bytes);
    }
    return sha256_counted(kInternalPrefix, left.bytes, right.bytes);
}

std::uint64_t hash_counter_snapshot() {
    return g_hash_total.load(std::memory_order_relaxed);
}

void hash_counter_reset() {
    g_hash_total.store(0, std::memory_order_relaxed);
}

std::uint64_t hash_counter_thread() {
    return t_hash_count;
}

}  // namespace mtt
