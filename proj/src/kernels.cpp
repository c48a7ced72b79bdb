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

#include "mtt/kernels.hpp"

#include <cstddef>
#include <optional>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mtt/errors.hpp"

namespace mtt::kernels {
namespace {

// Pairs `cur` into `next` under the Traditional duplicate-last rule. The
// loop body is independent per pair, which is what lets the parallel
// variant split it by index.
template <bool Parallel>
void fold_traditional_level(const std::vector<Digest>& cur, std::vector<Digest>& next,
                            HashMode mode) {
    const std::size_t pairs = (cur.size() + 1) / 2;
    next.resize(pairs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs); ++p) {
        const std::size_t i = static_cast<std::size_t>(p) * 2;
        const Digest& left = cur[i];
        const Digest& right = (i + 1 < cur.size()) ? cur[i + 1] : cur[i];
        next[static_cast<std::size_t>(p)] = hash_internal(left, right, mode);
    }
}

// Pairs the even-width tail cur[base..] into next[offset..]. Trim levels
// reduce to this after the carry bookkeeping peels off at most one node.
template <bool Parallel>
void fold_even_span(const std::vector<Digest>& cur, std::size_t base, std::vector<Digest>& next,
                    std::size_t offset, HashMode mode) {
    const std::size_t pairs = (cur.size() - base) / 2;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(pairs); ++p) {
        const std::size_t i = base + static_cast<std::size_t>(p) * 2;
        next[offset + static_cast<std::size_t>(p)] = hash_internal(cur[i], cur[i + 1], mode);
    }
}

template <bool Parallel>
Digest root_fold(TreeVariant variant, std::span<const Digest> leaves, HashMode mode) {
    if (leaves.empty()) {
        throw EmptyLeavesError("EmptyLeaves: cannot compute a root from zero leaves");
    }
    std::vector<Digest> cur(leaves.begin(), leaves.end());
    std::vector<Digest> next;

    if (variant == TreeVariant::Traditional) {
        while (cur.size() > 1) {
            fold_traditional_level<Parallel>(cur, next, mode);
            std::swap(cur, next);
        }
        return cur[0];
    }

    std::optional<Digest> carry;
    while (!(cur.size() == 1 && !carry)) {
        if (cur.size() == 1) {
            cur[0] = hash_internal(*carry, cur[0], mode);
            carry.reset();
            continue;
        }
        std::size_t base = 0;
        std::size_t offset = 0;
        std::optional<Digest> consumed;
        if (cur.size() % 2 == 1) {
            if (carry) {
                consumed = hash_internal(*carry, cur[0], mode);
                carry.reset();
                offset = 1;
            } else {
                carry = cur[0];
            }
            base = 1;
        }
        next.resize(offset + (cur.size() - base) / 2);
        if (consumed) next[0] = *consumed;
        fold_even_span<Parallel>(cur, base, next, offset, mode);
        std::swap(cur, next);
    }
    return cur[0];
}

template <bool Parallel>
std::vector<Digest> hash_leaves_impl(std::span<const std::vector<std::uint8_t>> payloads,
                                     HashMode mode) {
    std::vector<Digest> out(payloads.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (Parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(payloads.size()); ++i) {
        out[static_cast<std::size_t>(i)] =
            hash_leaf(std::span<const std::uint8_t>(payloads[static_cast<std::size_t>(i)]), mode);
    }
    return out;
}

}  // namespace

Digest root_serial(TreeVariant variant, std::span<const Digest> leaves, HashMode mode) {
    return root_fold<false>(variant, leaves, mode);
}

Digest root_parallel(TreeVariant variant, std::span<const Digest> leaves, HashMode mode) {
    return root_fold<true>(variant, leaves, mode);
}

std::vector<Digest> hash_leaves(std::span<const std::vector<std::uint8_t>> payloads,
                                HashMode mode) {
    return hash_leaves_impl<false>(payloads, mode);
}

std::vector<Digest> hash_leaves_parallel(std::span<const std::vector<std::uint8_t>> payloads,
                                         HashMode mode) {
    return hash_leaves_impl<true>(payloads, mode);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace mtt::kernels
