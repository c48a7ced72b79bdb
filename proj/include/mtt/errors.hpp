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

#include <stdexcept>

namespace mtt {

/// Base class for every error thrown by this library. Messages start with
/// the canonical error name ("EmptyLeaves: ...") so callers and transcripts
/// can match on it.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tree construction.
struct EmptyLeavesError : Error { using Error::Error; };
struct InvalidCountError : Error { using Error::Error; };

// Proofs.
struct IndexOutOfRangeError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };

// File and input parsing.
struct ParseError : Error { using Error::Error; };
struct DuplicateIdError : Error { using Error::Error; };
struct OversizedTransactionError : Error { using Error::Error; };
struct EmptyMempoolError : Error { using Error::Error; };

// Chain persistence. StoreCorrupt means the store could not be read at all;
// a readable-but-inconsistent chain is a ValidationReport failure, not an error.
struct StoreCorruptError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Benchmark harness.
struct InvalidRangeError : Error { using Error::Error; };

// Command-line front end.
struct UsageError : Error { using Error::Error; };

}  // namespace mtt
