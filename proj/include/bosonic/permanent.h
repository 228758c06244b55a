// Copyright 2026 The bosonic-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONIC_PERMANENT_H
#define BOSONIC_PERMANENT_H

#include "bosonic/matrix.h"

namespace bosonic {

inline constexpr int kRyserMaxSize = 30;
inline constexpr int kNaiveMaxSize = 10;
/// Ryser sums at or above this size use compensated accumulation.
inline constexpr int kCompensatedSumThreshold = 16;

/// Ryser's formula with Gray-code subset order: O(2^n n).
/// Throws kInvalidDimension for non-square or empty input and kSizeLimit
/// above kRyserMaxSize.
Complex permanent_ryser(const ComplexMatrix &m);

/// Sum over all n! permutations. Reference oracle, n <= kNaiveMaxSize.
Complex permanent_naive(const ComplexMatrix &m);

/// Ryser in real arithmetic for entrywise non-negative matrices such as
/// |a_ij|^2. Negative entries raise kDomain.
double permanent_real_nonneg(const RealMatrix &m);

}  // namespace bosonic

#endif
