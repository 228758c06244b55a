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

#include "bosonic/permanent.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "bosonic/error.h"

namespace bosonic {

namespace {

void check_square(Eigen::Index rows, Eigen::Index cols, int limit) {
    if (rows != cols) {
        throw Error(ErrorKind::kInvalidDimension,
                    "permanent needs a square matrix, got " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (rows < 1) {
        throw Error(ErrorKind::kInvalidDimension, "permanent needs at least a 1x1 matrix");
    }
    if (rows > limit) {
        throw Error(ErrorKind::kSizeLimit,
                    "permanent of size " + std::to_string(rows) + " exceeds limit " + std::to_string(limit));
    }
}

// Kahan-Babuska accumulator; for complex values each part is compensated.
template <typename T>
struct CompensatedSum {
    T sum{};
    T carry{};

    void add(T x) {
        if constexpr (std::is_same_v<T, Complex>) {
            double re = sum.real(), ce = carry.real();
            double im = sum.imag(), ci = carry.imag();
            add_part(re, ce, x.real());
            add_part(im, ci, x.imag());
            sum = {re, im};
            carry = {ce, ci};
        } else {
            add_part(sum, carry, x);
        }
    }
    T value() const {
        return sum + carry;
    }

   private:
    static void add_part(double &s, double &c, double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
};

// Per(A) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} a_ij, with
// subsets visited in Gray-code order so each step adds or removes one column.
template <typename Scalar, typename Matrix>
Scalar ryser(const Matrix &a) {
    const int n = static_cast<int>(a.rows());
    std::vector<Scalar> row_sums(static_cast<size_t>(n), Scalar{});
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const bool compensate = n >= kCompensatedSumThreshold;
    CompensatedSum<Scalar> compensated;
    Scalar plain{};
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < subsets; k++) {
        int col = std::countr_zero(k);
        std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (int i = 0; i < n; i++) {
                row_sums[static_cast<size_t>(i)] += a(i, col);
            }
        } else {
            for (int i = 0; i < n; i++) {
                row_sums[static_cast<size_t>(i)] -= a(i, col);
            }
        }
        Scalar prod = row_sums[0];
        for (int i = 1; i < n; i++) {
            prod *= row_sums[static_cast<size_t>(i)];
        }
        if (std::popcount(gray) & 1) {
            prod = -prod;
        }
        if (compensate) {
            compensated.add(prod);
        } else {
            plain += prod;
        }
    }
    Scalar total = compensate ? compensated.value() : plain;
    return (n & 1) ? -total : total;
}

}  // namespace

Complex permanent_ryser(const ComplexMatrix &m) {
    check_square(m.rows(), m.cols(), kRyserMaxSize);
    return ryser<Complex>(m);
}

Complex permanent_naive(const ComplexMatrix &m) {
    check_square(m.rows(), m.cols(), kNaiveMaxSize);
    const int n = static_cast<int>(m.rows());
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Complex total{};
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; i++) {
            prod *= m(i, perm[static_cast<size_t>(i)]);
        }
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

double permanent_real_nonneg(const RealMatrix &m) {
    check_square(m.rows(), m.cols(), kRyserMaxSize);
    if ((m.array() < 0.0).any()) {
        throw Error(ErrorKind::kDomain, "non-negative permanent given a negative entry");
    }
    return ryser<double>(m);
}

}  // namespace bosonic
