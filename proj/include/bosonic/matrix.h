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

#ifndef BOSONIC_MATRIX_H
#define BOSONIC_MATRIX_H

#include <complex>

#include <Eigen/Core>

namespace bosonic {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Max-norm tolerance on |U U^dagger - I| for a matrix to count as unitary.
inline constexpr double kUnitarityTolerance = 1e-10;

/// Returns max_{ij} |(U U^dagger)_{ij} - delta_{ij}|. Non-square input yields +inf.
double unitarity_deviation(const ComplexMatrix &u);

inline bool is_unitary(const ComplexMatrix &u, double tolerance = kUnitarityTolerance) {
    return unitarity_deviation(u) <= tolerance;
}

/// Elementwise |a_ij|^2.
RealMatrix abs_squared(const ComplexMatrix &m);

}  // namespace bosonic

#endif
