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

#ifndef BOSONIC_CIRCUITRY_H
#define BOSONIC_CIRCUITRY_H

#include <cstdint>
#include <vector>

#include "bosonic/fock.h"
#include "bosonic/matrix.h"
#include "bosonic/rng.h"

namespace bosonic {

/// Default coupling-time product c*t for the 21-waveguide walk. It yields
/// the two-lobe ballistic spread with the central-input photons.
inline constexpr double kDefaultQwCouplingTime = 2.0;
inline constexpr int kDefaultQwModes = 21;

/// Continuously coupled waveguide array with uniform nearest-neighbour
/// coupling `coupling` (rad per unit time), propagated for `time`.
struct QwSpec {
    int modes = kDefaultQwModes;
    double coupling = 1.0;
    double time = kDefaultQwCouplingTime;
    std::vector<double> onsite_phases;  ///< Empty means all zero.

    /// Throws kConfiguration unless m >= 2, c > 0, t > 0 and the phase
    /// vector is empty or of length m.
    void validate() const;
};

/// Haar-distributed m x m unitary. Deterministic in `seed`.
ComplexMatrix haar_unitary(int modes, std::uint64_t seed);

/// Same, drawing from an existing engine (for ensemble loops).
ComplexMatrix haar_unitary(int modes, Engine &engine);

/// U = exp(i H t) for the tridiagonal walk Hamiltonian with off-diagonal c
/// and onsite phases on the diagonal.
ComplexMatrix qw_unitary(const QwSpec &spec);

/// p x p transfer matrix: rows are detected modes (repeated by output
/// occupation), columns are input modes (repeated by input occupation).
ComplexMatrix submatrix(const ComplexMatrix &u, const FockState &input, const FockState &output);

/// Checks that `state` lives on the same number of modes as the square matrix `u`.
void require_matching_modes(const ComplexMatrix &u, const FockState &state);

}  // namespace bosonic

#endif
