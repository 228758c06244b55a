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

#include "bosonic/circuitry.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "bosonic/error.h"

namespace bosonic {

namespace {

// Standard complex normal: real and imaginary parts N(0, 1/2) via Box-Muller.
Complex complex_normal(Engine &engine) {
    double u1 = uniform01(engine);
    double u2 = uniform01(engine);
    double radius = std::sqrt(-std::log1p(-u1));
    double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

void QwSpec::validate() const {
    if (modes < 2) {
        throw Error(ErrorKind::kConfiguration, "quantum walk needs at least 2 modes");
    }
    if (!(coupling > 0)) {
        throw Error(ErrorKind::kConfiguration, "quantum walk coupling must be positive");
    }
    if (!(time > 0)) {
        throw Error(ErrorKind::kConfiguration, "quantum walk propagation time must be positive");
    }
    if (!onsite_phases.empty() && static_cast<int>(onsite_phases.size()) != modes) {
        throw Error(ErrorKind::kConfiguration, "onsite phase vector length must equal the mode count");
    }
}

ComplexMatrix haar_unitary(int modes, Engine &engine) {
    if (modes < 1) {
        throw Error(ErrorKind::kInvalidDimension, "Haar unitary dimension must be at least 1");
    }
    ComplexMatrix z(modes, modes);
    for (int j = 0; j < modes; j++) {
        for (int i = 0; i < modes; i++) {
            z(i, j) = complex_normal(engine);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    // Fix the QR gauge: Q * diag(r_jj / |r_jj|) is Haar distributed.
    for (int j = 0; j < modes; j++) {
        Complex d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= a > 0 ? d / a : Complex(1.0);
    }
    return q;
}

ComplexMatrix haar_unitary(int modes, std::uint64_t seed) {
    Engine engine = make_engine(seed);
    return haar_unitary(modes, engine);
}

ComplexMatrix qw_unitary(const QwSpec &spec) {
    spec.validate();
    const int m = spec.modes;
    RealMatrix h = RealMatrix::Zero(m, m);
    for (int j = 0; j + 1 < m; j++) {
        h(j, j + 1) = spec.coupling;
        h(j + 1, j) = spec.coupling;
    }
    if (!spec.onsite_phases.empty()) {
        for (int j = 0; j < m; j++) {
            h(j, j) = spec.onsite_phases[static_cast<size_t>(j)];
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(h);
    const RealMatrix &v = eig.eigenvectors();
    Eigen::VectorXcd phases(m);
    for (int k = 0; k < m; k++) {
        phases(k) = std::polar(1.0, eig.eigenvalues()(k) * spec.time);
    }
    return v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
}

void require_matching_modes(const ComplexMatrix &u, const FockState &state) {
    if (u.rows() != u.cols()) {
        throw Error(ErrorKind::kInvalidDimension, "circuit matrix must be square");
    }
    if (state.modes() != u.rows()) {
        throw Error(ErrorKind::kConfiguration, "configuration has " + std::to_string(state.modes()) +
                                                   " modes but the circuit has " + std::to_string(u.rows()));
    }
}

ComplexMatrix submatrix(const ComplexMatrix &u, const FockState &input, const FockState &output) {
    require_matching_modes(u, input);
    require_matching_modes(u, output);
    if (input.photons() != output.photons()) {
        throw Error(ErrorKind::kConfiguration, "input carries " + std::to_string(input.photons()) +
                                                   " photons but output carries " +
                                                   std::to_string(output.photons()));
    }
    std::vector<int> cols = input.photon_modes();
    std::vector<int> rows = output.photon_modes();
    const auto p = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(p, p);
    for (Eigen::Index i = 0; i < p; i++) {
        for (Eigen::Index j = 0; j < p; j++) {
            m(i, j) = u(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
        }
    }
    return m;
}

}  // namespace bosonic
