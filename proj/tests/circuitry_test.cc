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
#include <complex>

#include <Eigen/Eigenvalues>

#include "bosonic/permanent.h"
#include "gtest/gtest.h"
#include "oracles.h"

using namespace bosonic;

TEST(haar_unitary, one_mode_is_a_phase) {
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        ComplexMatrix u = haar_unitary(1, seed);
        ASSERT_EQ(u.rows(), 1);
        EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
    }
}

TEST(haar_unitary, is_unitary_for_many_sizes) {
    for (int m : {2, 3, 5, 9, 21, 40}) {
        ComplexMatrix u = haar_unitary(m, static_cast<std::uint64_t>(m));
        EXPECT_LE(unitarity_deviation(u), kUnitarityTolerance) << "m=" << m;
    }
}

TEST(haar_unitary, deterministic_per_seed) {
    ComplexMatrix a = haar_unitary(9, 1234);
    ComplexMatrix b = haar_unitary(9, 1234);
    ComplexMatrix c = haar_unitary(9, 1235);
    EXPECT_TRUE(a == b);
    EXPECT_FALSE(a == c);
}

TEST(haar_unitary, mean_squared_modulus_is_one_over_m) {
    // Seed fixed here once; every entry must land within 3 standard errors.
    const int m = 9;
    const int draws = 10000;
    Engine engine = make_engine(20261015);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < draws; k++) {
        RealMatrix a = abs_squared(haar_unitary(m, engine));
        sum += a;
        sum_sq += a.cwiseProduct(a);
    }
    int outliers = 0;
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            double mean = sum(i, j) / draws;
            double var = sum_sq(i, j) / draws - mean * mean;
            double se = std::sqrt(var / draws);
            if (std::abs(mean - 1.0 / m) > 3 * se) {
                outliers++;
            }
        }
    }
    // 81 entries at 3 sigma: a couple of excursions are expected by chance.
    EXPECT_LE(outliers, 2);
    double grand = sum.sum() / (draws * m * m);
    EXPECT_NEAR(grand, 1.0 / m, 1e-12);  // rows of a unitary have unit norm
}

TEST(haar_unitary, rejects_zero_modes) {
    EXPECT_BOSONIC_ERROR(haar_unitary(0, 1), ErrorKind::kInvalidDimension);
}

TEST(qw_unitary, two_mode_transfer_is_sin_squared) {
    for (double ct : {0.1, 0.5, 1.0, 2.0, 3.7}) {
        QwSpec spec{2, 1.0, ct, {}};
        ComplexMatrix u = qw_unitary(spec);
        EXPECT_NEAR(std::norm(u(0, 1)), std::pow(std::sin(ct), 2), 1e-12);
        EXPECT_NEAR(std::norm(u(0, 0)), std::pow(std::cos(ct), 2), 1e-12);
    }
}

TEST(qw_unitary, coupling_and_time_enter_as_product) {
    ComplexMatrix a = qw_unitary({7, 2.0, 0.5, {}});
    ComplexMatrix b = qw_unitary({7, 0.5, 2.0, {}});
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(qw_unitary, default_is_unitary_and_mirror_symmetric) {
    QwSpec spec;
    ComplexMatrix u = qw_unitary(spec);
    ASSERT_EQ(u.rows(), 21);
    EXPECT_LE(unitarity_deviation(u), kUnitarityTolerance);
    const int m = 21;
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            EXPECT_NEAR(std::abs(u(i, j) - u(m - 1 - i, m - 1 - j)), 0.0, 1e-12);
        }
    }
}

TEST(qw_unitary, short_time_is_near_identity) {
    QwSpec spec{21, 1.0, 1e-9, {}};
    ComplexMatrix u = qw_unitary(spec);
    ComplexMatrix id = ComplexMatrix::Identity(21, 21);
    EXPECT_LE((u - id).operatorNorm(), 2 * 1e-9 + 1e-15);
}

TEST(qw_unitary, constant_onsite_phase_is_global_phase) {
    const double phi = 0.37;
    const double t = 1.3;
    ComplexMatrix plain = qw_unitary({9, 1.0, t, {}});
    ComplexMatrix phased = qw_unitary({9, 1.0, t, std::vector<double>(9, phi)});
    ComplexMatrix expected = plain * std::polar(1.0, phi * t);
    EXPECT_LE((phased - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((abs_squared(phased) - abs_squared(plain)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(qw_unitary, validation) {
    EXPECT_BOSONIC_ERROR(qw_unitary({1, 1.0, 1.0, {}}), ErrorKind::kConfiguration);
    EXPECT_BOSONIC_ERROR(qw_unitary({5, 0.0, 1.0, {}}), ErrorKind::kConfiguration);
    EXPECT_BOSONIC_ERROR(qw_unitary({5, 1.0, -1.0, {}}), ErrorKind::kConfiguration);
    EXPECT_BOSONIC_ERROR(qw_unitary({5, 1.0, 1.0, {0.1, 0.2}}), ErrorKind::kConfiguration);
}

TEST(submatrix, collision_free_picks_rows_and_columns) {
    ComplexMatrix u(3, 3);
    u << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    ComplexMatrix s = submatrix(u, FockState({1, 0, 1}), FockState({0, 1, 1}));
    ComplexMatrix expected(2, 2);
    expected << 4, 6, 7, 9;
    EXPECT_TRUE(s == expected);
}

TEST(submatrix, repeats_rows_and_columns_by_occupation) {
    ComplexMatrix u(3, 3);
    u << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    ComplexMatrix s = submatrix(u, FockState({2, 0, 0}), FockState({0, 1, 1}));
    ComplexMatrix expected(2, 2);
    expected << 4, 4, 7, 7;
    EXPECT_TRUE(s == expected);
    ComplexMatrix t = submatrix(u, FockState({0, 1, 1}), FockState({0, 0, 2}));
    ComplexMatrix expected_t(2, 2);
    expected_t << 8, 9, 8, 9;
    EXPECT_TRUE(t == expected_t);
}

TEST(submatrix, permanent_ignores_photon_labelling) {
    // A configuration carries occupations only, so any relabelling of photons
    // permutes rows and columns of the submatrix and leaves |Per| unchanged.
    ComplexMatrix u = haar_unitary(6, 99);
    FockState in = FockState::from_modes(6, {4, 0, 2});
    FockState in_relabelled = FockState::from_modes(6, {2, 4, 0});
    EXPECT_EQ(in, in_relabelled);
    ComplexMatrix s = submatrix(u, in, FockState({0, 1, 1, 0, 1, 0}));
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(3);
    perm.indices() << 2, 0, 1;
    ComplexMatrix shuffled = perm * s * perm.transpose();
    EXPECT_NEAR(std::abs(permanent_ryser(s) - permanent_ryser(shuffled)), 0.0, 1e-13);
}

TEST(submatrix, errors) {
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    EXPECT_BOSONIC_ERROR(submatrix(u, FockState({1, 0, 0}), FockState({1, 1, 0})), ErrorKind::kConfiguration);
    EXPECT_BOSONIC_ERROR(submatrix(u, FockState({1, 0}), FockState({1, 0})), ErrorKind::kConfiguration);
    ComplexMatrix rect = ComplexMatrix::Zero(3, 2);
    EXPECT_BOSONIC_ERROR(submatrix(rect, FockState({1, 0, 0}), FockState({1, 0, 0})),
                         ErrorKind::kInvalidDimension);
}

TEST(fock_state, parse_and_helpers) {
    FockState s = FockState::parse("0 1 0 2");
    EXPECT_EQ(s.modes(), 4);
    EXPECT_EQ(s.photons(), 3);
    EXPECT_EQ(s.photon_modes(), (std::vector<int>{1, 3, 3}));
    EXPECT_FALSE(s.is_collision_free());
    EXPECT_DOUBLE_EQ(s.factorial_product(), 2.0);
    EXPECT_EQ(FockState::parse(s.str()), s);
    EXPECT_BOSONIC_ERROR(FockState::parse("1 x"), ErrorKind::kParse);
    EXPECT_BOSONIC_ERROR(FockState::parse(""), ErrorKind::kParse);
    EXPECT_BOSONIC_ERROR(FockState({1, -1}), ErrorKind::kConfiguration);
    EXPECT_BOSONIC_ERROR(FockState::from_modes(3, {3}), ErrorKind::kConfiguration);
}

TEST(fock_state, binomial_exact) {
    EXPECT_EQ(binomial(11, 3), 165u);
    EXPECT_EQ(binomial(39, 10), 635745396u);
    EXPECT_EQ(binomial(3, 5), 0u);
    EXPECT_EQ(binomial(60, 30), 118264581564861424u);
    EXPECT_EQ(configuration_count(21, 3), 1771u);
}
