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

#include "bosonic/verification.h"

#include <algorithm>
#include <cmath>

#include "bosonic/circuitry.h"
#include "bosonic/distributions.h"
#include "gtest/gtest.h"
#include "oracles.h"

using namespace bosonic;

TEST(r_star, flat_photon_rows_give_one) {
    const int m = 9;
    ComplexMatrix a = ComplexMatrix::Constant(3, m, std::sqrt(1.0 / m));
    // Full rows have unit norm, three times the mean weight p/m = 1/3.
    EXPECT_NEAR(r_star(a, m), 27.0, 1e-12);
    // Each photon row of a collision-free submatrix carries p entries.
    ComplexMatrix sub = ComplexMatrix::Constant(3, 3, std::sqrt(1.0 / m));
    EXPECT_NEAR(r_star(sub, m), 1.0, 1e-12);
}

TEST(r_star, zero_row_gives_zero) {
    ComplexMatrix a = ComplexMatrix::Constant(3, 3, 0.3);
    a.row(1).setZero();
    EXPECT_EQ(r_star(a, 9), 0.0);
    EXPECT_BOSONIC_ERROR(r_star(ComplexMatrix(0, 0), 9), ErrorKind::kDomain);
}

TEST(r_star, invariant_under_row_and_column_phases) {
    ComplexMatrix u = haar_unitary(9, 31);
    FockState in = FockState::from_modes(9, {0, 1, 2});
    FockState out = FockState::from_modes(9, {2, 5, 7});
    double base = r_star(u, in, out);
    Engine engine = make_engine(5);
    for (int trial = 0; trial < 10; trial++) {
        ComplexMatrix v = u;
        for (int j = 0; j < 9; j++) {
            v.row(j) *= std::polar(1.0, 6.28 * uniform01(engine));
            v.col(j) *= std::polar(1.0, 6.28 * uniform01(engine));
        }
        EXPECT_NEAR(r_star(v, in, out), base, 1e-12);
    }
}

TEST(r_star, normalized_by_photon_weight_over_modes) {
    // Photon k's row sums |U_{out, in_k}|^2 over the output photons.
    ComplexMatrix u = haar_unitary(9, 32);
    FockState in = FockState::from_modes(9, {0, 1, 2});
    FockState out = FockState::from_modes(9, {3, 3, 8});
    double expected = 1.0;
    for (int k : {0, 1, 2}) {
        double r = 2 * std::norm(u(3, k)) + std::norm(u(8, k));
        expected *= r / (3.0 / 9.0);
    }
    EXPECT_NEAR(r_star(u, in, out), expected, 1e-12);
}

TEST(estimate_rstar_likelihoods, separates_bosonic_from_uniform) {
    RStarLikelihoods l = estimate_rstar_likelihoods(3, 9, 2000, 100, 7);
    EXPECT_NO_THROW(l.validate());
    EXPECT_GE(l.p_gt1_given_B - l.p_gt1_given_F, 1.0 / 9);
    EXPECT_EQ(l.histogram_B.size(), static_cast<size_t>(kRStarHistogramBins));
    double area = 0.0;
    for (double h : l.histogram_B) {
        area += h * kRStarHistogramBinWidth;
    }
    EXPECT_NEAR(area, 1.0, 1e-9);
}

TEST(estimate_rstar_likelihoods, deterministic_across_thread_counts) {
    RStarLikelihoods a = estimate_rstar_likelihoods(3, 9, 300, 50, 11, 1);
    RStarLikelihoods b = estimate_rstar_likelihoods(3, 9, 300, 50, 11, 3);
    EXPECT_EQ(a.p_gt1_given_B, b.p_gt1_given_B);
    EXPECT_EQ(a.p_gt1_given_F, b.p_gt1_given_F);
    EXPECT_EQ(a.histogram_F, b.histogram_F);
}

TEST(estimate_rstar_likelihoods, single_photon_matches_beta_law) {
    // With one photon R* = m |u|^2 and |u|^2 ~ Beta(1, m-1). Under uniform
    // sampling P(R* > 1) = (1 - 1/m)^(m-1); under size-biased (bosonic)
    // sampling it is (1 - 1/m)^(m-1) (2 - 1/m). The two are not equal.
    const int m = 9;
    RStarLikelihoods l = estimate_rstar_likelihoods(1, m, 20000, 20, 3);
    double f = std::pow(1.0 - 1.0 / m, m - 1);
    double b = f * (2.0 - 1.0 / m);
    EXPECT_NEAR(l.p_gt1_given_F, f, 5 * l.stderr_F + 1e-3);
    EXPECT_NEAR(l.p_gt1_given_B, b, 5 * l.stderr_B + 1e-3);
}

TEST(estimate_rstar_likelihoods, bad_arguments) {
    EXPECT_BOSONIC_ERROR(estimate_rstar_likelihoods(4, 3, 10, 10, 1), ErrorKind::kDomain);
    EXPECT_BOSONIC_ERROR(estimate_rstar_likelihoods(2, 3, 0, 10, 1), ErrorKind::kConfiguration);
}

TEST(r_star, haar_mean_is_self_consistent) {
    // Bosonic-weighted mean of R* over Haar draws, computed exactly per draw,
    // compared against an independent ensemble twice the size.
    auto ensemble_mean = [](std::uint64_t draws, std::uint64_t seed) {
        const int m = 9;
        FockState in = FockState::from_modes(m, {0, 1, 2});
        double sum = 0, sum_sq = 0;
        for (std::uint64_t k = 0; k < draws; k++) {
            Engine engine = make_engine(seed, k);
            ComplexMatrix u = haar_unitary(m, engine);
            OutcomeDistribution d = full_distribution(u, in, Model::quantum());
            double e = 0;
            for (size_t c = 0; c < d.size(); c++) {
                e += d.probabilities[c] * r_star(u, in, d.configurations[c]);
            }
            sum += e;
            sum_sq += e * e;
        }
        double mean = sum / draws;
        double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
        return std::pair{mean, se};
    };
    auto [a, se_a] = ensemble_mean(10000, 101);
    auto [b, se_b] = ensemble_mean(20000, 202);
    EXPECT_LE(std::abs(a - b), 3 * std::hypot(se_a, se_b)) << "E[R*|B] ~ " << a;
}

TEST(likelihoods, reference_values) {
    RStarLikelihoods l = reference_likelihoods_p3_m9();
    EXPECT_DOUBLE_EQ(l.p_gt1_given_B, 0.631);
    EXPECT_DOUBLE_EQ(l.p_lt1_given_B, 0.369);
    EXPECT_DOUBLE_EQ(l.p_gt1_given_F, 0.355);
    EXPECT_DOUBLE_EQ(l.p_lt1_given_F, 0.645);
    EXPECT_NO_THROW(l.validate());
    l.p_lt1_given_F = 0.7;
    EXPECT_BOSONIC_ERROR(l.validate(), ErrorKind::kDomain);
}

TEST(bayes_update, single_event_examples) {
    RStarLikelihoods l = reference_likelihoods_p3_m9();
    VerdictTrace up = bayes_update(start_trace(0.5), l, 1.3);
    EXPECT_NEAR(up.current_posterior(), 0.631 * 0.5 / (0.631 * 0.5 + 0.355 * 0.5), 1e-12);
    EXPECT_NEAR(up.current_posterior(), 0.640, 1e-3);
    VerdictTrace down = bayes_update(start_trace(0.5), l, 0.8);
    EXPECT_NEAR(down.current_posterior(), 0.364, 1e-3);
    // R* exactly 1 counts as the upper branch.
    EXPECT_EQ(bayes_update(start_trace(0.5), l, 1.0).current_posterior(), up.current_posterior());
}

TEST(bayes_update, uninformative_likelihoods_keep_prior) {
    RStarLikelihoods flat;
    flat.p_gt1_given_B = flat.p_gt1_given_F = 0.4;
    flat.p_lt1_given_B = flat.p_lt1_given_F = 0.6;
    VerdictTrace t = start_trace(0.3);
    for (double r : {0.2, 3.0, 1.0, 0.99}) {
        t = bayes_update(t, flat, r);
        EXPECT_NEAR(t.current_posterior(), 0.3, 1e-15);
    }
}

TEST(bayes_update, posterior_stays_in_open_interval_and_log_odds_finite) {
    RStarLikelihoods l = reference_likelihoods_p3_m9();
    Engine engine = make_engine(9);
    for (int trial = 0; trial < 20; trial++) {
        VerdictTrace t = start_trace(0.5);
        for (int k = 0; k < 30; k++) {
            t = bayes_update(t, l, 2 * uniform01(engine));
            EXPECT_GT(t.current_posterior(), 0.0);
            EXPECT_LT(t.current_posterior(), 1.0);
        }
        EXPECT_EQ(t.posteriors.size(), 30u);
    }
    // 1000 upward events: the posterior rounds to 1 but P(F | data) ~ 1e-250
    // is still resolved.
    VerdictTrace long_run = start_trace(0.5);
    for (int k = 0; k < 1000; k++) {
        long_run = bayes_update(long_run, l, 2.0);
    }
    EXPECT_EQ(long_run.current_posterior(), 1.0);
    EXPECT_NEAR(long_run.current_log_odds(), 1000 * std::log(0.631 / 0.355), 1e-9 * 1000);
    EXPECT_GT(long_run.null_probability(), 0.0);
    EXPECT_NEAR(std::log(long_run.null_probability()), -long_run.current_log_odds(), 1e-9 * 1000);
    for (int k = 0; k < 9000; k++) {
        long_run = bayes_update(long_run, l, 2.0);
    }
    EXPECT_TRUE(std::isfinite(long_run.current_log_odds()));
    EXPECT_BOSONIC_ERROR(start_trace(1.0), ErrorKind::kDomain);
    EXPECT_BOSONIC_ERROR(start_trace(0.0), ErrorKind::kDomain);
}

TEST(bunching_probabilities, nine_modes_three_photons) {
    BunchingProbabilities b = bunching_probabilities(9, 3);
    EXPECT_EQ(b.quantum, 84.0 / 165.0);
    EXPECT_EQ(b.classical, 504.0 / 729.0);
}

TEST(bunching_probabilities, large_m_approaches_one) {
    BunchingProbabilities b = bunching_probabilities(100, 2);
    EXPECT_LE(std::abs(b.quantum - b.classical), 0.01 * b.classical);
    EXPECT_NEAR(b.quantum, 99.0 / 101.0, 1e-15);
}

TEST(bunching_probabilities, bosons_bunch_more) {
    for (int m = 2; m <= 30; m++) {
        for (int p = 2; p <= m; p++) {
            BunchingProbabilities b = bunching_probabilities(m, p);
            double q = static_cast<double>(binomial(m, p)) / static_cast<double>(binomial(m + p - 1, p));
            EXPECT_NEAR(b.quantum, q, 1e-12 * q);
            EXPECT_LE(b.quantum, b.classical) << m << " " << p;
        }
    }
    EXPECT_BOSONIC_ERROR(bunching_probabilities(3, 4), ErrorKind::kDomain);
}

TEST(collision_free_fraction, examples) {
    std::vector<EventRecord> all_free{{FockState({1, 1, 0}), 4}, {FockState({0, 1, 1}), 2}};
    EXPECT_DOUBLE_EQ(collision_free_fraction(all_free).value, 1.0);
    std::vector<EventRecord> none{{FockState({2, 0, 0}), 5}};
    EXPECT_DOUBLE_EQ(collision_free_fraction(none).value, 0.0);
    std::vector<EventRecord> half{{FockState({2, 0, 0}), 5}, {FockState({1, 0, 1}), 5}};
    Estimate e = collision_free_fraction(half);
    EXPECT_DOUBLE_EQ(e.value, 0.5);
    EXPECT_NEAR(e.standard_error, std::sqrt(0.25 / 10), 1e-15);
    EXPECT_BOSONIC_ERROR(collision_free_fraction({}), ErrorKind::kData);
}

TEST(clouding_metric, examples) {
    const int m = 21;
    std::vector<EventRecord> bunched{{FockState::from_modes(m, {3, 3, 3}), 10}};
    EXPECT_DOUBLE_EQ(clouding_metric(bunched, m).C, 1.0);
    std::vector<EventRecord> split{{FockState::from_modes(m, {0, 20, 20}), 10}};
    EXPECT_DOUBLE_EQ(clouding_metric(split, m).C, 0.0);
    // Modes 2, 5 and 9 counted from 1 all sit in the first half.
    std::vector<EventRecord> low{{FockState::from_modes(m, {1, 4, 8}), 1}};
    CloudingResult r = clouding_metric(low, m);
    EXPECT_DOUBLE_EQ(r.C, 1.0);
    EXPECT_EQ(r.halves_boundary, 10);
    EXPECT_BOSONIC_ERROR(clouding_metric({}, m), ErrorKind::kData);
    EXPECT_BOSONIC_ERROR(clouding_metric(low, 9), ErrorKind::kConfiguration);
}

TEST(clouding_metric, reflection_invariant_for_even_modes) {
    const int m = 8;
    Engine engine = make_engine(14);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<EventRecord> events, mirrored;
        for (int e = 0; e < 15; e++) {
            std::vector<int> photons, flipped;
            for (int k = 0; k < 3; k++) {
                int j = static_cast<int>(engine() % m);
                photons.push_back(j);
                flipped.push_back(m - 1 - j);
            }
            std::uint64_t count = 1 + engine() % 5;
            events.push_back({FockState::from_modes(m, photons), count});
            mirrored.push_back({FockState::from_modes(m, flipped), count});
        }
        EXPECT_EQ(clouding_metric(events, m).C, clouding_metric(mirrored, m).C);
    }
}

TEST(clouding_metric, odd_mode_asymmetry_is_bounded_by_middle_mode) {
    // With m odd the middle mode belongs to the second half, so reflecting
    // can change C only through events touching that mode.
    const int m = 9;
    const int middle = m / 2;
    Engine engine = make_engine(15);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<EventRecord> events, mirrored;
        std::uint64_t touching = 0, n = 0;
        for (int e = 0; e < 15; e++) {
            std::vector<int> photons, flipped;
            bool touches = false;
            for (int k = 0; k < 3; k++) {
                int j = static_cast<int>(engine() % m);
                touches |= j == middle;
                photons.push_back(j);
                flipped.push_back(m - 1 - j);
            }
            std::uint64_t count = 1 + engine() % 5;
            n += count;
            touching += touches ? count : 0;
            events.push_back({FockState::from_modes(m, photons), count});
            mirrored.push_back({FockState::from_modes(m, flipped), count});
        }
        double diff = std::abs(clouding_metric(events, m).C - clouding_metric(mirrored, m).C);
        EXPECT_LE(diff, static_cast<double>(touching) / static_cast<double>(n) + 1e-15);
    }
}

TEST(delta_c, combines_errors_in_quadrature) {
    const int m = 4;
    std::vector<EventRecord> q{{FockState::from_modes(m, {0, 1}), 6}, {FockState::from_modes(m, {0, 3}), 4}};
    std::vector<EventRecord> c{{FockState::from_modes(m, {0, 1}), 2}, {FockState::from_modes(m, {0, 3}), 8}};
    Estimate d = delta_c(q, c, m);
    EXPECT_NEAR(d.value, 0.6 - 0.2, 1e-15);
    EXPECT_NEAR(d.standard_error, std::sqrt(0.24 / 10 + 0.16 / 10), 1e-15);
    EXPECT_NEAR(delta_c(q, q, m).value, 0.0, 1e-15);
}

TEST(clouding_expectation, quantum_walk_clouds) {
    ComplexMatrix u = qw_unitary(QwSpec{});
    FockState in = FockState::from_modes(21, {9, 10, 11});
    double q = clouding_expectation(full_distribution(u, in, Model::quantum()));
    double c = clouding_expectation(full_distribution(u, in, Model::classical()));
    EXPECT_GT(q, c);
}

TEST(statistical_fidelity, closed_forms) {
    OutcomeDistribution a;
    a.modes = 2;
    a.photons = 1;
    a.configurations = enumerate_configurations(2, 1);
    a.probabilities = {1.0, 0.0};
    OutcomeDistribution b = a;
    b.probabilities = {0.0, 1.0};
    OutcomeDistribution h = a;
    h.probabilities = {0.5, 0.5};
    EXPECT_NEAR(statistical_fidelity(a, a), 1.0, 1e-12);
    EXPECT_NEAR(statistical_fidelity(a, b), 0.0, 1e-12);
    EXPECT_NEAR(statistical_fidelity(a, h), std::sqrt(0.5), 1e-12);
    EXPECT_EQ(statistical_fidelity(a, h), statistical_fidelity(h, a));
}

TEST(statistical_fidelity, symmetric_and_bounded_on_random_pairs) {
    ComplexMatrix u = haar_unitary(5, 40);
    FockState in = FockState::from_modes(5, {0, 1});
    auto q = full_distribution(u, in, Model::quantum());
    auto c = full_distribution(u, in, Model::classical());
    double f = statistical_fidelity(q, c);
    EXPECT_EQ(f, statistical_fidelity(c, q));
    EXPECT_GT(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(statistical_fidelity(q, q), 1.0, 1e-12);
}

TEST(statistical_fidelity, rejects_misaligned_or_unnormalized) {
    OutcomeDistribution a;
    a.modes = 2;
    a.photons = 1;
    a.configurations = enumerate_configurations(2, 1);
    a.probabilities = {0.5, 0.5};
    OutcomeDistribution b;
    b.modes = 3;
    b.photons = 1;
    b.configurations = enumerate_configurations(3, 1);
    b.probabilities = {0.2, 0.3, 0.5};
    EXPECT_BOSONIC_ERROR(statistical_fidelity(a, b), ErrorKind::kAlignment);
    OutcomeDistribution c = a;
    c.probabilities = {0.5, 0.6};
    EXPECT_BOSONIC_ERROR(statistical_fidelity(a, c), ErrorKind::kDomain);
}

TEST(statistical_fidelity, events_against_theory) {
    OutcomeDistribution t;
    t.modes = 2;
    t.photons = 1;
    t.configurations = enumerate_configurations(2, 1);
    t.probabilities = {0.5, 0.5};
    std::vector<EventRecord> events{{FockState({1, 0}), 30}, {FockState({0, 1}), 30}};
    EXPECT_NEAR(statistical_fidelity(events, t), 1.0, 1e-12);
}

TEST(bootstrap_error, point_mass_has_zero_error) {
    std::vector<EventRecord> events{{FockState({2, 0, 0}), 50}};
    EXPECT_EQ(bootstrap_error(events, Metric::kCollisionFree, 200, 1), 0.0);
    EXPECT_EQ(bootstrap_error(events, Metric::kClouding, 200, 1), 0.0);
}

TEST(bootstrap_error, tracks_binomial_error) {
    // 120 of 400 events in a principal quadrant: C = 0.3.
    const int m = 4;
    std::vector<EventRecord> events{{FockState::from_modes(m, {0, 1}), 120}, {FockState::from_modes(m, {1, 2}), 280}};
    ASSERT_DOUBLE_EQ(clouding_metric(events, m).C, 0.3);
    double binomial_se = std::sqrt(0.3 * 0.7 / 400);
    double boot = bootstrap_error(events, Metric::kClouding, 1000, 12);
    EXPECT_NEAR(boot, binomial_se, 0.3 * binomial_se);
    EXPECT_EQ(boot, bootstrap_error(events, Metric::kClouding, 1000, 12));
    EXPECT_NE(boot, bootstrap_error(events, Metric::kClouding, 1000, 13));
}

TEST(bootstrap_error, argument_checks) {
    std::vector<EventRecord> events{{FockState({1, 1}), 5}};
    EXPECT_BOSONIC_ERROR(parse_metric("entropy"), ErrorKind::kConfiguration);
    EXPECT_EQ(parse_metric("clouding"), Metric::kClouding);
    EXPECT_EQ(parse_metric("collision_free"), Metric::kCollisionFree);
    EXPECT_BOSONIC_ERROR(bootstrap_error(events, Metric::kClouding, 99, 1), ErrorKind::kConfiguration);
}
