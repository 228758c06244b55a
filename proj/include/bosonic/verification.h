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

#ifndef BOSONIC_VERIFICATION_H
#define BOSONIC_VERIFICATION_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bosonic/distributions.h"
#include "bosonic/fock.h"
#include "bosonic/matrix.h"

namespace bosonic {

// ---------------------------------------------------------------------------
// Row-norm discriminator and sequential Bayesian test.
// ---------------------------------------------------------------------------

/// Threshold-crossing frequencies of R* under boson sampling (B) and under
/// uniform sampling over collision-free patterns (F).
struct RStarLikelihoods {
    double p_gt1_given_B = 0.5;
    double p_lt1_given_B = 0.5;
    double p_gt1_given_F = 0.5;
    double p_lt1_given_F = 0.5;
    double stderr_B = 0.0;
    double stderr_F = 0.0;
    int photons = 0;
    int modes = 0;
    std::uint64_t ensemble_size = 0;
    std::uint64_t samples_per_unitary = 0;
    std::uint64_t seed = 0;
    /// R* histograms under B and F, bins of width kRStarHistogramBinWidth
    /// starting at 0; the last bin collects overflow. Empty when not estimated.
    std::vector<double> histogram_B;
    std::vector<double> histogram_F;

    /// Throws kDomain unless every entry is in [0, 1] and each pair sums to 1.
    void validate() const;
};

inline constexpr double kRStarHistogramBinWidth = 0.1;
inline constexpr int kRStarHistogramBins = 50;

/// Reference p=3, m=9 threshold likelihoods from a 1e5-unitary Haar average.
RStarLikelihoods reference_likelihoods_p3_m9();

/// Normalized row-norm product of a photon-major transfer matrix (row k is
/// input photon k, columns are detected modes): prod_k sum_j |a_kj|^2 / (p/m)^p.
double r_star(const ComplexMatrix &photon_major, int modes);

/// R* of a detection event: the transfer matrix is submatrix(u, input,
/// output) read photon-major, so each factor is the weight input photon k
/// sends into the detected modes (with output multiplicity).
double r_star(const ComplexMatrix &u, const FockState &input, const FockState &output);

/// Monte Carlo over Haar unitaries with one photon in each of the first p
/// modes. For B, `samples` outcomes per unitary come from the quantum
/// distribution; for F, from the uniform distribution over collision-free
/// patterns. Unitary k uses RNG stream k, so results do not depend on
/// `threads`.
RStarLikelihoods estimate_rstar_likelihoods(int photons, int modes, std::uint64_t unitaries, std::uint64_t samples,
                                            std::uint64_t seed, int threads = 1);

/// Posterior trace for B against F.
struct VerdictTrace {
    double prior = 0.5;
    std::vector<double> posteriors;
    /// ln(P(B|data) / P(F|data)) after each event; stays finite when the
    /// posterior rounds to 1.
    std::vector<double> log_odds;

    double current_log_odds() const;
    double current_posterior() const;
    /// P(F | data), accurate far below double epsilon.
    double null_probability() const;
};

VerdictTrace start_trace(double prior);

/// Appends the posterior after observing one R* value. Ties R* = 1 count as
/// above threshold.
VerdictTrace bayes_update(VerdictTrace trace, const RStarLikelihoods &likelihoods, double r_star_value);

// ---------------------------------------------------------------------------
// Bunching test.
// ---------------------------------------------------------------------------

struct BunchingProbabilities {
    double quantum = 0.0;    ///< C(m,p) / C(m+p-1,p)
    double classical = 0.0;  ///< C(m,p) p! / m^p
};

/// Haar-averaged probability of a collision-free ("p-fold click") event.
BunchingProbabilities bunching_probabilities(int modes, int photons);

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Weighted fraction of events with at most one photon per mode.
Estimate collision_free_fraction(const std::vector<EventRecord> &events);

// ---------------------------------------------------------------------------
// Bosonic clouding.
// ---------------------------------------------------------------------------

struct CloudingResult {
    double C = 0.0;
    double standard_error = 0.0;
    std::uint64_t n_events = 0;
    /// Modes [0, h) form the first half, [h, m) the second; h = floor(m/2).
    int halves_boundary = 0;
};

/// True when every photon of `config` sits in the same half of the array.
bool in_principal_quadrant(const FockState &config, int halves_boundary);

CloudingResult clouding_metric(const std::vector<EventRecord> &events, int modes);

/// Exact C of a distribution (the large-sample limit of clouding_metric).
double clouding_expectation(const OutcomeDistribution &dist);

/// C_quantum - C_classical with standard errors combined in quadrature.
Estimate delta_c(const std::vector<EventRecord> &quantum_events, const std::vector<EventRecord> &classical_events,
                 int modes);

// ---------------------------------------------------------------------------
// Fidelity and resampling errors.
// ---------------------------------------------------------------------------

/// Bhattacharyya coefficient sum_i sqrt(a_i b_i). Both distributions must be
/// normalized and share one configuration list.
double statistical_fidelity(const OutcomeDistribution &a, const OutcomeDistribution &b);

/// Fidelity of normalized event tallies against `theory`.
double statistical_fidelity(const std::vector<EventRecord> &events, const OutcomeDistribution &theory);

enum class Metric { kCollisionFree, kClouding };

/// "collision_free" or "clouding"; anything else raises kConfiguration.
Metric parse_metric(const std::string &id);

/// Standard deviation of `metric` over multinomial resamples of the counts.
double bootstrap_error(const std::vector<EventRecord> &events, Metric metric, int n_resamples, std::uint64_t seed);

}  // namespace bosonic

#endif
