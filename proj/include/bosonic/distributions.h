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

#ifndef BOSONIC_DISTRIBUTIONS_H
#define BOSONIC_DISTRIBUTIONS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bosonic/fock.h"
#include "bosonic/matrix.h"
#include "bosonic/rng.h"

namespace bosonic {

/// Largest configuration space full_distribution and friends will enumerate.
inline constexpr std::uint64_t kMaxConfigurations = 10'000'000;

/// Probability mass the sifting subtraction may leave negative on a pattern
/// of exact inputs before it is treated as inconsistent.
inline constexpr double kSiftNegativityTolerance = 1e-6;

/// Which particle statistics produced a distribution.
struct Model {
    enum class Kind { kQuantum, kClassical, kMixed, kEmpirical, kSifted };

    Kind kind = Kind::kQuantum;
    /// Weight of the quantum endpoint for kMixed.
    double lambda = 1.0;

    static Model quantum() {
        return {Kind::kQuantum, 1.0};
    }
    static Model classical() {
        return {Kind::kClassical, 0.0};
    }
    /// lambda * quantum + (1 - lambda) * classical. This is a phenomenological
    /// interpolation; partially distinguishable photons at p > 2 are not a
    /// convex mixture of the two endpoints.
    static Model mixed(double lambda);

    /// "quantum", "classical", "mixed(0.25)", "empirical" or "sifted".
    std::string tag() const;
    static Model parse(const std::string &tag);

    friend bool operator==(const Model &, const Model &) = default;
};

struct OutcomeDistribution {
    int modes = 0;
    int photons = 0;
    /// Input state, when the distribution was computed from a circuit.
    std::optional<FockState> input;
    /// Canonically ordered patterns; all C(m+p-1, p) of them unless filtered.
    std::vector<FockState> configurations;
    std::vector<double> probabilities;
    Model model;
    /// Total mass before renormalization (1 up to rounding for unitary circuits).
    double raw_total = 1.0;
    /// Number of events behind an empirical distribution, 0 for exact ones.
    std::uint64_t sample_count = 0;

    size_t size() const noexcept {
        return configurations.size();
    }
    /// Index of `config` in `configurations`, if present.
    std::optional<size_t> find(const FockState &config) const;
};

/// An observed or simulated detection pattern with its tally.
struct EventRecord {
    FockState configuration;
    std::uint64_t count = 0;

    friend bool operator==(const EventRecord &, const EventRecord &) = default;
};

/// Throws kCapacity naming C(m+p-1, p) if the space exceeds kMaxConfigurations.
void require_capacity(int modes, int photons);

std::vector<FockState> enumerate_configurations(int modes, int photons);

/// |Per(M)|^2 / (prod s_i! prod t_j!).
double quantum_probability(const ComplexMatrix &u, const FockState &input, const FockState &output);

/// Per(|M|^2) / prod t_j!: photons routed independently.
double classical_probability(const ComplexMatrix &u, const FockState &input, const FockState &output);

/// Probability of every output pattern. The result is renormalized to 1 and
/// the pre-normalization total is kept in raw_total.
OutcomeDistribution full_distribution(const ComplexMatrix &u, const FockState &input, const Model &model,
                                      int threads = 1);

/// Weighted incoherent mixture of distributions over one configuration set.
OutcomeDistribution mixture(const std::vector<OutcomeDistribution> &parts, const std::vector<double> &weights);

/// n i.i.d. pattern indices by inverse CDF over the canonical order.
std::vector<size_t> draw_indices(const OutcomeDistribution &dist, std::uint64_t n, Engine &engine);

/// n i.i.d. draws aggregated per pattern; only nonzero tallies are returned,
/// in canonical order.
std::vector<EventRecord> sample_events(const OutcomeDistribution &dist, std::uint64_t n, std::uint64_t seed);

std::uint64_t total_count(const std::vector<EventRecord> &events);

/// Normalized event tallies laid out over `reference`'s configuration list.
/// Events outside that list raise kAlignment.
OutcomeDistribution empirical_distribution(const std::vector<EventRecord> &events,
                                           const std::vector<FockState> &reference);

/// Same, over the full canonical space of (modes, photons).
OutcomeDistribution empirical_distribution(const std::vector<EventRecord> &events, int modes, int photons);

/// Restriction to `measured`, renormalized. Throws kFilter if `measured` is
/// empty, is not a subset, or carries no mass.
OutcomeDistribution filter_renormalize(const OutcomeDistribution &dist, const std::vector<FockState> &measured);

/// Recovers the |1111> distribution from the equal mixture of |1111>,
/// |2200> and |0022> inputs: 3 * mix - d2200 - d0022, clipped at zero and
/// renormalized. A pattern left more negative than tolerance + 5 sigma
/// (sigma from the multinomial noise of sampled inputs, zero for exact
/// ones) raises kInconsistentInputs.
OutcomeDistribution sift_four_photon(const ComplexMatrix &u, const OutcomeDistribution &mix,
                                     const OutcomeDistribution &d2200, const OutcomeDistribution &d0022,
                                     double tolerance = kSiftNegativityTolerance);

/// The three four-photon inputs on designated modes (a, b, c, d):
/// |1111>, |2200> (two photons in a and b) and |0022>.
struct FourPhotonInputs {
    FockState all_single;
    FockState first_pair;
    FockState second_pair;
};
FourPhotonInputs four_photon_inputs(int modes, const std::vector<int> &designated);

}  // namespace bosonic

#endif
