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
#include <numeric>

#include "bosonic/circuitry.h"
#include "bosonic/error.h"
#include "bosonic/parallel.h"
#include "bosonic/rng.h"

namespace bosonic {

namespace {

double binomial_stderr(double fraction, double n) {
    return n > 0 ? std::sqrt(std::max(fraction * (1.0 - fraction), 0.0) / n) : 0.0;
}

void require_events(const std::vector<EventRecord> &events, const char *what) {
    if (events.empty() || total_count(events) == 0) {
        throw Error(ErrorKind::kData, std::string(what) + " needs at least one event");
    }
}

int histogram_bin(double r) {
    int bin = static_cast<int>(r / kRStarHistogramBinWidth);
    return std::clamp(bin, 0, kRStarHistogramBins - 1);
}

double metric_value(Metric metric, const std::vector<EventRecord> &events, int modes) {
    switch (metric) {
        case Metric::kCollisionFree:
            return collision_free_fraction(events).value;
        case Metric::kClouding:
            return clouding_metric(events, modes).C;
    }
    return 0.0;
}

}  // namespace

void RStarLikelihoods::validate() const {
    for (double x : {p_gt1_given_B, p_lt1_given_B, p_gt1_given_F, p_lt1_given_F}) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw Error(ErrorKind::kDomain, "likelihood outside [0, 1]");
        }
    }
    if (std::abs(p_gt1_given_B + p_lt1_given_B - 1.0) > 1e-9 ||
        std::abs(p_gt1_given_F + p_lt1_given_F - 1.0) > 1e-9) {
        throw Error(ErrorKind::kDomain, "likelihood pairs must sum to 1");
    }
}

RStarLikelihoods reference_likelihoods_p3_m9() {
    RStarLikelihoods l;
    l.p_gt1_given_B = 0.631;
    l.p_lt1_given_B = 0.369;
    l.p_gt1_given_F = 0.355;
    l.p_lt1_given_F = 0.645;
    l.photons = 3;
    l.modes = 9;
    l.ensemble_size = 100000;
    return l;
}

double r_star(const ComplexMatrix &photon_major, int modes) {
    const auto p = photon_major.rows();
    if (p == 0) {
        throw Error(ErrorKind::kDomain, "R* needs at least one photon");
    }
    if (modes < 1) {
        throw Error(ErrorKind::kDomain, "R* needs a positive mode count");
    }
    const double row_mean = static_cast<double>(p) / modes;
    double product = 1.0;
    for (Eigen::Index k = 0; k < p; k++) {
        product *= photon_major.row(k).squaredNorm() / row_mean;
    }
    return product;
}

double r_star(const ComplexMatrix &u, const FockState &input, const FockState &output) {
    if (input.photons() == 0) {
        throw Error(ErrorKind::kDomain, "R* needs at least one photon");
    }
    return r_star(submatrix(u, input, output).transpose(), static_cast<int>(u.rows()));
}

RStarLikelihoods estimate_rstar_likelihoods(int photons, int modes, std::uint64_t unitaries, std::uint64_t samples,
                                            std::uint64_t seed, int threads) {
    if (photons < 1 || photons > modes) {
        throw Error(ErrorKind::kDomain, "likelihood estimation needs 1 <= p <= m");
    }
    if (unitaries == 0 || samples == 0) {
        throw Error(ErrorKind::kConfiguration, "likelihood estimation needs unitaries and samples");
    }
    require_capacity(modes, photons);
    std::vector<int> first_modes(static_cast<size_t>(photons));
    std::iota(first_modes.begin(), first_modes.end(), 0);
    const FockState input = FockState::from_modes(modes, first_modes);
    const std::vector<FockState> configs = enumerate_configurations(modes, photons);
    std::vector<size_t> collision_free;
    for (size_t k = 0; k < configs.size(); k++) {
        if (configs[k].is_collision_free()) {
            collision_free.push_back(k);
        }
    }

    // Fixed block layout; integer tallies make the reduction order-free.
    struct Tally {
        std::uint64_t above_B = 0;
        std::uint64_t above_F = 0;
        std::vector<std::uint64_t> hist_B = std::vector<std::uint64_t>(kRStarHistogramBins, 0);
        std::vector<std::uint64_t> hist_F = std::vector<std::uint64_t>(kRStarHistogramBins, 0);
    };
    const size_t blocks = static_cast<size_t>(std::min<std::uint64_t>(unitaries, 256));
    std::vector<Tally> tallies(blocks);
    parallel_for(blocks, threads, [&](size_t b) {
        Tally &tally = tallies[b];
        const std::uint64_t begin = unitaries * b / blocks;
        const std::uint64_t end = unitaries * (b + 1) / blocks;
        std::vector<double> r(configs.size());
        for (std::uint64_t k = begin; k < end; k++) {
            Engine engine = make_engine(seed, k);
            const ComplexMatrix u = haar_unitary(modes, engine);
            const OutcomeDistribution dist = full_distribution(u, input, Model::quantum());
            for (size_t c = 0; c < configs.size(); c++) {
                r[c] = r_star(u, input, configs[c]);
            }
            for (size_t c : draw_indices(dist, samples, engine)) {
                tally.above_B += r[c] >= 1.0;
                tally.hist_B[static_cast<size_t>(histogram_bin(r[c]))]++;
            }
            for (std::uint64_t s = 0; s < samples; s++) {
                size_t pick = static_cast<size_t>(uniform01(engine) * static_cast<double>(collision_free.size()));
                size_t c = collision_free[std::min(pick, collision_free.size() - 1)];
                tally.above_F += r[c] >= 1.0;
                tally.hist_F[static_cast<size_t>(histogram_bin(r[c]))]++;
            }
        }
    });

    Tally total;
    for (const Tally &t : tallies) {
        total.above_B += t.above_B;
        total.above_F += t.above_F;
        for (int i = 0; i < kRStarHistogramBins; i++) {
            total.hist_B[static_cast<size_t>(i)] += t.hist_B[static_cast<size_t>(i)];
            total.hist_F[static_cast<size_t>(i)] += t.hist_F[static_cast<size_t>(i)];
        }
    }
    const double n = static_cast<double>(unitaries) * static_cast<double>(samples);
    RStarLikelihoods l;
    l.photons = photons;
    l.modes = modes;
    l.ensemble_size = unitaries;
    l.samples_per_unitary = samples;
    l.seed = seed;
    l.p_gt1_given_B = static_cast<double>(total.above_B) / n;
    l.p_lt1_given_B = 1.0 - l.p_gt1_given_B;
    l.p_gt1_given_F = static_cast<double>(total.above_F) / n;
    l.p_lt1_given_F = 1.0 - l.p_gt1_given_F;
    l.stderr_B = binomial_stderr(l.p_gt1_given_B, n);
    l.stderr_F = binomial_stderr(l.p_gt1_given_F, n);
    for (int i = 0; i < kRStarHistogramBins; i++) {
        // Densities, so the tables plot directly against R*.
        l.histogram_B.push_back(static_cast<double>(total.hist_B[static_cast<size_t>(i)]) / n /
                                kRStarHistogramBinWidth);
        l.histogram_F.push_back(static_cast<double>(total.hist_F[static_cast<size_t>(i)]) / n /
                                kRStarHistogramBinWidth);
    }
    return l;
}

double VerdictTrace::current_log_odds() const {
    if (!log_odds.empty()) {
        return log_odds.back();
    }
    return std::log(prior) - std::log1p(-prior);
}

double VerdictTrace::current_posterior() const {
    return posteriors.empty() ? prior : posteriors.back();
}

double VerdictTrace::null_probability() const {
    // 1 / (1 + e^L) evaluated without cancellation.
    double l = current_log_odds();
    return l > 0 ? std::exp(-l) / (1.0 + std::exp(-l)) : 1.0 / (1.0 + std::exp(l));
}

VerdictTrace start_trace(double prior) {
    if (!(prior > 0.0 && prior < 1.0)) {
        throw Error(ErrorKind::kDomain, "prior must lie strictly between 0 and 1");
    }
    VerdictTrace trace;
    trace.prior = prior;
    return trace;
}

VerdictTrace bayes_update(VerdictTrace trace, const RStarLikelihoods &likelihoods, double r_star_value) {
    const bool above = r_star_value >= 1.0;
    const double like_B = above ? likelihoods.p_gt1_given_B : likelihoods.p_lt1_given_B;
    const double like_F = above ? likelihoods.p_gt1_given_F : likelihoods.p_lt1_given_F;
    // Carry the log-odds and derive the posterior from them; iterating the
    // posterior directly would stall one ulp below 1.
    const double l = trace.current_log_odds() + std::log(like_B) - std::log(like_F);
    trace.log_odds.push_back(l);
    trace.posteriors.push_back(l > 0 ? 1.0 / (1.0 + std::exp(-l)) : std::exp(l) / (1.0 + std::exp(l)));
    return trace;
}

BunchingProbabilities bunching_probabilities(int modes, int photons) {
    if (photons < 1 || modes < 1) {
        throw Error(ErrorKind::kDomain, "bunching probabilities need m >= 1 and p >= 1");
    }
    if (photons > modes) {
        throw Error(ErrorKind::kDomain, "no collision-free pattern exists when p > m");
    }
    // Exact integer ratios give correctly rounded results while every term
    // fits in a double's mantissa.
    constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
    const auto m = static_cast<std::uint64_t>(modes);
    const auto p = static_cast<std::uint64_t>(photons);
    BunchingProbabilities b{1.0, 1.0};
    std::uint64_t free_count = binomial(m, p);
    std::uint64_t all_count = binomial(m + p - 1, p);
    if (all_count < kExact) {
        b.quantum = static_cast<double>(free_count) / static_cast<double>(all_count);
    } else {
        // C(m,p)/C(m+p-1,p) = prod (m-k)/(m+k)
        for (int k = 0; k < photons; k++) {
            b.quantum *= static_cast<double>(modes - k) / (modes + k);
        }
    }
    std::uint64_t ordered = 1;  // m (m-1) ... (m-p+1)
    std::uint64_t power = 1;    // m^p
    bool exact = true;
    for (std::uint64_t k = 0; k < p && exact; k++) {
        exact = power <= (kExact - 1) / m;
        ordered *= m - k;
        power *= m;
    }
    if (exact) {
        b.classical = static_cast<double>(ordered) / static_cast<double>(power);
    } else {
        // C(m,p) p!/m^p = prod (m-k)/m
        for (int k = 0; k < photons; k++) {
            b.classical *= static_cast<double>(modes - k) / modes;
        }
    }
    return b;
}

Estimate collision_free_fraction(const std::vector<EventRecord> &events) {
    require_events(events, "collision-free fraction");
    std::uint64_t n = 0, free = 0;
    for (const auto &e : events) {
        n += e.count;
        if (e.configuration.is_collision_free()) {
            free += e.count;
        }
    }
    double f = static_cast<double>(free) / static_cast<double>(n);
    return {f, binomial_stderr(f, static_cast<double>(n))};
}

bool in_principal_quadrant(const FockState &config, int halves_boundary) {
    bool low = false, high = false;
    for (int j = 0; j < config.modes(); j++) {
        if (config[j] > 0) {
            (j < halves_boundary ? low : high) = true;
        }
    }
    return !(low && high);
}

CloudingResult clouding_metric(const std::vector<EventRecord> &events, int modes) {
    require_events(events, "clouding metric");
    CloudingResult result;
    result.halves_boundary = modes / 2;
    std::uint64_t inside = 0;
    for (const auto &e : events) {
        if (e.configuration.modes() != modes) {
            throw Error(ErrorKind::kConfiguration, "event pattern '" + e.configuration.str() + "' is not over " +
                                                       std::to_string(modes) + " modes");
        }
        result.n_events += e.count;
        if (in_principal_quadrant(e.configuration, result.halves_boundary)) {
            inside += e.count;
        }
    }
    result.C = static_cast<double>(inside) / static_cast<double>(result.n_events);
    result.standard_error = binomial_stderr(result.C, static_cast<double>(result.n_events));
    return result;
}

double clouding_expectation(const OutcomeDistribution &dist) {
    const int h = dist.modes / 2;
    double c = 0.0;
    for (size_t k = 0; k < dist.size(); k++) {
        if (in_principal_quadrant(dist.configurations[k], h)) {
            c += dist.probabilities[k];
        }
    }
    return c;
}

Estimate delta_c(const std::vector<EventRecord> &quantum_events, const std::vector<EventRecord> &classical_events,
                 int modes) {
    CloudingResult q = clouding_metric(quantum_events, modes);
    CloudingResult c = clouding_metric(classical_events, modes);
    return {q.C - c.C, std::hypot(q.standard_error, c.standard_error)};
}

double statistical_fidelity(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    if (a.configurations != b.configurations || a.probabilities.size() != b.probabilities.size() ||
        a.probabilities.size() != a.configurations.size()) {
        throw Error(ErrorKind::kAlignment, "fidelity needs distributions over the same configuration list");
    }
    double sum_a = 0.0, sum_b = 0.0, f = 0.0;
    for (size_t k = 0; k < a.probabilities.size(); k++) {
        double x = a.probabilities[k], y = b.probabilities[k];
        if (x < 0.0 || y < 0.0) {
            throw Error(ErrorKind::kDomain, "fidelity given a negative probability");
        }
        sum_a += x;
        sum_b += y;
        f += std::sqrt(x * y);
    }
    if (std::abs(sum_a - 1.0) > 1e-9 || std::abs(sum_b - 1.0) > 1e-9) {
        throw Error(ErrorKind::kDomain, "fidelity needs normalized distributions");
    }
    return std::min(f, 1.0);
}

double statistical_fidelity(const std::vector<EventRecord> &events, const OutcomeDistribution &theory) {
    return statistical_fidelity(empirical_distribution(events, theory.configurations), theory);
}

Metric parse_metric(const std::string &id) {
    if (id == "collision_free") {
        return Metric::kCollisionFree;
    }
    if (id == "clouding") {
        return Metric::kClouding;
    }
    throw Error(ErrorKind::kConfiguration, "unknown metric '" + id + "'");
}

double bootstrap_error(const std::vector<EventRecord> &events, Metric metric, int n_resamples, std::uint64_t seed) {
    require_events(events, "bootstrap");
    if (n_resamples < 100) {
        throw Error(ErrorKind::kConfiguration, "bootstrap needs at least 100 resamples");
    }
    const int modes = events.front().configuration.modes();
    std::vector<EventRecord> observed;
    for (const auto &e : events) {
        if (e.count > 0) {
            observed.push_back(e);
        }
    }
    const std::uint64_t n = total_count(observed);
    Engine engine = make_engine(seed);
    std::vector<EventRecord> resample = observed;
    double mean = 0.0, m2 = 0.0;
    for (int r = 0; r < n_resamples; r++) {
        // Multinomial draw as a chain of conditional binomials.
        std::uint64_t left = n;
        std::uint64_t mass_left = n;
        for (size_t k = 0; k < observed.size(); k++) {
            std::uint64_t drawn = 0;
            if (k + 1 == observed.size()) {
                drawn = left;
            } else if (left > 0) {
                double q = static_cast<double>(observed[k].count) / static_cast<double>(mass_left);
                std::binomial_distribution<std::uint64_t> binom(left, std::min(q, 1.0));
                drawn = binom(engine);
            }
            resample[k].count = drawn;
            left -= drawn;
            mass_left -= observed[k].count;
        }
        double x = metric_value(metric, resample, modes);
        double delta = x - mean;
        mean += delta / (r + 1);
        m2 += delta * (x - mean);
    }
    return std::sqrt(m2 / (n_resamples - 1));
}

}  // namespace bosonic
