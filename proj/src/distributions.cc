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

#include "bosonic/distributions.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "bosonic/circuitry.h"
#include "bosonic/error.h"
#include "bosonic/parallel.h"
#include "bosonic/permanent.h"

namespace bosonic {

namespace {

void enumerate_into(std::vector<int> &occ, size_t mode, int remaining, std::vector<FockState> &out) {
    if (mode + 1 == occ.size()) {
        occ[mode] = remaining;
        out.emplace_back(occ);
        return;
    }
    for (int t = remaining; t >= 0; t--) {
        occ[mode] = t;
        enumerate_into(occ, mode + 1, remaining - t, out);
    }
}

void require_same_space(const OutcomeDistribution &a, const OutcomeDistribution &b, const char *what) {
    if (a.modes != b.modes || a.photons != b.photons || a.configurations != b.configurations) {
        throw Error(ErrorKind::kAlignment, std::string(what) + ": distributions are over different configuration sets");
    }
}

}  // namespace

Model Model::mixed(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorKind::kDomain, "mixing weight must lie in [0, 1]");
    }
    return {Kind::kMixed, lambda};
}

std::string Model::tag() const {
    switch (kind) {
        case Kind::kQuantum:
            return "quantum";
        case Kind::kClassical:
            return "classical";
        case Kind::kMixed: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "mixed(%.17g)", lambda);
            return buf;
        }
        case Kind::kEmpirical:
            return "empirical";
        case Kind::kSifted:
            return "sifted";
    }
    return "unknown";
}

Model Model::parse(const std::string &tag) {
    if (tag == "quantum") {
        return quantum();
    }
    if (tag == "classical") {
        return classical();
    }
    if (tag == "empirical") {
        return {Kind::kEmpirical, 0.0};
    }
    if (tag == "sifted") {
        return {Kind::kSifted, 0.0};
    }
    if (tag.starts_with("mixed(") && tag.ends_with(")")) {
        std::string inner = tag.substr(6, tag.size() - 7);
        size_t used = 0;
        double lambda = 0;
        try {
            lambda = std::stod(inner, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == inner.size() && used > 0) {
            return mixed(lambda);
        }
    }
    throw Error(ErrorKind::kParse, "unknown model tag '" + tag + "'");
}

std::optional<size_t> OutcomeDistribution::find(const FockState &config) const {
    if (config.modes() != modes || config.photons() != photons) {
        return std::nullopt;
    }
    auto it = std::lower_bound(configurations.begin(), configurations.end(), config, CanonicalOrder{});
    if (it == configurations.end() || *it != config) {
        return std::nullopt;
    }
    return static_cast<size_t>(it - configurations.begin());
}

void require_capacity(int modes, int photons) {
    if (modes < 1 || photons < 1) {
        throw Error(ErrorKind::kConfiguration, "need at least one mode and one photon");
    }
    std::uint64_t count = configuration_count(modes, photons);
    if (count > kMaxConfigurations) {
        throw Error(ErrorKind::kCapacity, "configuration space C(" + std::to_string(modes + photons - 1) + "," +
                                              std::to_string(photons) + ") = " + std::to_string(count) +
                                              " exceeds the limit of " + std::to_string(kMaxConfigurations));
    }
}

std::vector<FockState> enumerate_configurations(int modes, int photons) {
    require_capacity(modes, photons);
    std::vector<FockState> out;
    out.reserve(configuration_count(modes, photons));
    std::vector<int> occ(static_cast<size_t>(modes), 0);
    enumerate_into(occ, 0, photons, out);
    return out;
}

double quantum_probability(const ComplexMatrix &u, const FockState &input, const FockState &output) {
    Complex per = permanent_ryser(submatrix(u, input, output));
    return std::norm(per) / (input.factorial_product() * output.factorial_product());
}

double classical_probability(const ComplexMatrix &u, const FockState &input, const FockState &output) {
    return permanent_real_nonneg(abs_squared(submatrix(u, input, output))) / output.factorial_product();
}

OutcomeDistribution full_distribution(const ComplexMatrix &u, const FockState &input, const Model &model,
                                      int threads) {
    require_matching_modes(u, input);
    if (input.photons() < 1) {
        throw Error(ErrorKind::kConfiguration, "input state carries no photons");
    }
    if (model.kind != Model::Kind::kQuantum && model.kind != Model::Kind::kClassical &&
        model.kind != Model::Kind::kMixed) {
        throw Error(ErrorKind::kConfiguration, "cannot compute a '" + model.tag() + "' distribution from a circuit");
    }
    if (!(model.lambda >= 0.0 && model.lambda <= 1.0)) {
        throw Error(ErrorKind::kDomain, "mixing weight must lie in [0, 1]");
    }
    OutcomeDistribution dist;
    dist.modes = input.modes();
    dist.photons = input.photons();
    dist.input = input;
    dist.model = model;
    dist.configurations = enumerate_configurations(dist.modes, dist.photons);
    dist.probabilities.assign(dist.configurations.size(), 0.0);

    const bool want_quantum = model.kind != Model::Kind::kClassical;
    const bool want_classical = model.kind != Model::Kind::kQuantum;
    const double lambda = model.kind == Model::Kind::kMixed ? model.lambda : (want_quantum ? 1.0 : 0.0);
    parallel_for(dist.configurations.size(), threads, [&](size_t k) {
        const FockState &out = dist.configurations[k];
        double value = 0.0;
        if (want_quantum) {
            value += lambda * quantum_probability(u, input, out);
        }
        if (want_classical) {
            value += (1.0 - lambda) * classical_probability(u, input, out);
        }
        dist.probabilities[k] = value;
    });

    double total = 0.0;
    for (double x : dist.probabilities) {
        total += x;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorKind::kDomain, "circuit transmits no probability for this input");
    }
    dist.raw_total = total;
    for (double &x : dist.probabilities) {
        x /= total;
    }
    return dist;
}

OutcomeDistribution mixture(const std::vector<OutcomeDistribution> &parts, const std::vector<double> &weights) {
    if (parts.empty() || parts.size() != weights.size()) {
        throw Error(ErrorKind::kConfiguration, "mixture needs one weight per component");
    }
    double weight_total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorKind::kDomain, "mixture weights must be non-negative");
        }
        weight_total += w;
    }
    if (!(weight_total > 0.0)) {
        throw Error(ErrorKind::kDomain, "mixture weights sum to zero");
    }
    OutcomeDistribution out = parts.front();
    out.input.reset();
    out.raw_total = 1.0;
    out.sample_count = 0;
    std::fill(out.probabilities.begin(), out.probabilities.end(), 0.0);
    for (size_t c = 0; c < parts.size(); c++) {
        require_same_space(out, parts[c], "mixture");
        if (parts[c].model != out.model) {
            out.model = Model{Model::Kind::kEmpirical, 0.0};
        }
        for (size_t k = 0; k < out.size(); k++) {
            out.probabilities[k] += weights[c] / weight_total * parts[c].probabilities[k];
        }
    }
    return out;
}

std::vector<size_t> draw_indices(const OutcomeDistribution &dist, std::uint64_t n, Engine &engine) {
    if (dist.probabilities.empty() || dist.probabilities.size() != dist.configurations.size()) {
        throw Error(ErrorKind::kData, "cannot sample from an empty distribution");
    }
    std::vector<double> cdf(dist.probabilities.size());
    double running = 0.0;
    size_t last_nonzero = 0;
    for (size_t k = 0; k < cdf.size(); k++) {
        if (!(dist.probabilities[k] >= 0.0)) {
            throw Error(ErrorKind::kDomain, "negative probability in distribution");
        }
        running += dist.probabilities[k];
        cdf[k] = running;
        if (dist.probabilities[k] > 0.0) {
            last_nonzero = k;
        }
    }
    if (!(running > 0.0)) {
        throw Error(ErrorKind::kDomain, "distribution carries no mass");
    }
    std::vector<size_t> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; i++) {
        double x = uniform01(engine) * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
        size_t k = std::min(static_cast<size_t>(it - cdf.begin()), last_nonzero);
        out.push_back(k);
    }
    return out;
}

std::vector<EventRecord> sample_events(const OutcomeDistribution &dist, std::uint64_t n, std::uint64_t seed) {
    Engine engine = make_engine(seed);
    std::vector<std::uint64_t> counts(dist.size(), 0);
    for (size_t k : draw_indices(dist, n, engine)) {
        counts[k]++;
    }
    std::vector<EventRecord> events;
    for (size_t k = 0; k < counts.size(); k++) {
        if (counts[k]) {
            events.push_back({dist.configurations[k], counts[k]});
        }
    }
    return events;
}

std::uint64_t total_count(const std::vector<EventRecord> &events) {
    std::uint64_t n = 0;
    for (const auto &e : events) {
        n += e.count;
    }
    return n;
}

OutcomeDistribution empirical_distribution(const std::vector<EventRecord> &events,
                                           const std::vector<FockState> &reference) {
    if (reference.empty()) {
        throw Error(ErrorKind::kAlignment, "empty reference configuration set");
    }
    OutcomeDistribution dist;
    dist.modes = reference.front().modes();
    dist.photons = reference.front().photons();
    dist.configurations = reference;
    dist.model = Model{Model::Kind::kEmpirical, 0.0};
    dist.probabilities.assign(reference.size(), 0.0);
    std::uint64_t n = total_count(events);
    if (n == 0) {
        throw Error(ErrorKind::kData, "no events to build a distribution from");
    }
    for (const auto &e : events) {
        auto k = dist.find(e.configuration);
        if (!k) {
            throw Error(ErrorKind::kAlignment, "event pattern '" + e.configuration.str() +
                                                   "' is not in the reference configuration set");
        }
        dist.probabilities[*k] += static_cast<double>(e.count);
    }
    for (double &x : dist.probabilities) {
        x /= static_cast<double>(n);
    }
    dist.raw_total = 1.0;
    dist.sample_count = n;
    return dist;
}

OutcomeDistribution empirical_distribution(const std::vector<EventRecord> &events, int modes, int photons) {
    return empirical_distribution(events, enumerate_configurations(modes, photons));
}

OutcomeDistribution filter_renormalize(const OutcomeDistribution &dist, const std::vector<FockState> &measured) {
    if (measured.empty()) {
        throw Error(ErrorKind::kFilter, "measured pattern set is empty");
    }
    std::vector<size_t> keep;
    keep.reserve(measured.size());
    for (const auto &config : measured) {
        auto k = dist.find(config);
        if (!k) {
            throw Error(ErrorKind::kFilter, "measured pattern '" + config.str() + "' is not in the distribution");
        }
        keep.push_back(*k);
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    double mass = 0.0;
    for (size_t k : keep) {
        mass += dist.probabilities[k];
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorKind::kFilter, "measured patterns carry zero probability");
    }
    OutcomeDistribution out;
    out.modes = dist.modes;
    out.photons = dist.photons;
    out.input = dist.input;
    out.model = dist.model;
    out.raw_total = dist.raw_total * mass;
    out.sample_count = dist.sample_count;
    out.configurations.reserve(keep.size());
    out.probabilities.reserve(keep.size());
    for (size_t k : keep) {
        out.configurations.push_back(dist.configurations[k]);
        out.probabilities.push_back(dist.probabilities[k] / mass);
    }
    return out;
}

OutcomeDistribution sift_four_photon(const ComplexMatrix &u, const OutcomeDistribution &mix,
                                     const OutcomeDistribution &d2200, const OutcomeDistribution &d0022,
                                     double tolerance) {
    if (u.rows() != u.cols() || u.rows() != mix.modes) {
        throw Error(ErrorKind::kConfiguration, "sifting inputs do not match the circuit's mode count");
    }
    if (mix.photons != 4) {
        throw Error(ErrorKind::kConfiguration, "sifting needs four-photon distributions");
    }
    require_same_space(mix, d2200, "sift");
    require_same_space(mix, d0022, "sift");

    // Multinomial variance of an empirical frequency, floored at one count.
    auto variance = [](const OutcomeDistribution &d, size_t k) {
        if (d.sample_count == 0) {
            return 0.0;
        }
        double n = static_cast<double>(d.sample_count);
        double q = std::max(d.probabilities[k], 1.0 / n);
        return q * (1.0 - q) / n;
    };

    OutcomeDistribution out;
    out.modes = mix.modes;
    out.photons = mix.photons;
    out.configurations = mix.configurations;
    out.model = Model{Model::Kind::kSifted, 0.0};
    out.probabilities.assign(mix.size(), 0.0);
    double total = 0.0;
    for (size_t k = 0; k < mix.size(); k++) {
        double value = 3.0 * mix.probabilities[k] - d2200.probabilities[k] - d0022.probabilities[k];
        if (value < 0.0) {
            double sigma = std::sqrt(9.0 * variance(mix, k) + variance(d2200, k) + variance(d0022, k));
            if (value < -(tolerance + 5.0 * sigma)) {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "pattern '%s' left with mass %.3g after subtraction",
                              mix.configurations[k].str().c_str(), value);
                throw Error(ErrorKind::kInconsistentInputs, buf);
            }
            value = 0.0;
        }
        out.probabilities[k] = value;
        total += value;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorKind::kInconsistentInputs, "nothing left after subtraction");
    }
    for (double &x : out.probabilities) {
        x /= total;
    }
    out.raw_total = total;
    std::uint64_t n = std::min({mix.sample_count, d2200.sample_count, d0022.sample_count});
    out.sample_count = n;
    return out;
}

FourPhotonInputs four_photon_inputs(int modes, const std::vector<int> &designated) {
    if (designated.size() != 4) {
        throw Error(ErrorKind::kConfiguration, "four-photon sifting needs exactly four designated modes");
    }
    const int a = designated[0], b = designated[1], c = designated[2], d = designated[3];
    return {
        FockState::from_modes(modes, {a, b, c, d}),
        FockState::from_modes(modes, {a, a, b, b}),
        FockState::from_modes(modes, {c, c, d, d}),
    };
}

}  // namespace bosonic
