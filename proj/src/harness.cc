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

#include "bosonic/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "bosonic/error.h"
#include "bosonic/io.h"
#include "bosonic/rng.h"

namespace bosonic::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string distribution_table(const OutcomeDistribution &dist) {
    std::string out = "index,pattern,probability\n";
    for (size_t k = 0; k < dist.size(); k++) {
        out += std::to_string(k) + "," + dist.configurations[k].str() + "," + fmt_double(dist.probabilities[k]) +
               "\n";
    }
    return out;
}

const FockState &single_input(const ExperimentConfig &config, const char *command) {
    if (config.inputs.size() != 1) {
        throw Error(ErrorKind::kConfiguration, std::string(command) + " needs exactly one input configuration");
    }
    return config.inputs.front();
}

void require_nonempty(const std::vector<EventRecord> &events, const std::filesystem::path &path) {
    if (events.empty() || total_count(events) == 0) {
        throw Error(ErrorKind::kData, "'" + path.string() + "' holds no events");
    }
}

std::vector<FockState> measured_patterns(const std::vector<EventRecord> &events) {
    std::vector<FockState> out;
    for (const auto &e : events) {
        if (e.count > 0) {
            out.push_back(e.configuration);
        }
    }
    std::sort(out.begin(), out.end(), CanonicalOrder{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kCapacity:
        case ErrorKind::kSizeLimit:
            return kExitCapacity;
        case ErrorKind::kIo:
            return kExitIo;
        default:
            return kExitValidation;
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose) {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (purpose + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void ExperimentConfig::validate() const {
    if (std::holds_alternative<std::monostate>(circuit)) {
        throw Error(ErrorKind::kConfiguration, "no circuit source set (use --haar, --qw or --matrix)");
    }
    if (const auto *haar = std::get_if<HaarSource>(&circuit); haar && haar->modes < 1) {
        throw Error(ErrorKind::kInvalidDimension, "Haar circuit needs at least one mode");
    }
    if (const auto *qw = std::get_if<QwSpec>(&circuit)) {
        qw->validate();
    }
    if (samples < 1) {
        throw Error(ErrorKind::kConfiguration, "sample count must be at least 1");
    }
    if (!input_weights.empty() && input_weights.size() != inputs.size()) {
        throw Error(ErrorKind::kConfiguration, "need one weight per input configuration");
    }
    for (const auto &in : inputs) {
        if (in.photons() < 1) {
            throw Error(ErrorKind::kConfiguration, "input configuration carries no photons");
        }
        if (in.photons() != inputs.front().photons() || in.modes() != inputs.front().modes()) {
            throw Error(ErrorKind::kConfiguration, "mixed inputs must share mode and photon counts");
        }
    }
}

json ExperimentConfig::to_json() const {
    json j;
    if (const auto *haar = std::get_if<HaarSource>(&circuit)) {
        json h = {{"modes", haar->modes}};
        if (haar->seed) {
            h["seed"] = *haar->seed;
        }
        j["circuit"] = {{"haar", h}};
    } else if (const auto *qw = std::get_if<QwSpec>(&circuit)) {
        j["circuit"] = {{"qw", io::qw_spec_to_json(*qw)}};
    } else if (const auto *file = std::get_if<MatrixFileSource>(&circuit)) {
        j["circuit"] = {{"matrix", file->path.string()}};
    } else {
        j["circuit"] = nullptr;
    }
    json in = json::array();
    for (const auto &s : inputs) {
        in.push_back(s.occupations());
    }
    j["inputs"] = in;
    if (!input_weights.empty()) {
        j["input_weights"] = input_weights;
    }
    j["model"] = model.tag();
    j["samples"] = samples;
    j["seed"] = seed;
    j["out"] = out_dir.string();
    j["threads"] = threads;
    return j;
}

void ExperimentConfig::merge_json(const json &j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::kParse, "config file must hold a JSON object");
    }
    try {
        if (j.contains("circuit") && !j["circuit"].is_null()) {
            const json &c = j["circuit"];
            int sources = static_cast<int>(c.contains("haar")) + static_cast<int>(c.contains("qw")) +
                          static_cast<int>(c.contains("matrix"));
            if (sources != 1) {
                throw Error(ErrorKind::kConfiguration, "config 'circuit' must set exactly one of haar, qw, matrix");
            }
            if (c.contains("haar")) {
                HaarSource h;
                h.modes = c["haar"].at("modes").get<int>();
                if (c["haar"].contains("seed")) {
                    h.seed = c["haar"]["seed"].get<std::uint64_t>();
                }
                circuit = h;
            } else if (c.contains("qw")) {
                circuit = io::qw_spec_from_json(c["qw"]);
            } else {
                circuit = MatrixFileSource{c["matrix"].get<std::string>()};
            }
        }
        if (j.contains("input")) {
            inputs = {io::fock_from_json(j["input"])};
        }
        if (j.contains("inputs")) {
            inputs.clear();
            for (const auto &s : j["inputs"]) {
                inputs.push_back(io::fock_from_json(s));
            }
        }
        if (j.contains("input_weights")) {
            input_weights = j["input_weights"].get<std::vector<double>>();
        }
        if (j.contains("model")) {
            model = Model::parse(j["model"].get<std::string>());
        }
        if (j.contains("samples")) {
            samples = j["samples"].get<std::uint64_t>();
        }
        if (j.contains("seed")) {
            seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("out")) {
            out_dir = j["out"].get<std::string>();
        }
        if (j.contains("threads")) {
            threads = j["threads"].get<int>();
        }
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kParse, std::string("config file: ") + e.what());
    }
}

Circuit build_circuit(const ExperimentConfig &config) {
    config.validate();
    Circuit c;
    if (const auto *haar = std::get_if<HaarSource>(&config.circuit)) {
        c.matrix = haar_unitary(haar->modes, haar->seed.value_or(derive_seed(config.seed, kSeedPurposeCircuit)));
    } else if (const auto *qw = std::get_if<QwSpec>(&config.circuit)) {
        c.matrix = qw_unitary(*qw);
    } else {
        const auto &file = std::get<MatrixFileSource>(config.circuit);
        io::LoadedMatrix loaded = io::load_matrix(file.path);
        if (loaded.matrix.rows() != loaded.matrix.cols()) {
            throw Error(ErrorKind::kInvalidDimension, "circuit matrix in '" + file.path.string() + "' is not square");
        }
        c.matrix = std::move(loaded.matrix);
    }
    c.unitarity_deviation = unitarity_deviation(c.matrix);
    c.unitary = c.unitarity_deviation <= kUnitarityTolerance;
    return c;
}

OutcomeDistribution configured_distribution(const ExperimentConfig &config, const Circuit &circuit) {
    if (config.inputs.empty()) {
        throw Error(ErrorKind::kConfiguration, "no input configuration set (use --input)");
    }
    if (config.inputs.size() == 1) {
        return full_distribution(circuit.matrix, config.inputs.front(), config.model, config.threads);
    }
    std::vector<OutcomeDistribution> parts;
    for (const auto &in : config.inputs) {
        parts.push_back(full_distribution(circuit.matrix, in, config.model, config.threads));
    }
    std::vector<double> weights = config.input_weights;
    if (weights.empty()) {
        weights.assign(parts.size(), 1.0);
    }
    OutcomeDistribution mixed = mixture(parts, weights);
    mixed.model = config.model;
    return mixed;
}

json RunManifest::to_json() const {
    json files_json = json::array();
    for (const auto &f : files) {
        files_json.push_back({{"name", f.name}, {"sha256", f.sha256}});
    }
    return {{"command", command}, {"version", version},   {"config", config},
            {"wall_seconds", wall_seconds}, {"files", files_json}, {"warnings", warnings}};
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
}

void OutputSet::add(const std::string &name, std::string contents) {
    files_.emplace_back(name, std::move(contents));
}

RunManifest OutputSet::commit(RunManifest manifest) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw Error(ErrorKind::kIo, "cannot create output directory '" + dir_.string() + "'");
    }
    manifest.files.clear();
    for (const auto &[name, contents] : files_) {
        io::write_file_atomic(dir_ / name, contents);
        manifest.files.push_back({name, io::sha256_hex(contents)});
    }
    io::write_file_atomic(dir_ / "manifest.json", io::dump(manifest.to_json()));
    return manifest;
}

namespace {

RunManifest start_manifest(const char *command, const ExperimentConfig &config) {
    RunManifest m;
    m.command = command;
    m.config = config.to_json();
    return m;
}

void note_circuit(RunManifest &manifest, const Circuit &circuit) {
    if (!circuit.unitary) {
        manifest.warnings.push_back("circuit matrix is not unitary (max deviation " +
                                    fmt_double(circuit.unitarity_deviation) +
                                    "); probabilities were renormalized");
    }
}

}  // namespace

RunManifest cmd_simulate(const ExperimentConfig &config) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("simulate", config);
    Circuit circuit = build_circuit(config);
    note_circuit(manifest, circuit);
    OutcomeDistribution dist = configured_distribution(config, circuit);
    OutputSet out(config.out_dir);
    out.add("distribution.json", io::dump(io::distribution_to_json(dist)));
    out.add("distribution.csv", distribution_table(dist));
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

RunManifest cmd_sample(const ExperimentConfig &config) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("sample", config);
    Circuit circuit = build_circuit(config);
    note_circuit(manifest, circuit);
    OutcomeDistribution dist = configured_distribution(config, circuit);
    auto events = sample_events(dist, config.samples, derive_seed(config.seed, kSeedPurposeSampling));
    OutputSet out(config.out_dir);
    out.add("events.csv", io::events_to_csv(events));
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

std::filesystem::path likelihood_cache_path(const std::filesystem::path &cache_dir, int photons, int modes,
                                            std::uint64_t ensemble_size, std::uint64_t seed) {
    return cache_dir / ("rstar_p" + std::to_string(photons) + "_m" + std::to_string(modes) + "_n" +
                        std::to_string(ensemble_size) + "_s" + std::to_string(seed) + ".json");
}

std::filesystem::path default_cache_dir(const ExperimentConfig &config) {
    if (const char *env = std::getenv(kCacheEnvVar); env && *env) {
        return env;
    }
    return config.out_dir / "cache";
}

namespace {

std::string likelihood_cache_contents(const RStarLikelihoods &l) {
    json j = io::likelihoods_to_json(l);
    j["provenance"] = {{"version", kVersion},
                       {"method", "Haar ensemble Monte Carlo; B from the quantum distribution, F uniform over "
                                  "collision-free patterns; inputs in modes 0..p-1"}};
    return io::dump(j);
}

std::string rstar_pdf_table(const RStarLikelihoods &l, const std::vector<double> *observed) {
    std::string out = "bin_low,bin_high,pdf_B,pdf_F";
    out += observed ? ",observed_density\n" : "\n";
    for (int i = 0; i < kRStarHistogramBins; i++) {
        auto k = static_cast<size_t>(i);
        out += fmt_double(i * kRStarHistogramBinWidth) + "," + fmt_double((i + 1) * kRStarHistogramBinWidth) + ",";
        out += (k < l.histogram_B.size() ? fmt_double(l.histogram_B[k]) : std::string()) + ",";
        out += k < l.histogram_F.size() ? fmt_double(l.histogram_F[k]) : std::string();
        if (observed) {
            out += "," + fmt_double((*observed)[k]);
        }
        out += "\n";
    }
    return out;
}

}  // namespace

RStarLikelihoods cached_likelihoods(const std::filesystem::path &cache_dir, int photons, int modes,
                                    std::uint64_t ensemble_size, std::uint64_t samples_per_unitary,
                                    std::uint64_t seed, int threads) {
    auto path = likelihood_cache_path(cache_dir, photons, modes, ensemble_size, seed);
    if (std::filesystem::exists(path)) {
        RStarLikelihoods cached = io::likelihoods_from_json(io::read_json(path));
        if (cached.samples_per_unitary == samples_per_unitary) {
            return cached;
        }
    }
    RStarLikelihoods l = estimate_rstar_likelihoods(photons, modes, ensemble_size, samples_per_unitary, seed, threads);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    io::write_file_atomic(path, likelihood_cache_contents(l));
    return l;
}

RunManifest cmd_calibrate_likelihoods(const ExperimentConfig &config, const CalibrateOptions &options) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("calibrate-likelihoods", config);
    manifest.config["photons"] = options.photons;
    manifest.config["modes"] = options.modes;
    manifest.config["unitaries"] = options.unitaries;
    manifest.config["samples_per_unitary"] = options.samples_per_unitary;
    RStarLikelihoods l = estimate_rstar_likelihoods(options.photons, options.modes, options.unitaries,
                                                    options.samples_per_unitary, config.seed, config.threads);
    std::string contents = likelihood_cache_contents(l);
    std::filesystem::path cache_dir = options.cache_dir.value_or(default_cache_dir(config));
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (ec) {
        throw Error(ErrorKind::kIo, "cannot create cache directory '" + cache_dir.string() + "'");
    }
    auto cache_path = likelihood_cache_path(cache_dir, options.photons, options.modes, options.unitaries, config.seed);
    io::write_file_atomic(cache_path, contents);
    manifest.config["cache_file"] = cache_path.string();
    OutputSet out(config.out_dir);
    out.add("likelihoods.json", contents);
    out.add("rstar_pdf.csv", rstar_pdf_table(l, nullptr));
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

RunManifest cmd_verify_rstar(const ExperimentConfig &config, const RStarVerifyOptions &options) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("verify rstar", config);
    Circuit circuit = build_circuit(config);
    note_circuit(manifest, circuit);
    const FockState &input = single_input(config, "verify rstar");
    require_matching_modes(circuit.matrix, input);
    auto records = io::load_events(options.events);
    require_nonempty(records, options.events);

    std::vector<FockState> sequence;
    for (const auto &e : records) {
        if (e.configuration.photons() != input.photons()) {
            throw Error(ErrorKind::kAlignment, "event pattern '" + e.configuration.str() + "' has " +
                                                   std::to_string(e.configuration.photons()) +
                                                   " photons, input has " + std::to_string(input.photons()));
        }
        require_matching_modes(circuit.matrix, e.configuration);
        for (std::uint64_t c = 0; c < e.count; c++) {
            sequence.push_back(e.configuration);
        }
    }
    if (!options.keep_order) {
        Engine engine = make_engine(derive_seed(config.seed, kSeedPurposeShuffle));
        for (size_t i = sequence.size(); i > 1; i--) {
            auto j = static_cast<size_t>(uniform01(engine) * static_cast<double>(i));
            std::swap(sequence[i - 1], sequence[std::min(j, i - 1)]);
        }
    }

    const int p = input.photons();
    const int m = input.modes();
    RStarLikelihoods likelihoods;
    std::string likelihood_origin;
    auto kind = options.likelihoods.kind;
    if (kind == LikelihoodSource::Kind::kAuto) {
        kind = (p == 3 && m == 9) ? LikelihoodSource::Kind::kReference : LikelihoodSource::Kind::kCalibrate;
    }
    switch (kind) {
        case LikelihoodSource::Kind::kReference:
            if (p != 3 || m != 9) {
                throw Error(ErrorKind::kConfiguration, "reference likelihoods exist only for p=3, m=9");
            }
            likelihoods = reference_likelihoods_p3_m9();
            likelihood_origin = "reference";
            break;
        case LikelihoodSource::Kind::kFile:
            likelihoods = io::likelihoods_from_json(io::read_json(options.likelihoods.file));
            likelihood_origin = options.likelihoods.file.string();
            break;
        default:
            likelihoods = cached_likelihoods(default_cache_dir(config), p, m, options.likelihoods.ensemble_size,
                                             options.likelihoods.samples_per_unitary, config.seed, config.threads);
            likelihood_origin = "calibrated";
            break;
    }
    if (likelihoods.photons != p || likelihoods.modes != m) {
        throw Error(ErrorKind::kAlignment, "likelihoods were estimated for a different (p, m)");
    }

    VerdictTrace trace = start_trace(options.prior);
    std::vector<double> observed(kRStarHistogramBins, 0.0);
    std::string trace_csv = "event,pattern,r_star,posterior,log_odds\n";
    std::uint64_t above = 0;
    long long events_to_90 = -1;
    for (size_t i = 0; i < sequence.size(); i++) {
        double r = r_star(circuit.matrix, input, sequence[i]);
        trace = bayes_update(std::move(trace), likelihoods, r);
        above += r >= 1.0;
        if (events_to_90 < 0 && trace.current_posterior() >= 0.9) {
            events_to_90 = static_cast<long long>(i + 1);
        }
        int bin = std::clamp(static_cast<int>(r / kRStarHistogramBinWidth), 0, kRStarHistogramBins - 1);
        observed[static_cast<size_t>(bin)] += 1.0;
        trace_csv += std::to_string(i + 1) + "," + sequence[i].str() + "," + fmt_double(r) + "," +
                     fmt_double(trace.current_posterior()) + "," + fmt_double(trace.current_log_odds()) + "\n";
    }
    for (double &x : observed) {
        x /= static_cast<double>(sequence.size()) * kRStarHistogramBinWidth;
    }

    json report = {{"test", "rstar"},
                   {"p", p},
                   {"m", m},
                   {"n_events", sequence.size()},
                   {"likelihood_source", likelihood_origin},
                   {"likelihoods", io::likelihoods_to_json(likelihoods)},
                   {"fraction_r_star_above_1", static_cast<double>(above) / static_cast<double>(sequence.size())},
                   {"final_posterior", trace.current_posterior()},
                   {"final_log_odds", trace.current_log_odds()},
                   {"null_probability", trace.null_probability()},
                   {"events_to_90_percent", events_to_90},
                   {"trace", io::trace_to_json(trace)}};
    report["likelihoods"].erase("histogram_B");
    report["likelihoods"].erase("histogram_F");
    OutputSet out(config.out_dir);
    out.add("rstar_report.json", io::dump(report));
    out.add("rstar_trace.csv", trace_csv);
    out.add("rstar_histogram.csv", rstar_pdf_table(likelihoods, &observed));
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

RunManifest cmd_verify_bunching(const ExperimentConfig &config, const std::filesystem::path &events_path) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("verify bunching", config);
    auto events = io::load_events(events_path);
    require_nonempty(events, events_path);
    const int m = events.front().configuration.modes();
    const int p = events.front().configuration.photons();
    for (const auto &e : events) {
        if (e.configuration.photons() != p) {
            throw Error(ErrorKind::kAlignment, "events carry different photon numbers");
        }
    }
    Estimate observed = collision_free_fraction(events);
    BunchingProbabilities expected = bunching_probabilities(m, p);
    auto z = [&](double target) {
        return observed.standard_error > 0 ? (observed.value - target) / observed.standard_error : 0.0;
    };
    double dq = std::abs(observed.value - expected.quantum);
    double dc = std::abs(observed.value - expected.classical);
    json report = {{"test", "bunching"},
                   {"m", m},
                   {"p", p},
                   {"n_events", total_count(events)},
                   {"collision_free_fraction", observed.value},
                   {"standard_error", observed.standard_error},
                   {"expected_quantum", expected.quantum},
                   {"expected_classical", expected.classical},
                   {"z_quantum", z(expected.quantum)},
                   {"z_classical", z(expected.classical)},
                   {"closer_to", dq <= dc ? "quantum" : "classical"}};
    std::string table = "p,m,quantum,classical\n";
    for (int q = 1; q <= 10; q++) {
        BunchingProbabilities b = bunching_probabilities(q * q, q);
        table += std::to_string(q) + "," + std::to_string(q * q) + "," + fmt_double(b.quantum) + "," +
                 fmt_double(b.classical) + "\n";
    }
    OutputSet out(config.out_dir);
    out.add("bunching_report.json", io::dump(report));
    out.add("bunching_curve.csv", table);
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

RunManifest cmd_verify_clouding(const ExperimentConfig &config, const std::filesystem::path &quantum_events,
                                const std::filesystem::path &classical_events, int bootstrap_resamples) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("verify clouding", config);
    auto q = io::load_events(quantum_events);
    auto c = io::load_events(classical_events);
    require_nonempty(q, quantum_events);
    require_nonempty(c, classical_events);
    const int m = q.front().configuration.modes();
    if (c.front().configuration.modes() != m) {
        throw Error(ErrorKind::kAlignment, "quantum and classical events are over different mode counts");
    }
    CloudingResult cq = clouding_metric(q, m);
    CloudingResult cc = clouding_metric(c, m);
    Estimate delta = delta_c(q, c, m);
    std::uint64_t bseed = derive_seed(config.seed, kSeedPurposeBootstrap);
    double bq = bootstrap_error(q, Metric::kClouding, bootstrap_resamples, bseed);
    double bc = bootstrap_error(c, Metric::kClouding, bootstrap_resamples, bseed + 1);
    json report = {{"test", "clouding"},
                   {"m", m},
                   {"quantum", io::clouding_to_json(cq)},
                   {"classical", io::clouding_to_json(cc)},
                   {"quantum_bootstrap_error", bq},
                   {"classical_bootstrap_error", bc},
                   {"delta_C", delta.value},
                   {"delta_C_standard_error", delta.standard_error},
                   {"significance_sigma", delta.standard_error > 0 ? delta.value / delta.standard_error : 0.0}};
    std::string table = "model,C,standard_error,bootstrap_error,n_events\n";
    table += "quantum," + fmt_double(cq.C) + "," + fmt_double(cq.standard_error) + "," + fmt_double(bq) + "," +
             std::to_string(cq.n_events) + "\n";
    table += "classical," + fmt_double(cc.C) + "," + fmt_double(cc.standard_error) + "," + fmt_double(bc) + "," +
             std::to_string(cc.n_events) + "\n";
    OutputSet out(config.out_dir);
    out.add("clouding_report.json", io::dump(report));
    out.add("clouding.csv", table);
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

DistributionOrEvents load_distribution_or_events(const std::filesystem::path &path) {
    DistributionOrEvents out;
    if (path.extension() == ".json") {
        io::json j = io::read_json(path);
        if (j.is_object() && j.contains("probs")) {
            out.distribution = io::distribution_from_json(j);
            return out;
        }
        out.events = io::events_from_json(j);
        return out;
    }
    out.events = io::load_events(path);
    return out;
}

RunManifest cmd_verify_fidelity(const ExperimentConfig &config, const FidelityOptions &options) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("verify fidelity", config);
    DistributionOrEvents a = load_distribution_or_events(options.a);
    DistributionOrEvents b = load_distribution_or_events(options.b);

    std::vector<FockState> measured;
    for (const auto *side : {&a, &b}) {
        if (!side->distribution) {
            require_nonempty(side->events, side == &a ? options.a : options.b);
            auto pats = measured_patterns(side->events);
            measured.insert(measured.end(), pats.begin(), pats.end());
        }
    }
    std::sort(measured.begin(), measured.end(), CanonicalOrder{});
    measured.erase(std::unique(measured.begin(), measured.end()), measured.end());

    // Common configuration list: a distribution's list when one is present,
    // otherwise the full space of the events.
    std::vector<FockState> reference;
    if (a.distribution) {
        reference = a.distribution->configurations;
    } else if (b.distribution) {
        reference = b.distribution->configurations;
    } else {
        const FockState &first = a.events.front().configuration;
        reference = enumerate_configurations(first.modes(), first.photons());
    }
    if (options.filter_to_measured) {
        if (measured.empty()) {
            throw Error(ErrorKind::kConfiguration, "--filter-to-measured needs at least one event file");
        }
        reference = measured;
    }
    auto aligned = [&](const DistributionOrEvents &side) {
        if (side.distribution) {
            return options.filter_to_measured ? filter_renormalize(*side.distribution, reference) : *side.distribution;
        }
        return empirical_distribution(side.events, reference);
    };
    OutcomeDistribution da = aligned(a);
    OutcomeDistribution db = aligned(b);
    double f = statistical_fidelity(da, db);
    json report = {{"test", "fidelity"},
                   {"fidelity", f},
                   {"n_configurations", da.size()},
                   {"filtered_to_measured", options.filter_to_measured},
                   {"a", options.a.string()},
                   {"b", options.b.string()}};
    OutputSet out(config.out_dir);
    out.add("fidelity_report.json", io::dump(report));
    std::string table = "pattern,a,b\n";
    for (size_t k = 0; k < da.size(); k++) {
        table += da.configurations[k].str() + "," + fmt_double(da.probabilities[k]) + "," +
                 fmt_double(db.probabilities[k]) + "\n";
    }
    out.add("fidelity_table.csv", table);
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

RunManifest cmd_sift4(const ExperimentConfig &config, const SiftOptions &options) {
    auto start = Clock::now();
    RunManifest manifest = start_manifest("sift4", config);
    Circuit circuit = build_circuit(config);
    note_circuit(manifest, circuit);
    const int m = static_cast<int>(circuit.matrix.rows());
    auto load = [&](const std::filesystem::path &path) {
        DistributionOrEvents d = load_distribution_or_events(path);
        if (d.distribution) {
            return *d.distribution;
        }
        require_nonempty(d.events, path);
        return empirical_distribution(d.events, m, 4);
    };
    OutcomeDistribution mix = load(options.mix);
    OutcomeDistribution d2200 = load(options.d2200);
    OutcomeDistribution d0022 = load(options.d0022);
    OutcomeDistribution sifted = sift_four_photon(circuit.matrix, mix, d2200, d0022);
    json report = {{"test", "sift4"}, {"m", m}, {"retained_mass", sifted.raw_total}};
    if (config.inputs.size() == 1) {
        OutcomeDistribution truth = full_distribution(circuit.matrix, config.inputs.front(), Model::quantum(),
                                                      config.threads);
        report["fidelity_to_input_theory"] = statistical_fidelity(sifted, truth);
    }
    OutputSet out(config.out_dir);
    out.add("sifted.json", io::dump(io::distribution_to_json(sifted)));
    out.add("sift_report.json", io::dump(report));
    manifest.wall_seconds = seconds_since(start);
    return out.commit(std::move(manifest));
}

}  // namespace bosonic::harness
