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

// Command-line front end. Global flags may appear before or after the
// subcommand; values given on the command line override --config.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bosonic/error.h"
#include "bosonic/harness.h"
#include "bosonic/io.h"

using namespace bosonic;
using namespace bosonic::harness;

namespace {

std::vector<double> parse_numbers(const std::string &text) {
    std::istringstream in(text);
    std::vector<double> out;
    double x;
    while (in >> x) {
        out.push_back(x);
    }
    if (!in.eof()) {
        throw Error(ErrorKind::kParse, "cannot read numbers from '" + text + "'");
    }
    return out;
}

struct Flags {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string config_file;

    int haar = 0;
    std::uint64_t haar_seed = 0;
    int qw = 0;
    double coupling = 1.0;
    double time = kDefaultQwCouplingTime;
    std::string phases;
    std::string matrix;
    std::vector<std::string> inputs;
    std::vector<std::string> photons_at;
    std::string weights;
    std::string model = "quantum";
    double lambda = 1.0;
    std::uint64_t samples = 1;
};

ExperimentConfig build_config(const CLI::App &app, const Flags &f) {
    ExperimentConfig config;
    if (!f.config_file.empty()) {
        config.merge_json(io::read_json(f.config_file));
    }
    auto given = [&](const char *name) { return app.count(name) > 0; };
    if (given("--seed")) {
        config.seed = f.seed;
    }
    if (given("--threads")) {
        config.threads = f.threads;
    }
    if (given("--out")) {
        config.out_dir = f.out;
    }
    int sources = static_cast<int>(given("--haar")) + static_cast<int>(given("--qw")) +
                  static_cast<int>(given("--matrix"));
    if (sources > 1) {
        throw Error(ErrorKind::kConfiguration, "give only one of --haar, --qw, --matrix");
    }
    if (given("--haar")) {
        HaarSource h{f.haar, std::nullopt};
        if (given("--haar-seed")) {
            h.seed = f.haar_seed;
        }
        config.circuit = h;
    } else if (given("--qw")) {
        QwSpec spec;
        spec.modes = f.qw;
        spec.coupling = f.coupling;
        spec.time = f.time;
        if (!f.phases.empty()) {
            spec.onsite_phases = parse_numbers(f.phases);
        }
        config.circuit = spec;
    } else if (given("--matrix")) {
        config.circuit = MatrixFileSource{f.matrix};
    }
    if (given("--input") || given("--photons-at")) {
        config.inputs.clear();
        for (const auto &text : f.inputs) {
            config.inputs.push_back(FockState::parse(text));
        }
        for (const auto &text : f.photons_at) {
            int modes = 0;
            if (const auto *h = std::get_if<HaarSource>(&config.circuit)) {
                modes = h->modes;
            } else if (const auto *q = std::get_if<QwSpec>(&config.circuit)) {
                modes = q->modes;
            } else {
                throw Error(ErrorKind::kConfiguration, "--photons-at needs --haar or --qw to fix the mode count");
            }
            std::vector<int> modes_list;
            for (double x : parse_numbers(text)) {
                modes_list.push_back(static_cast<int>(x) - 1);
            }
            config.inputs.push_back(FockState::from_modes(modes, modes_list));
        }
    }
    if (given("--weights")) {
        config.input_weights = parse_numbers(f.weights);
    }
    if (given("--model") || given("--lambda")) {
        if (f.model == "mixed") {
            config.model = Model::mixed(f.lambda);
        } else {
            config.model = Model::parse(f.model);
        }
    }
    if (given("--samples")) {
        config.samples = f.samples;
    }
    return config;
}

void report(const RunManifest &manifest, const ExperimentConfig &config) {
    for (const auto &w : manifest.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    for (const auto &file : manifest.files) {
        std::cout << (config.out_dir / file.name).string() << "  sha256:" << file.sha256 << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Boson-sampling simulation and verification toolkit"};
    app.require_subcommand(1);
    Flags f;

    app.add_option("--seed", f.seed, "Experiment seed; all randomness derives from it");
    app.add_option("--threads", f.threads, "Worker threads (0 = all cores)");
    app.add_option("--out", f.out, "Output directory");
    app.add_option("--config", f.config_file, "JSON config file");
    app.add_option("--haar", f.haar, "Haar-random circuit on M modes");
    app.add_option("--haar-seed", f.haar_seed, "Seed for the Haar circuit (default: derived from --seed)");
    app.add_option("--qw", f.qw, "Quantum-walk circuit on M waveguides");
    app.add_option("--coupling", f.coupling, "Quantum-walk coupling c");
    app.add_option("--time", f.time, "Quantum-walk propagation time t");
    app.add_option("--phases", f.phases, "Quantum-walk onsite phases, space separated");
    app.add_option("--matrix", f.matrix, "Circuit matrix JSON file");
    app.add_option("--input", f.inputs, "Input occupations, e.g. \"1 1 1 0 0\" (repeat for a mixture)");
    app.add_option("--photons-at", f.photons_at, "Input as 1-based waveguide list, e.g. \"10 11 12\"");
    app.add_option("--weights", f.weights, "Mixture weights for repeated inputs");
    app.add_option("--model", f.model, "quantum | classical | mixed");
    app.add_option("--lambda", f.lambda, "Quantum weight for --model mixed");
    app.add_option("--samples", f.samples, "Number of sampled events");

    auto *simulate = app.add_subcommand("simulate", "Exact output distribution")->fallthrough();
    auto *sample = app.add_subcommand("sample", "Sampled detection events")->fallthrough();

    auto *verify = app.add_subcommand("verify", "Verification tests")->fallthrough();
    verify->require_subcommand(1);
    RStarVerifyOptions rstar_opts;
    std::string likelihoods = "auto";
    auto *rstar = verify->add_subcommand("rstar", "Row-norm discriminator with Bayesian updating")->fallthrough();
    rstar->add_option("--events", rstar_opts.events, "Event file (CSV or JSON)")->required();
    rstar->add_option("--likelihoods", likelihoods, "auto | reference | calibrate | FILE");
    rstar->add_option("--ensemble", rstar_opts.likelihoods.ensemble_size, "Haar unitaries for calibration");
    rstar->add_option("--samples-per-unitary", rstar_opts.likelihoods.samples_per_unitary);
    rstar->add_option("--prior", rstar_opts.prior, "Prior probability of boson sampling");
    rstar->add_flag("--keep-order", rstar_opts.keep_order, "Process events in file order");

    std::string bunching_events;
    auto *bunching = verify->add_subcommand("bunching", "Collision-free fraction test")->fallthrough();
    bunching->add_option("--events", bunching_events)->required();

    std::string cloud_q, cloud_c;
    int bootstrap = 1000;
    auto *clouding = verify->add_subcommand("clouding", "Bosonic clouding metric")->fallthrough();
    clouding->add_option("--quantum", cloud_q, "Indistinguishable-photon events")->required();
    clouding->add_option("--classical", cloud_c, "Distinguishable-photon events")->required();
    clouding->add_option("--bootstrap", bootstrap, "Bootstrap resamples");

    FidelityOptions fid_opts;
    auto *fidelity = verify->add_subcommand("fidelity", "Statistical fidelity")->fallthrough();
    fidelity->add_option("--a", fid_opts.a, "Distribution JSON or event file")->required();
    fidelity->add_option("--b", fid_opts.b, "Distribution JSON or event file")->required();
    fidelity->add_flag("--filter-to-measured", fid_opts.filter_to_measured);

    CalibrateOptions cal_opts;
    std::string cache_dir;
    auto *calibrate = app.add_subcommand("calibrate-likelihoods", "Estimate R* threshold likelihoods")->fallthrough();
    calibrate->add_option("--photons", cal_opts.photons);
    calibrate->add_option("--modes", cal_opts.modes);
    calibrate->add_option("--unitaries", cal_opts.unitaries);
    calibrate->add_option("--samples-per-unitary", cal_opts.samples_per_unitary);
    calibrate->add_option("--cache-dir", cache_dir);

    SiftOptions sift_opts;
    auto *sift = app.add_subcommand("sift4", "Recover |1111> statistics from mixture data")->fallthrough();
    sift->add_option("--mix", sift_opts.mix)->required();
    sift->add_option("--d2200", sift_opts.d2200)->required();
    sift->add_option("--d0022", sift_opts.d0022)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        ExperimentConfig config = build_config(app, f);
        if (config.threads == 0) {
            config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        }
        RunManifest manifest;
        if (*simulate) {
            manifest = cmd_simulate(config);
        } else if (*sample) {
            manifest = cmd_sample(config);
        } else if (*rstar) {
            if (likelihoods == "reference") {
                rstar_opts.likelihoods.kind = LikelihoodSource::Kind::kReference;
            } else if (likelihoods == "calibrate") {
                rstar_opts.likelihoods.kind = LikelihoodSource::Kind::kCalibrate;
            } else if (likelihoods != "auto") {
                rstar_opts.likelihoods.kind = LikelihoodSource::Kind::kFile;
                rstar_opts.likelihoods.file = likelihoods;
            }
            manifest = cmd_verify_rstar(config, rstar_opts);
        } else if (*bunching) {
            manifest = cmd_verify_bunching(config, bunching_events);
        } else if (*clouding) {
            manifest = cmd_verify_clouding(config, cloud_q, cloud_c, bootstrap);
        } else if (*fidelity) {
            manifest = cmd_verify_fidelity(config, fid_opts);
        } else if (*calibrate) {
            if (!cache_dir.empty()) {
                cal_opts.cache_dir = cache_dir;
            }
            manifest = cmd_calibrate_likelihoods(config, cal_opts);
        } else if (*sift) {
            manifest = cmd_sift4(config, sift_opts);
        }
        report(manifest, config);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
