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

#ifndef BOSONIC_HARNESS_H
#define BOSONIC_HARNESS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosonic/circuitry.h"
#include "bosonic/distributions.h"
#include "bosonic/error.h"
#include "bosonic/fock.h"
#include "bosonic/verification.h"

namespace bosonic::harness {

using nlohmann::json;

inline constexpr const char *kVersion = "bosonic-verify 1.0.0";
inline constexpr const char *kCacheEnvVar = "BOSONIC_VERIFY_CACHE";

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitValidation = 2,
    kExitCapacity = 3,
    kExitIo = 4,
};
int exit_code_for(ErrorKind kind);

struct HaarSource {
    int modes = 0;
    /// Unset means derived from the experiment seed.
    std::optional<std::uint64_t> seed;
};
struct MatrixFileSource {
    std::filesystem::path path;
};
using CircuitSource = std::variant<std::monostate, HaarSource, QwSpec, MatrixFileSource>;

struct ExperimentConfig {
    CircuitSource circuit;
    /// More than one input means an incoherent mixture with `input_weights`
    /// (equal weights when empty).
    std::vector<FockState> inputs;
    std::vector<double> input_weights;
    Model model = Model::quantum();
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    std::filesystem::path out_dir = ".";
    int threads = 1;

    /// Throws kConfiguration unless exactly one circuit source is set and
    /// samples >= 1.
    void validate() const;
    json to_json() const;
    /// Fields present in `j` override those already in `*this`.
    void merge_json(const json &j);
};

/// Independent sub-seed for one purpose (circuit draw, sampling, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose);

inline constexpr std::uint64_t kSeedPurposeCircuit = 1;
inline constexpr std::uint64_t kSeedPurposeSampling = 2;
inline constexpr std::uint64_t kSeedPurposeShuffle = 3;
inline constexpr std::uint64_t kSeedPurposeBootstrap = 4;

struct Circuit {
    ComplexMatrix matrix;
    double unitarity_deviation = 0.0;
    bool unitary = true;
};
Circuit build_circuit(const ExperimentConfig &config);

/// Distribution for the configured input(s), circuit and model.
OutcomeDistribution configured_distribution(const ExperimentConfig &config, const Circuit &circuit);

struct ManifestFile {
    std::string name;
    std::string sha256;
};

struct RunManifest {
    std::string command;
    json config;
    std::string version = kVersion;
    double wall_seconds = 0.0;
    std::vector<ManifestFile> files;
    std::vector<std::string> warnings;

    json to_json() const;
};

/// Collects outputs in memory and commits them atomically at the end, so a
/// failing command writes nothing.
class OutputSet {
   public:
    explicit OutputSet(std::filesystem::path dir);
    void add(const std::string &name, std::string contents);
    /// Writes every file, then manifest.json listing their hashes.
    RunManifest commit(RunManifest manifest) const;

   private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

RunManifest cmd_simulate(const ExperimentConfig &config);
RunManifest cmd_sample(const ExperimentConfig &config);

/// Where R* threshold likelihoods come from.
struct LikelihoodSource {
    enum class Kind { kAuto, kReference, kFile, kCalibrate };
    Kind kind = Kind::kAuto;
    std::filesystem::path file;
    std::uint64_t ensemble_size = 10000;
    std::uint64_t samples_per_unitary = 100;
};

struct RStarVerifyOptions {
    std::filesystem::path events;
    LikelihoodSource likelihoods;
    double prior = 0.5;
    /// Events are expanded in file order and then shuffled with the
    /// experiment seed unless this is set.
    bool keep_order = false;
};
RunManifest cmd_verify_rstar(const ExperimentConfig &config, const RStarVerifyOptions &options);

RunManifest cmd_verify_bunching(const ExperimentConfig &config, const std::filesystem::path &events);

RunManifest cmd_verify_clouding(const ExperimentConfig &config, const std::filesystem::path &quantum_events,
                                const std::filesystem::path &classical_events, int bootstrap_resamples = 1000);

struct FidelityOptions {
    std::filesystem::path a;
    std::filesystem::path b;
    /// Restrict the distributions to patterns present in the event file(s).
    bool filter_to_measured = false;
};
RunManifest cmd_verify_fidelity(const ExperimentConfig &config, const FidelityOptions &options);

struct CalibrateOptions {
    int photons = 3;
    int modes = 9;
    std::uint64_t unitaries = 10000;
    std::uint64_t samples_per_unitary = 100;
    /// Defaults to $BOSONIC_VERIFY_CACHE, then <out>/cache.
    std::optional<std::filesystem::path> cache_dir;
};
RunManifest cmd_calibrate_likelihoods(const ExperimentConfig &config, const CalibrateOptions &options);

/// Cache file for one (p, m, ensemble size, seed) key.
std::filesystem::path likelihood_cache_path(const std::filesystem::path &cache_dir, int photons, int modes,
                                            std::uint64_t ensemble_size, std::uint64_t seed);
std::filesystem::path default_cache_dir(const ExperimentConfig &config);

/// Loads cached likelihoods or estimates and caches them.
RStarLikelihoods cached_likelihoods(const std::filesystem::path &cache_dir, int photons, int modes,
                                    std::uint64_t ensemble_size, std::uint64_t samples_per_unitary,
                                    std::uint64_t seed, int threads);

struct SiftOptions {
    std::filesystem::path mix;
    std::filesystem::path d2200;
    std::filesystem::path d0022;
};
RunManifest cmd_sift4(const ExperimentConfig &config, const SiftOptions &options);

/// A file holding either a distribution (JSON with "probs") or events.
struct DistributionOrEvents {
    std::optional<OutcomeDistribution> distribution;
    std::vector<EventRecord> events;
};
DistributionOrEvents load_distribution_or_events(const std::filesystem::path &path);

}  // namespace bosonic::harness

#endif
