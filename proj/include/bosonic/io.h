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

#ifndef BOSONIC_IO_H
#define BOSONIC_IO_H

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosonic/circuitry.h"
#include "bosonic/distributions.h"
#include "bosonic/fock.h"
#include "bosonic/matrix.h"
#include "bosonic/verification.h"

namespace bosonic::io {

using nlohmann::json;

// Matrices: {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

/// A matrix read from disk. Non-unitary matrices (e.g. reconstructed by
/// tomography) are accepted and flagged.
struct LoadedMatrix {
    ComplexMatrix matrix;
    double unitarity_deviation = 0.0;
    bool unitary = true;
};
LoadedMatrix load_matrix(const std::filesystem::path &path);

// {"modes": m, "coupling": c, "time": t, "onsite_phases": [...]}
json qw_spec_to_json(const QwSpec &spec);
QwSpec qw_spec_from_json(const json &j);

// {"modes": m, "occupations": [...]}, or a bare occupation array.
json fock_to_json(const FockState &state);
FockState fock_from_json(const json &j);

// {"m", "p", "model", "configs", "probs"} plus optional "input", "raw_total",
// "samples". Doubles are written in shortest round-trip form.
json distribution_to_json(const OutcomeDistribution &dist);
OutcomeDistribution distribution_from_json(const json &j);

// Event tallies. CSV has the header "pattern,count"; the JSON analogue is
// {"events": [{"pattern": [...], "count": n}, ...]}.
std::string events_to_csv(const std::vector<EventRecord> &events);
std::vector<EventRecord> events_from_csv(const std::string &text);
json events_to_json(const std::vector<EventRecord> &events);
std::vector<EventRecord> events_from_json(const json &j);
/// Chooses the format from the extension (.json, otherwise CSV).
std::vector<EventRecord> load_events(const std::filesystem::path &path);

json likelihoods_to_json(const RStarLikelihoods &l);
RStarLikelihoods likelihoods_from_json(const json &j);

json trace_to_json(const VerdictTrace &trace);
json clouding_to_json(const CloudingResult &c);

std::string read_file(const std::filesystem::path &path);
json read_json(const std::filesystem::path &path);

/// Writes through a sibling temporary file and renames it into place, so a
/// failure never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

/// Pretty JSON with a trailing newline.
std::string dump(const json &j);

std::string sha256_hex(const std::string &bytes);

}  // namespace bosonic::io

#endif
