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

#include "bosonic/io.h"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "bosonic/error.h"

namespace bosonic::io {

namespace {

[[noreturn]] void parse_fail(const std::string &what) {
    throw Error(ErrorKind::kParse, what);
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        parse_fail(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get_as(const json &j, const char *key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception &e) {
        parse_fail(std::string("field '") + key + "': " + e.what());
    }
}

std::string trim(std::string s) {
    const char *ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    std::vector<double> re, im;
    re.reserve(static_cast<size_t>(m.size()));
    im.reserve(static_cast<size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json &j) {
    auto rows = get_as<long long>(j, "rows");
    auto cols = get_as<long long>(j, "cols");
    auto re = get_as<std::vector<double>>(j, "re");
    auto im = get_as<std::vector<double>>(j, "im");
    if (rows < 1 || cols < 1) {
        throw Error(ErrorKind::kInvalidDimension, "matrix needs at least one row and column");
    }
    const auto n = static_cast<size_t>(rows * cols);
    if (re.size() != n || im.size() != n) {
        throw Error(ErrorKind::kParse, "matrix entry arrays must hold rows*cols values");
    }
    ComplexMatrix m(rows, cols);
    for (long long i = 0; i < rows; i++) {
        for (long long k = 0; k < cols; k++) {
            auto idx = static_cast<size_t>(i * cols + k);
            m(i, k) = Complex(re[idx], im[idx]);
        }
    }
    return m;
}

LoadedMatrix load_matrix(const std::filesystem::path &path) {
    LoadedMatrix loaded;
    loaded.matrix = matrix_from_json(read_json(path));
    loaded.unitarity_deviation = unitarity_deviation(loaded.matrix);
    loaded.unitary = loaded.unitarity_deviation <= kUnitarityTolerance;
    return loaded;
}

json qw_spec_to_json(const QwSpec &spec) {
    std::vector<double> phases = spec.onsite_phases;
    if (phases.empty()) {
        phases.assign(static_cast<size_t>(spec.modes), 0.0);
    }
    return {{"modes", spec.modes}, {"coupling", spec.coupling}, {"time", spec.time}, {"onsite_phases", phases}};
}

QwSpec qw_spec_from_json(const json &j) {
    QwSpec spec;
    spec.modes = get_as<int>(j, "modes");
    if (j.contains("coupling")) {
        spec.coupling = get_as<double>(j, "coupling");
    }
    if (j.contains("time")) {
        spec.time = get_as<double>(j, "time");
    }
    if (j.contains("onsite_phases")) {
        spec.onsite_phases = get_as<std::vector<double>>(j, "onsite_phases");
    }
    spec.validate();
    return spec;
}

json fock_to_json(const FockState &state) {
    return {{"modes", state.modes()}, {"occupations", state.occupations()}};
}

FockState fock_from_json(const json &j) {
    try {
        if (j.is_array()) {
            return FockState(j.get<std::vector<int>>());
        }
        auto occ = get_as<std::vector<int>>(j, "occupations");
        if (j.contains("modes") && get_as<int>(j, "modes") != static_cast<int>(occ.size())) {
            parse_fail("'modes' disagrees with the occupation vector length");
        }
        return FockState(std::move(occ));
    } catch (const json::exception &e) {
        parse_fail(std::string("Fock state: ") + e.what());
    }
}

json distribution_to_json(const OutcomeDistribution &dist) {
    json configs = json::array();
    for (const auto &c : dist.configurations) {
        configs.push_back(c.occupations());
    }
    json j = {{"m", dist.modes},        {"p", dist.photons},       {"model", dist.model.tag()},
              {"configs", configs},     {"probs", dist.probabilities}, {"raw_total", dist.raw_total},
              {"samples", dist.sample_count}};
    if (dist.input) {
        j["input"] = dist.input->occupations();
    }
    return j;
}

OutcomeDistribution distribution_from_json(const json &j) {
    OutcomeDistribution dist;
    dist.modes = get_as<int>(j, "m");
    dist.photons = get_as<int>(j, "p");
    dist.model = Model::parse(get_as<std::string>(j, "model"));
    auto configs = get_as<std::vector<std::vector<int>>>(j, "configs");
    dist.probabilities = get_as<std::vector<double>>(j, "probs");
    if (configs.size() != dist.probabilities.size()) {
        parse_fail("'configs' and 'probs' differ in length");
    }
    dist.configurations.reserve(configs.size());
    for (size_t k = 0; k < configs.size(); k++) {
        FockState c(std::move(configs[k]));
        if (c.modes() != dist.modes || c.photons() != dist.photons) {
            parse_fail("configuration " + std::to_string(k) + " is not a " + std::to_string(dist.photons) +
                       "-photon pattern over " + std::to_string(dist.modes) + " modes");
        }
        if (!dist.configurations.empty() && !CanonicalOrder{}(dist.configurations.back(), c)) {
            parse_fail("configuration " + std::to_string(k) + " breaks canonical order");
        }
        dist.configurations.push_back(std::move(c));
    }
    if (j.contains("raw_total")) {
        dist.raw_total = get_as<double>(j, "raw_total");
    }
    if (j.contains("samples")) {
        dist.sample_count = get_as<std::uint64_t>(j, "samples");
    }
    if (j.contains("input")) {
        dist.input = FockState(get_as<std::vector<int>>(j, "input"));
    }
    return dist;
}

std::string events_to_csv(const std::vector<EventRecord> &events) {
    std::string out = "pattern,count\n";
    for (const auto &e : events) {
        out += e.configuration.str();
        out += ',';
        out += std::to_string(e.count);
        out += '\n';
    }
    return out;
}

std::vector<EventRecord> events_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<EventRecord> events;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != "pattern,count") {
                parse_fail("line " + std::to_string(line_no) + ": expected header 'pattern,count'");
            }
            header_seen = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            parse_fail("line " + std::to_string(line_no) + ": expected 'pattern,count'");
        }
        try {
            FockState config = FockState::parse(line.substr(0, comma));
            std::string count_text = trim(line.substr(comma + 1));
            size_t used = 0;
            long long count = std::stoll(count_text, &used);
            if (used != count_text.size() || count < 0) {
                parse_fail("bad count");
            }
            if (!events.empty() && config.modes() != events.front().configuration.modes()) {
                parse_fail("mode count differs from earlier rows");
            }
            events.push_back({std::move(config), static_cast<std::uint64_t>(count)});
        } catch (const std::exception &e) {
            parse_fail("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) {
        parse_fail("event file has no header");
    }
    return events;
}

json events_to_json(const std::vector<EventRecord> &events) {
    json arr = json::array();
    for (const auto &e : events) {
        arr.push_back({{"pattern", e.configuration.occupations()}, {"count", e.count}});
    }
    return {{"events", arr}};
}

std::vector<EventRecord> events_from_json(const json &j) {
    std::vector<EventRecord> events;
    const json &arr = field(j, "events");
    if (!arr.is_array()) {
        parse_fail("'events' must be an array");
    }
    for (size_t k = 0; k < arr.size(); k++) {
        try {
            events.push_back({FockState(get_as<std::vector<int>>(arr[k], "pattern")),
                              get_as<std::uint64_t>(arr[k], "count")});
        } catch (const Error &e) {
            parse_fail("event " + std::to_string(k) + ": " + e.what());
        }
    }
    return events;
}

std::vector<EventRecord> load_events(const std::filesystem::path &path) {
    if (path.extension() == ".json") {
        return events_from_json(read_json(path));
    }
    try {
        return events_from_csv(read_file(path));
    } catch (const Error &e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

json likelihoods_to_json(const RStarLikelihoods &l) {
    return {{"p", l.photons},
            {"m", l.modes},
            {"ensemble_size", l.ensemble_size},
            {"samples_per_unitary", l.samples_per_unitary},
            {"seed", l.seed},
            {"p_gt1_given_B", l.p_gt1_given_B},
            {"p_lt1_given_B", l.p_lt1_given_B},
            {"p_gt1_given_F", l.p_gt1_given_F},
            {"p_lt1_given_F", l.p_lt1_given_F},
            {"stderr_B", l.stderr_B},
            {"stderr_F", l.stderr_F},
            {"histogram_bin_width", kRStarHistogramBinWidth},
            {"histogram_B", l.histogram_B},
            {"histogram_F", l.histogram_F}};
}

RStarLikelihoods likelihoods_from_json(const json &j) {
    RStarLikelihoods l;
    l.photons = get_as<int>(j, "p");
    l.modes = get_as<int>(j, "m");
    l.ensemble_size = get_as<std::uint64_t>(j, "ensemble_size");
    l.p_gt1_given_B = get_as<double>(j, "p_gt1_given_B");
    l.p_lt1_given_B = get_as<double>(j, "p_lt1_given_B");
    l.p_gt1_given_F = get_as<double>(j, "p_gt1_given_F");
    l.p_lt1_given_F = get_as<double>(j, "p_lt1_given_F");
    if (j.contains("samples_per_unitary")) {
        l.samples_per_unitary = get_as<std::uint64_t>(j, "samples_per_unitary");
    }
    if (j.contains("seed")) {
        l.seed = get_as<std::uint64_t>(j, "seed");
    }
    if (j.contains("stderr_B")) {
        l.stderr_B = get_as<double>(j, "stderr_B");
        l.stderr_F = get_as<double>(j, "stderr_F");
    }
    if (j.contains("histogram_B")) {
        l.histogram_B = get_as<std::vector<double>>(j, "histogram_B");
        l.histogram_F = get_as<std::vector<double>>(j, "histogram_F");
    }
    l.validate();
    return l;
}

json trace_to_json(const VerdictTrace &trace) {
    return {{"prior", trace.prior},
            {"hypotheses", {"B", "F"}},
            {"posteriors", trace.posteriors},
            {"log_odds", trace.log_odds},
            {"null_probability", trace.null_probability()}};
}

json clouding_to_json(const CloudingResult &c) {
    return {{"C", c.C},
            {"standard_error", c.standard_error},
            {"n_events", c.n_events},
            {"halves_boundary", c.halves_boundary}};
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json(const std::filesystem::path &path) {
    std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        parse_fail(path.string() + ": " + e.what());
    }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::kIo, "cannot write '" + tmp.string() + "'");
        }
        out << contents;
        out.flush();
        if (!out) {
            throw Error(ErrorKind::kIo, "write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::kIo, "cannot move output into '" + path.string() + "'");
    }
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

std::string sha256_hex(const std::string &bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::kIo, "SHA-256 digest failed");
    }
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; i++) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

}  // namespace bosonic::io
