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

#include "bosonic/fock.h"

#include <limits>
#include <numeric>
#include <sstream>

#include "bosonic/error.h"

namespace bosonic {

FockState::FockState(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    if (occupations_.empty()) {
        throw Error(ErrorKind::kInvalidDimension, "a Fock state needs at least one mode");
    }
    for (int t : occupations_) {
        if (t < 0) {
            throw Error(ErrorKind::kConfiguration, "negative occupation in Fock state");
        }
    }
    photons_ = std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

FockState FockState::from_modes(int modes, const std::vector<int> &photon_modes) {
    if (modes < 1) {
        throw Error(ErrorKind::kInvalidDimension, "mode count must be at least 1");
    }
    std::vector<int> occ(static_cast<size_t>(modes), 0);
    for (int k : photon_modes) {
        if (k < 0 || k >= modes) {
            throw Error(ErrorKind::kConfiguration,
                        "photon mode " + std::to_string(k) + " outside [0, " + std::to_string(modes) + ")");
        }
        occ[static_cast<size_t>(k)]++;
    }
    return FockState(std::move(occ));
}

FockState FockState::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<int> occ;
    std::string token;
    while (in >> token) {
        size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size()) {
            throw Error(ErrorKind::kParse, "bad occupation '" + token + "'");
        }
        occ.push_back(value);
    }
    if (occ.empty()) {
        throw Error(ErrorKind::kParse, "empty occupation pattern");
    }
    return FockState(std::move(occ));
}

std::vector<int> FockState::photon_modes() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(photons_));
    for (int j = 0; j < modes(); j++) {
        for (int k = 0; k < occupations_[static_cast<size_t>(j)]; k++) {
            out.push_back(j);
        }
    }
    return out;
}

bool FockState::is_collision_free() const noexcept {
    for (int t : occupations_) {
        if (t > 1) {
            return false;
        }
    }
    return true;
}

double FockState::factorial_product() const noexcept {
    double result = 1.0;
    for (int t : occupations_) {
        for (int k = 2; k <= t; k++) {
            result *= k;
        }
    }
    return result;
}

std::string FockState::str() const {
    std::string out;
    for (size_t j = 0; j < occupations_.size(); j++) {
        if (j) {
            out += ' ';
        }
        out += std::to_string(occupations_[j]);
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; i++) {
        // result * (n - k + i) / i is exact; split through the gcd to delay overflow.
        std::uint64_t num = n - k + i;
        std::uint64_t g = std::gcd(result, i);
        std::uint64_t r = result / g;
        std::uint64_t d = i / g;
        num /= d;
        if (r > kMax / num) {
            return kMax;
        }
        result = r * num;
    }
    return result;
}

std::uint64_t configuration_count(int modes, int photons) {
    if (modes < 1 || photons < 0) {
        return 0;
    }
    return binomial(static_cast<std::uint64_t>(modes + photons - 1), static_cast<std::uint64_t>(photons));
}

std::uint64_t canonical_index(const FockState &state) {
    // Patterns preceding `state` are those that agree on a prefix and then
    // place more photons in the next mode.
    std::uint64_t index = 0;
    int remaining = state.photons();
    for (int j = 0; j + 1 < state.modes(); j++) {
        int rest_modes = state.modes() - j - 1;
        for (int w = remaining; w > state[j]; w--) {
            index += configuration_count(rest_modes, remaining - w);
        }
        remaining -= state[j];
    }
    return index;
}

}  // namespace bosonic
