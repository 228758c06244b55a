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

#ifndef BOSONIC_FOCK_H
#define BOSONIC_FOCK_H

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bosonic {

/// Occupation-number pattern of photons over optical modes. Used both for
/// circuit inputs and for detection patterns.
class FockState {
   public:
    FockState() = default;
    explicit FockState(std::vector<int> occupations);

    /// Pattern with one photon in each listed mode (0-based, repeats allowed).
    static FockState from_modes(int modes, const std::vector<int> &photon_modes);

    /// Parses whitespace-separated occupations, e.g. "0 1 0 2".
    static FockState parse(std::string_view text);

    int modes() const noexcept {
        return static_cast<int>(occupations_.size());
    }
    int photons() const noexcept {
        return photons_;
    }
    int operator[](int mode) const {
        return occupations_[static_cast<size_t>(mode)];
    }
    const std::vector<int> &occupations() const noexcept {
        return occupations_;
    }

    /// Mode index of every photon, ascending, each mode repeated by its occupation.
    std::vector<int> photon_modes() const;

    bool is_collision_free() const noexcept;

    /// prod_j t_j!
    double factorial_product() const noexcept;

    std::string str() const;

    friend bool operator==(const FockState &, const FockState &) = default;
    friend std::strong_ordering operator<=>(const FockState &a, const FockState &b) {
        return a.occupations_ <=> b.occupations_;
    }

   private:
    std::vector<int> occupations_;
    int photons_ = 0;
};

using InputConfiguration = FockState;
using OutputConfiguration = FockState;

/// Canonical enumeration order: descending lexicographic on occupations, so
/// the pattern with every photon in mode 0 comes first.
struct CanonicalOrder {
    bool operator()(const FockState &a, const FockState &b) const {
        return a.occupations() > b.occupations();
    }
};

/// Exact C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Number of occupation patterns of p photons over m modes: C(m+p-1, p).
std::uint64_t configuration_count(int modes, int photons);

/// Position of `state` in the canonical enumeration of its (m, p) space.
std::uint64_t canonical_index(const FockState &state);

}  // namespace bosonic

#endif
