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

#ifndef BOSONIC_RNG_H
#define BOSONIC_RNG_H

#include <cstdint>
#include <random>

namespace bosonic {

using Engine = std::mt19937_64;

/// Engine for one independent stream of a seeded computation. Streams let
/// workers draw from disjoint sequences while results stay independent of
/// how work is split across threads.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    return Engine(seq);
}

/// Uniform double in [0, 1) built from the top 53 bits of one engine output,
/// so draws are identical across standard library implementations.
inline double uniform01(Engine &engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace bosonic

#endif
