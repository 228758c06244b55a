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

#include "bosonic/matrix.h"

#include <limits>

#include "bosonic/error.h"

namespace bosonic {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kInvalidDimension:
            return "invalid-dimension";
        case ErrorKind::kConfiguration:
            return "configuration";
        case ErrorKind::kSizeLimit:
            return "size-limit";
        case ErrorKind::kDomain:
            return "domain";
        case ErrorKind::kCapacity:
            return "capacity";
        case ErrorKind::kFilter:
            return "filter";
        case ErrorKind::kInconsistentInputs:
            return "inconsistent-inputs";
        case ErrorKind::kData:
            return "data";
        case ErrorKind::kAlignment:
            return "alignment";
        case ErrorKind::kParse:
            return "parse";
        case ErrorKind::kIo:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + " error: " + message), kind_(kind) {
}

double unitarity_deviation(const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    ComplexMatrix g = u * u.adjoint();
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

RealMatrix abs_squared(const ComplexMatrix &m) {
    return m.cwiseAbs2();
}

}  // namespace bosonic
