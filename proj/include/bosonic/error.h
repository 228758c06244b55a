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

#ifndef BOSONIC_ERROR_H
#define BOSONIC_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace bosonic {

enum class ErrorKind {
    kInvalidDimension,
    kConfiguration,
    kSizeLimit,
    kDomain,
    kCapacity,
    kFilter,
    kInconsistentInputs,
    kData,
    kAlignment,
    kParse,
    kIo,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit code.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace bosonic

#endif
