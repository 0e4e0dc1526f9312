// Copyright 2026 The sot Authors
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

#include "sot/error.hpp"

namespace sot {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::AlgebraMismatch:
            return "AlgebraMismatch";
        case ErrorCode::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorCode::EmptyList:
            return "EmptyList";
        case ErrorCode::NotClassical:
            return "NotClassical";
        case ErrorCode::SingularMarginal:
            return "SingularMarginal";
        case ErrorCode::ChainMismatch:
            return "ChainMismatch";
        case ErrorCode::ChainTooLong:
            return "ChainTooLong";
        case ErrorCode::TooLarge:
            return "TooLarge";
        case ErrorCode::NotInTStar:
            return "NotInTStar";
        case ErrorCode::NotQubitAlgebra:
            return "NotQubitAlgebra";
        case ErrorCode::NotSelfAdjoint:
            return "NotSelfAdjoint";
        case ErrorCode::ParseError:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

}  // namespace sot
