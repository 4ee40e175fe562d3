// Copyright 2026 The shadowkit Authors.
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

#include "shadowkit/error.hpp"

namespace shadowkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::BadTerm: return "BadTerm";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::UnsupportedLocalDim: return "UnsupportedLocalDim";
    case ErrorCode::SubsystemTooLarge: return "SubsystemTooLarge";
    case ErrorCode::EmptyShadow: return "EmptyShadow";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::CountCapExceeded: return "CountCapExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NeedTwoSnapshots: return "NeedTwoSnapshots";
    case ErrorCode::NonpositiveDiagonal: return "NonpositiveDiagonal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateEmbedding: return "DegenerateEmbedding";
    case ErrorCode::ChainTooShort: return "ChainTooShort";
    case ErrorCode::SameSite: return "SameSite";
    case ErrorCode::NonAdjacent: return "NonAdjacent";
    case ErrorCode::WrongLocalDim: return "WrongLocalDim";
    case ErrorCode::IntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace shadowkit
