// Copyright 2026 The floquet-lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "floq/errors.hpp"

namespace floq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonHermitianHamiltonian: return "NonHermitianHamiltonian";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kDefectiveMap: return "DefectiveMap";
    case ErrorCode::kUnpairedNegativeEigenvalue: return "UnpairedNegativeEigenvalue";
    case ErrorCode::kZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::kNotHermiticityPreserving: return "NotHermiticityPreserving";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kIntegratorDiverged: return "IntegratorDiverged";
    case ErrorCode::kAccuracyLoss: return "AccuracyLoss";
    case ErrorCode::kNotLindbladian: return "NotLindbladian";
    case ErrorCode::kExtractionResidual: return "ExtractionResidual";
    case ErrorCode::kNoConvergedRoot: return "NoConvergedRoot";
    case ErrorCode::kDefectiveDecomposition: return "DefectiveDecomposition";
    case ErrorCode::kNoValidKernelInRange: return "NoValidKernelInRange";
    case ErrorCode::kEmptyPhase: return "EmptyPhase";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace floq
