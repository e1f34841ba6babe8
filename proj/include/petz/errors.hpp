// Copyright 2026 the petz authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace petz {

enum class errc {
  non_square,
  not_hermitian,
  not_psd,
  not_isometry,
  not_state,
  not_normalized,
  not_unitary,
  convergence_failure,
  dimension_mismatch,
  param_out_of_range,
  support_violation,
  degenerate_reference,
  reference_out_of_ball,
  rank_unsupported,
  rank_mismatch,
  index_out_of_range,
  budget_exceeded,
  unsupported_gate,
  zero_detuning,
  negative_delta,
  cutoff_too_small,
  parse_error,
  bad_config,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_square: return "NonSquare";
    case errc::not_hermitian: return "NotHermitian";
    case errc::not_psd: return "NotPSD";
    case errc::not_isometry: return "NotIsometry";
    case errc::not_state: return "NotState";
    case errc::not_normalized: return "NotNormalized";
    case errc::not_unitary: return "NotUnitary";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::param_out_of_range: return "ParamOutOfRange";
    case errc::support_violation: return "SupportViolation";
    case errc::degenerate_reference: return "DegenerateReference";
    case errc::reference_out_of_ball: return "ReferenceOutOfBall";
    case errc::rank_unsupported: return "RankUnsupported";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::unsupported_gate: return "UnsupportedGate";
    case errc::zero_detuning: return "ZeroDetuning";
    case errc::negative_delta: return "NegativeDelta";
    case errc::cutoff_too_small: return "CutoffTooSmall";
    case errc::parse_error: return "ParseError";
    case errc::bad_config: return "BadConfig";
  }
  return "Unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace petz
