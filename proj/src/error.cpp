/*
 * Copyright 2026 The genplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "genplan/error.hpp"

namespace genplan {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnavailableAction: return "UNAVAILABLE_ACTION";
    case Errc::InvalidPolicy: return "INVALID_POLICY";
    case Errc::ResolverExhausted: return "RESOLVER_EXHAUSTED";
    case Errc::NotATrajectory: return "NOT_A_TRAJECTORY";
    case Errc::AlphabetMismatch: return "ALPHABET_MISMATCH";
    case Errc::UnknownVariable: return "UNKNOWN_VARIABLE";
    case Errc::NotLtlExpressible: return "NOT_LTL_EXPRESSIBLE";
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::UnknownLetter: return "UNKNOWN_LETTER";
    case Errc::SizeBudgetExceeded: return "SIZE_BUDGET_EXCEEDED";
    case Errc::InvalidClass: return "INVALID_CLASS";
    case Errc::OutOfRange: return "OUT_OF_RANGE";
    case Errc::BoundTooSmall: return "BOUND_TOO_SMALL";
    case Errc::SemanticError: return "SEMANTIC_ERROR";
    case Errc::NotClosureEligible: return "NOT_CLOSURE_ELIGIBLE";
    case Errc::InvalidInput: return "INVALID_INPUT";
  }
  return "UNKNOWN";
}

}  // namespace genplan
