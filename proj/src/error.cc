// Copyright 2026 The groupsa Authors
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

#include "groupsa/error.h"

namespace groupsa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kCohort:
      return "cohort";
    case ErrorCode::kConfiguration:
      return "configuration";
    case ErrorCode::kEnumerationCap:
      return "enumeration-cap";
    case ErrorCode::kDomain:
      return "domain";
  }
  return "unknown";
}

std::string Error::Diagnostic() const {
  std::string out = "error[";
  out += ErrorCodeName(code_);
  out += "]: ";
  out += what();
  return out;
}

}  // namespace groupsa
