// Copyright 2026 The claimkit Authors.
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

#ifndef CLAIMKIT_ERROR_H_
#define CLAIMKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace claimkit {

// Every failure raised by the library carries one of these codes. Callers
// that need to branch on the failure kind switch on Error::code().
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kMalformedRecord,
  kDuplicateCui,
  kUnknownCui,
  kMissingVector,
  kZeroVector,
  kBackendUnavailable,
  kBackendMalformedResponse,
  kEmptyGeneration,
  kUnlinkedMention,
  kNoLinkableEntity,
  kNoCandidates,
  kNoSameTypeConcept,
  kUnknownCitance,
  kEmptyCorpus,
  kEmptyAfterTokenization,
  kMissingReferences,
  kInsufficientData,
  kGatingViolation,
  kUnknownTask,
  kUnknownAnnotator,
  kStaleRevision,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, std::string location = {});

  ErrorCode code() const { return code_; }

  // "path:line" for data errors, empty otherwise.
  const std::string &location() const { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace claimkit

#endif  // CLAIMKIT_ERROR_H_
