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

#include "claimkit/error.h"

#include <utility>

namespace claimkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateCui: return "DuplicateCui";
    case ErrorCode::kUnknownCui: return "UnknownCui";
    case ErrorCode::kMissingVector: return "MissingVector";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kBackendMalformedResponse: return "BackendMalformedResponse";
    case ErrorCode::kEmptyGeneration: return "EmptyGeneration";
    case ErrorCode::kUnlinkedMention: return "UnlinkedMention";
    case ErrorCode::kNoLinkableEntity: return "NoLinkableEntity";
    case ErrorCode::kNoCandidates: return "NoCandidates";
    case ErrorCode::kNoSameTypeConcept: return "NoSameTypeConcept";
    case ErrorCode::kUnknownCitance: return "UnknownCitance";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyAfterTokenization: return "EmptyAfterTokenization";
    case ErrorCode::kMissingReferences: return "MissingReferences";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kGatingViolation: return "GatingViolation";
    case ErrorCode::kUnknownTask: return "UnknownTask";
    case ErrorCode::kUnknownAnnotator: return "UnknownAnnotator";
    case ErrorCode::kStaleRevision: return "StaleRevision";
  }
  return "Unknown";
}

namespace {

std::string Format(ErrorCode code, const std::string &message,
                   const std::string &location) {
  std::string out(ErrorCodeName(code));
  if (!location.empty()) out += " at " + location;
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string &message, std::string location)
    : std::runtime_error(Format(code, message, location)),
      code_(code),
      location_(std::move(location)) {}

}  // namespace claimkit
