#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blanketlab {

enum class ErrorCode {
  DuplicateNode,
  UnknownEndpoint,
  SelfLoop,
  DuplicateEdge,
  UnknownNode,
  NoResponse,
  MultipleResponses,
  InvalidArgument,
  InvalidPath,
  CriterionUnsupported,
  OverlappingSets,
  HiddenObservedMismatch,
  FamilyMismatch,
  UniverseTooLarge,
  SettingViolation,
  NoColliderFound,
  TooManyColliders,
  InvalidChoice,
  HasBidirected,
  SingularSystem,
  IllConditioned,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blanketlab
