#include "blanketlab/error.hpp"

namespace blanketlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NoResponse: return "NoResponse";
    case ErrorCode::MultipleResponses: return "MultipleResponses";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::CriterionUnsupported: return "CriterionUnsupported";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::HiddenObservedMismatch: return "HiddenObservedMismatch";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::SettingViolation: return "SettingViolation";
    case ErrorCode::NoColliderFound: return "NoColliderFound";
    case ErrorCode::TooManyColliders: return "TooManyColliders";
    case ErrorCode::InvalidChoice: return "InvalidChoice";
    case ErrorCode::HasBidirected: return "HasBidirected";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace blanketlab
