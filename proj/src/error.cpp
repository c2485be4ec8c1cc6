#include "vulnk/error.hpp"

namespace vulnk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfEdge: return "SelfEdge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidArguments: return "InvalidArguments";
    case ErrorCode::InvalidBk: return "InvalidBk";
    case ErrorCode::MismatchedK: return "MismatchedK";
    case ErrorCode::InfeasibleShape: return "InfeasibleShape";
  }
  return "UnknownError";
}

}  // namespace vulnk
