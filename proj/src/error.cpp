#include "tollflow/error.hpp"

namespace tollflow {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::UnreachableVertex: return "UnreachableVertex";
    case ErrorKind::NonpositiveCapacity: return "NonpositiveCapacity";
    case ErrorKind::NonpositiveInflow: return "NonpositiveInflow";
    case ErrorKind::NegativeTransitOrToll: return "NegativeTransitOrToll";
    case ErrorKind::BadSourceSink: return "BadSourceSink";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CycleGuard: return "CycleGuard";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::PrimalInfeasible: return "PrimalInfeasible";
    case ErrorKind::UnboundedDual: return "UnboundedDual";
    case ErrorKind::NormalizationStuck: return "NormalizationStuck";
    case ErrorKind::NegativeQueue: return "NegativeQueue";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string subject)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind),
      subject_(std::move(subject)) {}

}  // namespace tollflow
