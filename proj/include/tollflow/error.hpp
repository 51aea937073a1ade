#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tollflow {

enum class ErrorKind {
  SyntaxError,
  UnknownVertex,
  DuplicateId,
  SelfLoop,
  UnreachableVertex,
  NonpositiveCapacity,
  NonpositiveInflow,
  NegativeTransitOrToll,
  BadSourceSink,
  NegativeTime,
  InvalidArgument,
  CycleGuard,
  SearchExhausted,
  SizeLimit,
  PrimalInfeasible,
  UnboundedDual,
  NormalizationStuck,
  NegativeQueue,
  CertificationFailed,
  UnknownName,
  IoError,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string subject = {});

  ErrorKind kind() const noexcept { return kind_; }
  // Offending vertex/edge/field, when there is one.
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

}  // namespace tollflow
