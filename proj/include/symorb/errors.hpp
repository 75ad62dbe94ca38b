#pragma once

#include <stdexcept>
#include <string>

namespace symorb {

enum class ErrorKind {
  ambient_mismatch,
  limit_exceeded,
  not_a_subgroup,
  not_a_state,
  rank_limit,
  validation_failed,
  parse_error,
  internal_error,
  invalid_argument,
};

/// Base class of all library failures. `kind()` drives the CLI exit code:
/// limit_exceeded and rank_limit map to 2, everything else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct AmbientMismatch : Error {
  explicit AmbientMismatch(const std::string& m) : Error(ErrorKind::ambient_mismatch, m) {}
};

struct LimitExceeded : Error {
  explicit LimitExceeded(const std::string& m) : Error(ErrorKind::limit_exceeded, m) {}
};

struct NotASubgroup : Error {
  explicit NotASubgroup(const std::string& m) : Error(ErrorKind::not_a_subgroup, m) {}
};

struct NotAState : Error {
  explicit NotAState(const std::string& m) : Error(ErrorKind::not_a_state, m) {}
};

struct RankLimit : Error {
  explicit RankLimit(const std::string& m) : Error(ErrorKind::rank_limit, m) {}
};

struct ValidationFailed : Error {
  explicit ValidationFailed(const std::string& m) : Error(ErrorKind::validation_failed, m) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(ErrorKind::parse_error, m) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(ErrorKind::internal_error, m) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& m) : Error(ErrorKind::invalid_argument, m) {}
};

}  // namespace symorb
