#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lsqstab {

/// Base for every error raised by the library. `code()` is a short
/// machine-readable category used by the CLI (`error: <code>: <detail>`).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& detail) : Error("domain", detail) {}
};

/// Caller violated a documented precondition (unsorted input, m >= n, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& detail)
      : Error("contract", detail) {}
};

/// Too few distinct sample points for the requested polynomial degree.
class RankError : public Error {
 public:
  explicit RankError(const std::string& detail) : Error("rank", detail) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& detail) : Error("io", detail) {}
};

}  // namespace lsqstab
