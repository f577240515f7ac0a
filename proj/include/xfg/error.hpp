#pragma once

#include <stdexcept>
#include <string>

namespace xfg {

enum class ErrorKind {
  InvalidPrime,
  NonUnitDeterminant,
  PrimeMismatch,
  RankMismatch,
  IndexOutOfRange,
  InvalidRank,
  NotGenerating,
  NotInTable,
  ResourceLimit,
  DegreeMismatch,
  MatrixIsIdentity,
  TrivialWord,
  PrimeCeilingExceeded,
  InvalidGenus,
  GenusMismatch,
  InvalidOrder,
  InvalidAutomorphism,
  ParseError,
  CacheFormat,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace xfg
