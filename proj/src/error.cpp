#include "xfg/error.hpp"

namespace xfg {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorKind::PrimeMismatch: return "PrimeMismatch";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::NotInTable: return "NotInTable";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::MatrixIsIdentity: return "MatrixIsIdentity";
    case ErrorKind::TrivialWord: return "TrivialWord";
    case ErrorKind::PrimeCeilingExceeded: return "PrimeCeilingExceeded";
    case ErrorKind::InvalidGenus: return "InvalidGenus";
    case ErrorKind::GenusMismatch: return "GenusMismatch";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CacheFormat: return "CacheFormat";
  }
  return "Unknown";
}

}  // namespace xfg
