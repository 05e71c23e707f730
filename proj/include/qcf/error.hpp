/**
 * @file error.hpp
 * @brief Error codes shared by all qcf modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qcf {

enum class Errc {
  Internal,
  Parse,
  SpecializationUndefined,
  IncompatibleTorus,
  RankError,
  NoDegree,
  ZeroInput,
  NotFrozen,
  BadVertex,
  Incompatible,
  AssumptionViolated,
  LaurentViolation,
  NotPointed,
  NotARoot,
  NotReduced,
  NotMinuscule,
  OutOfDomain,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::Internal: return "InternalError";
    case Errc::Parse: return "ParseError";
    case Errc::SpecializationUndefined: return "SpecializationUndefined";
    case Errc::IncompatibleTorus: return "IncompatibleTorus";
    case Errc::RankError: return "RankError";
    case Errc::NoDegree: return "NoDegree";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::NotFrozen: return "NotFrozen";
    case Errc::BadVertex: return "BadVertex";
    case Errc::Incompatible: return "Incompatible";
    case Errc::AssumptionViolated: return "AssumptionViolated";
    case Errc::LaurentViolation: return "LaurentViolation";
    case Errc::NotPointed: return "NotPointed";
    case Errc::NotARoot: return "NotARoot";
    case Errc::NotReduced: return "NotReduced";
    case Errc::NotMinuscule: return "NotMinuscule";
    case Errc::OutOfDomain: return "OutOfDomain";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Throws Errc::Internal when an internal invariant fails.
inline void require(bool cond, const char* what) {
  if (!cond) throw Error(Errc::Internal, what);
}

}  // namespace qcf
