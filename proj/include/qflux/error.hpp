#pragma once

#include <stdexcept>
#include <string>

namespace qflux {

enum class Err {
  EmptyRegion,
  DisconnectedRegion,
  BadCharacter,
  NotAnAnnulus,
  NotADisk,
  UnbalancedRegion,
  UnbalancedDisk,
  UntileableRegion,
  UnderdeterminedWeights,
  InconsistentWeights,
  SignMixture,
  ZeroPolynomial,
  ConvergenceFailure,
  EmptyBlock,
  BadInput,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::EmptyRegion: return "EmptyRegion";
    case Err::DisconnectedRegion: return "DisconnectedRegion";
    case Err::BadCharacter: return "BadCharacter";
    case Err::NotAnAnnulus: return "NotAnAnnulus";
    case Err::NotADisk: return "NotADisk";
    case Err::UnbalancedRegion: return "UnbalancedRegion";
    case Err::UnbalancedDisk: return "UnbalancedDisk";
    case Err::UntileableRegion: return "UntileableRegion";
    case Err::UnderdeterminedWeights: return "UnderdeterminedWeights";
    case Err::InconsistentWeights: return "InconsistentWeights";
    case Err::SignMixture: return "SignMixture";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::ConvergenceFailure: return "ConvergenceFailure";
    case Err::EmptyBlock: return "EmptyBlock";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& what)
      : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}
  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& what) { throw Error(kind, what); }

} // namespace qflux
