#ifndef ENTBOUND_ERRORS_HPP
#define ENTBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entbound {

enum class Err {
  NonHermitian,
  NoConvergence,
  BadPartition,
  NotPSD,
  BadDim,
  BadProbabilities,
  BadFidelity,
  ClusterMismatch,
  BadK,
  NotAChannel,
  NotUnitary,
  NotAntisymmetricUnitary,
  OddDim,
  DecompositionFailed,
  DimMismatch,
  NotQubits,
  DegenerateScale,
  ZeroConcurrence,
  NotMaxMixedMarginal,
  BadInput,
};

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace entbound

#endif
