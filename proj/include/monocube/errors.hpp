#pragma once

#include <stdexcept>
#include <string>

namespace monocube {

enum class Err {
  NotMonotone,
  ParamOutOfRange,
  SizeMismatch,
  TooSmall,
  EmptyA,
  ZeroEnergy,
  NoEdges,
  WrongDomain,
  GNotMonotone,
  EmptySupport,
  BadC,
  InvalidJoint,
  DegenerateMarginal,
  ConstantInput,
  NotUpset,
  StartNotInA,
  Disconnected,
  Format,
};

class MonocubeError : public std::runtime_error {
public:
  MonocubeError(Err code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw MonocubeError(code, what);
}

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace monocube
