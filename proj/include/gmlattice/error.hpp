#pragma once

#include <stdexcept>
#include <string>

namespace gmlat {

enum class ErrorKind {
  InvalidInput,
  InvalidTwist,
  NotSymmetric,
  DegenerateLattice,
  UnsupportedRank,
  InvalidElement,
  GlueObstruction,
  NotOrthogonal,
  SquareInput,
  UnsupportedForm,
  ImprimitiveForm,
  Domain,
  OutOfScope,
  Hypothesis,
  SearchCap,
};

const char* to_string(ErrorKind kind);

class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gmlat
