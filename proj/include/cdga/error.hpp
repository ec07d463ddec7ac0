#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdga {

enum class ErrorCode {
  // qlinalg
  Membership,
  DimensionMismatch,
  // grading / cdga
  GeneratorMismatch,
  InvalidGenerators,
  NotHomogeneous,
  NotClosed,
  MissingDimension,
  TopClassNotLine,
  NameCollision,
  // models
  UnknownModel,
  DegreeMismatch,
  JacobiFailure,
  // sullivan
  NotConnected,
  NonNilpotent,
  // analysis
  NotMinimal,
  UnsupportedShape,
  NotDefined,
  NoSymplecticClass,
  OddDimension,
  NotSLefschetz,
  DegreeOutOfRange,
  // dsl
  Parse,
  UnknownGenerator,
  DuplicateGenerator,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cdga
