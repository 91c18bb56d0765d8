#pragma once

#include <stdexcept>
#include <string>

namespace copcp {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DiagonalMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedLevel : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InconsistentParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedSymmetry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SizeLimit : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SpectralFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LevelNotCertified : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SearchFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace copcp
