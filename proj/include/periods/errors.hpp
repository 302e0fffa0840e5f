#pragma once

#include <stdexcept>
#include <string>

namespace periods {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PERIODS_ERROR(Name)                          \
  class Name : public Error {                        \
   public:                                           \
    explicit Name(const std::string& what)           \
        : Error(std::string(#Name) + ": " + what) {} \
  };

// Input problems; the CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

#define PERIODS_INPUT_ERROR(Name)                         \
  class Name : public InputError {                        \
   public:                                                \
    explicit Name(const std::string& what)                \
        : InputError(std::string(#Name) + ": " + what) {} \
  };

PERIODS_INPUT_ERROR(ParseError)
PERIODS_INPUT_ERROR(NotAdmissible)
PERIODS_INPUT_ERROR(UnsupportedLetter)
PERIODS_INPUT_ERROR(Divergent)
PERIODS_INPUT_ERROR(UnsupportedKind)
PERIODS_INPUT_ERROR(UnsupportedBasePoint)

// Table problems; exit code 3.
class TableError : public Error {
 public:
  using Error::Error;
};

#define PERIODS_TABLE_ERROR(Name)                         \
  class Name : public TableError {                        \
   public:                                                \
    explicit Name(const std::string& what)                \
        : TableError(std::string(#Name) + ": " + what) {} \
  };

PERIODS_TABLE_ERROR(DimensionMismatch)
PERIODS_TABLE_ERROR(MissingRelationTable)

PERIODS_ERROR(WeightTooLarge)
PERIODS_ERROR(WeightOutOfRange)
PERIODS_ERROR(NotEffective)
PERIODS_ERROR(NotInvertible)
PERIODS_ERROR(MissingWeights)
PERIODS_ERROR(MissingHodge)
PERIODS_ERROR(UnknownGenerator)
PERIODS_ERROR(SizeMismatch)

PERIODS_ERROR(NotIntegrable)
PERIODS_ERROR(BasisMismatch)
PERIODS_ERROR(NotLengthN)

PERIODS_ERROR(OutOfDomain)
PERIODS_ERROR(Unevaluable)
PERIODS_ERROR(NotInRange)
PERIODS_ERROR(CacheError)

#undef PERIODS_ERROR
#undef PERIODS_INPUT_ERROR
#undef PERIODS_TABLE_ERROR

}  // namespace periods
