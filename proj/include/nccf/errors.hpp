#pragma once

#include <stdexcept>
#include <string>

namespace nccf {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Cayley table failed one of the group axioms; the message names the
/// violated axiom and the witness indices (0-based).
class NotAGroupError : public Error {
  using Error::Error;
};

class QuadratureValidationError : public Error {
public:
  QuadratureValidationError(const std::string& what, double residual)
      : Error(what), max_residual(residual) {}
  double max_residual;
};

class InvalidSpinError : public Error {
  using Error::Error;
};

class UnknownGroupError : public Error {
  using Error::Error;
};

class DimensionMismatchError : public Error {
  using Error::Error;
};

class IncompleteIrrepListError : public Error {
  using Error::Error;
};

class NotNormalizedError : public Error {
  using Error::Error;
};

class QuadratureTooCoarseError : public Error {
  using Error::Error;
};

class MultiIrrepSupportError : public Error {
  using Error::Error;
};

class ParameterOutOfRangeError : public Error {
  using Error::Error;
};

class NegativeCoefficientError : public Error {
public:
  NegativeCoefficientError(const std::string& what, int k_, int l_, double v)
      : Error(what), k(k_), l(l_), value(v) {}
  int k;
  int l;
  double value;
};

class IncompleteProjectorFamilyError : public Error {
  using Error::Error;
};

/// Input file could not be parsed; carries 1-based line/column when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what, int line_ = 0, int column_ = 0)
      : Error(what), line(line_), column(column_) {}
  int line;
  int column;
};

}  // namespace nccf
