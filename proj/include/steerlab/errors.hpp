#pragma once

#include <stdexcept>
#include <string>

namespace steerlab {

// Base class for everything this library throws on contract violations.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFinite : public Error {
public:
  using Error::Error;
};

class NonHermitian : public Error {
public:
  using Error::Error;
};

class NotPsd : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidAssemblage : public Error {
public:
  using Error::Error;
};

class InvalidState : public Error {
public:
  using Error::Error;
};

class InvalidPovm : public Error {
public:
  using Error::Error;
};

class NotAState : public Error {
public:
  using Error::Error;
};

class StateMismatch : public Error {
public:
  using Error::Error;
};

class NumericalBreakdown : public Error {
public:
  using Error::Error;
};

class SupportViolation : public Error {
public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
public:
  using Error::Error;
};

class BadSetting : public Error {
public:
  using Error::Error;
};

class WrongOutcomeCount : public Error {
public:
  using Error::Error;
};

class ScenarioTooLarge : public Error {
public:
  using Error::Error;
};

class OddDimension : public Error {
public:
  using Error::Error;
};

class Mismatch : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace steerlab
