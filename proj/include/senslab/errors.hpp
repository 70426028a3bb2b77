#pragma once

#include <stdexcept>
#include <string>

namespace senslab {

/// Base class for all typed errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
};

/// A value would need more bits than the configured materialization budget.
/// Callers are expected to fall back to symbolic index arithmetic.
class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

class EmptySet : public Error {
public:
  EmptySet() : Error("operation requires a nonempty set") {}
};

class PointOutsideSpace : public Error {
public:
  explicit PointOutsideSpace(const std::string& what) : Error(what) {}
};

class StepBudgetExceeded : public Error {
public:
  explicit StepBudgetExceeded(const std::string& what) : Error(what) {}
};

class InvalidParams : public Error {
public:
  explicit InvalidParams(const std::string& what) : Error(what) {}
};

/// A finite truncation cannot distinguish the asked-for property.
class Inconclusive : public Error {
public:
  explicit Inconclusive(const std::string& what) : Error(what) {}
};

class CertificateReplayFailure : public Error {
public:
  explicit CertificateReplayFailure(const std::string& what) : Error(what) {}
};

}  // namespace senslab
