#pragma once

#include <stdexcept>
#include <string>

namespace risopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scenario constant is outside its admissible range.
class InvalidParam : public Error {
 public:
  InvalidParam(std::string field, const std::string& reason)
      : Error("invalid parameter '" + field + "': " + reason), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No point satisfies the constraints of a (sub)problem.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// The linearized count subproblem cannot be satisfied even with the whole panel.
class InfeasibleLinearization : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class RoundingFailed : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class NoFeasiblePoint : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class MissingColumn : public Error {
 public:
  using Error::Error;
};

}  // namespace risopt
