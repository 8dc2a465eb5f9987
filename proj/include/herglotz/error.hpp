#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace herglotz {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Γ evaluated at a non-positive integer.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Operator called with an order outside its supported range.
class OrderError : public Error {
public:
  using Error::Error;
};

/// Two sampled functions that should share a grid do not.
class GridMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed argument (bad grid, wrong vector length, missing derivative row, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected)
      : Error(msg), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
        name_(name), offset_(offset) {}

  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

private:
  std::string name_;
  std::size_t offset_;
};

class ArityError : public Error {
public:
  using Error::Error;
};

/// Expression evaluated outside its domain (ln of non-positive, division by zero, ...).
/// `node` is the printed form of the offending subexpression.
class DomainError : public Error {
public:
  DomainError(const std::string& msg, std::string node)
      : Error(msg + " in '" + node + "'"), node_(std::move(node)) {}

  const std::string& node() const noexcept { return node_; }

private:
  std::string node_;
};

class UnknownProblem : public Error {
public:
  using Error::Error;
};

/// Boundary data violated by an input trajectory or variation.
class BoundaryError : public Error {
public:
  using Error::Error;
};

class NoFreeEndpoint : public Error {
public:
  using Error::Error;
};

class NoBracket : public Error {
public:
  NoBracket(const std::string& msg, double lo, double hi) : Error(msg), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  double lo_, hi_;
};

/// Adaptive step size collapsed below the representable minimum.
class StiffnessError : public Error {
public:
  using Error::Error;
};

/// A conservation-law check was requested for a Lagrangian that lacks the symmetry.
class SymmetryViolation : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

}  // namespace herglotz
