#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cgf {

// Base for every error this library raises on purpose. The CLI maps
// ParseError to exit code 3 and everything else derived from Error to 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Malformed expression text. Carries the byte offset of the failure and a
// human-readable list of what would have been accepted there.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& expected)
      : Error("parse error at byte " + std::to_string(offset) + ": expected " + expected),
        offset_(offset),
        expected_(expected) {}

  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

// Invalid argument values (non-positive frequency, negative quantum number, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Disentangling is impossible because the (2,2) entry of the group element
// vanishes; happens only at isolated real t.
class Degenerate : public Error {
public:
  using Error::Error;
};

// A truncated resolvent solve hit a (near-)singular matrix, i.e. the probe
// energy collided with a truncated eigenvalue.
class SingularSystem : public Error {
public:
  using Error::Error;
};

// The geometric ratio of the t-integrated series reached |rho| >= 1; signals
// a branch or contour bug, never a legitimate state.
class SeriesDivergence : public Error {
public:
  using Error::Error;
};

// A series term denominator fell below the pole floor.
class PoleHit : public Error {
public:
  using Error::Error;
};

// The closed-form bracket was evaluated too close to a zero of its denominator.
class PoleOnPath : public Error {
public:
  using Error::Error;
};

// The assembled dispersion energy came out with a non-negligible imaginary
// part; signals a sign or branch bug upstream.
class NonRealResult : public Error {
public:
  using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance within budget.
class QuadratureStall : public Error {
public:
  using Error::Error;
};

}  // namespace cgf
