#pragma once

#include <stdexcept>
#include <string>

namespace wpvol {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed permutation pair or otherwise invalid combinatorial input.
class StructureError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Enumeration or expansion refused because a configured size cap was hit.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string& what, long long cap)
      : Error(what + " (cap = " + std::to_string(cap) + ")"), cap_(cap) {}
  long long cap() const noexcept { return cap_; }

private:
  long long cap_;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

}  // namespace wpvol
