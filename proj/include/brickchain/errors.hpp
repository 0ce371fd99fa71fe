#pragma once

#include <stdexcept>
#include <string>

namespace brickchain {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that does not describe a well-formed algebra, module or file.
class MalformedInput : public Error {
 public:
  explicit MalformedInput(const std::string& what) : Error("malformed input: " + what) {}
};

/// A family of subspaces that is not closed under the arrow maps.
class NotClosed : public Error {
 public:
  explicit NotClosed(const std::string& what) : Error("not a submodule: " + what) {}
};

/// Fitting split requested with an endomorphism that is invertible or nilpotent.
class BadWitness : public Error {
 public:
  explicit BadWitness(const std::string& what) : Error("bad witness: " + what) {}
};

/// An exhaustive search would examine more candidates than allowed.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

/// A runtime-verified structural assertion failed.
class CertificateFailure : public Error {
 public:
  explicit CertificateFailure(const std::string& what) : Error("certificate failure: " + what) {}
};

class IncompleteUniverse : public Error {
 public:
  explicit IncompleteUniverse(const std::string& what) : Error("incomplete universe: " + what) {}
};

/// A closure test produced a module whose summands are not in the universe.
class OutOfUniverse : public Error {
 public:
  explicit OutOfUniverse(const std::string& what) : Error("out of universe: " + what) {}
};

}  // namespace brickchain
