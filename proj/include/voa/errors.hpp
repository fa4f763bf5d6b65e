#ifndef VOA_ERRORS_HPP
#define VOA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace voa {

/// Base class of every error raised by the library. `kind()` names the
/// failure class; the CLI prints it verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error("DivisionByZero", what) {}
};

/// Evaluation of a level-dependent scalar hit a root of its denominator.
class PoleAtLevel : public Error {
 public:
  PoleAtLevel(std::string level, const std::string& what)
      : Error("PoleAtLevel", what), level_(std::move(level)) {}
  const std::string& level() const noexcept { return level_; }

 private:
  std::string level_;
};

class ParityError : public Error {
 public:
  explicit ParityError(const std::string& what) : Error("ParityError", what) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& what) : Error("LengthMismatch", what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error("IndexError", what) {}
};

class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& what) : Error("UnknownSymbol", what) {}
};

/// Quantum-correction descent could not express a lower-degree image.
class DescentFailure : public Error {
 public:
  DescentFailure(int degree, const std::string& what)
      : Error("DescentFailure", what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error("ResourceLimit", what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("ValidationError", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

}  // namespace voa

#endif  // VOA_ERRORS_HPP
