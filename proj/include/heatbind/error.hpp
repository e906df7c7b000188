#pragma once

#include <stdexcept>
#include <string>

namespace heatbind {

enum class ErrorKind {
  InvalidArgument,  // violated precondition on caller input
  Numerical,        // quadrature / root / iteration failed its tolerance
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::Numerical, what) {}
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw InvalidArgument(what);
}

}  // namespace heatbind
