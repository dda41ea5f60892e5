#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stgp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid mesh: degenerate element, bad connectivity, non-positive mu.
class MeshError : public Error {
 public:
  MeshError(const std::string& what, std::size_t element)
      : Error(what), element_(element) {}
  explicit MeshError(const std::string& what) : Error(what) {}

  std::size_t element() const noexcept { return element_; }

 private:
  std::size_t element_ = static_cast<std::size_t>(-1);
};

/// Malformed text input. `line()` is 1-based; 0 when not attributable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Query outside the domain of a mesh, grid or field.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arguments with incompatible shapes or out-of-range settings.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stgp
