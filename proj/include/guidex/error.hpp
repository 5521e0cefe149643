#pragma once

#include <stdexcept>
#include <string>

namespace guidex {

/// Base for every error the library reports. Callers that only need a
/// message catch this; callers that map errors to exit codes or HTTP
/// statuses catch the concrete subclasses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateGraph : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class InvalidGenerationSpec : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line, long column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }

 private:
  long line_;
  long column_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ReferenceError : public Error {
 public:
  explicit ReferenceError(std::string missing)
      : Error("edge references unknown node '" + missing + "'"),
        missing_(std::move(missing)) {}

  const std::string& missing_node() const noexcept { return missing_; }

 private:
  std::string missing_;
};

class UnsupportedFeature : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

class Conflict : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SlotConflict : public Error {
 public:
  using Error::Error;
};

class MissingData : public Error {
 public:
  using Error::Error;
};

}  // namespace guidex
