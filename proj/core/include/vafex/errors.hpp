#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vafex {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument id was used against a framework/catalog that does not contain it.
class UnknownArgumentError : public Error {
 public:
  explicit UnknownArgumentError(const std::string& id)
      : Error("unknown argument: " + id) {}
};

// A brute-force enumeration was requested on a framework above the size bound.
class SizeBoundError : public Error {
 public:
  SizeBoundError(std::size_t size, std::size_t bound)
      : Error("framework has " + std::to_string(size) +
              " arguments, enumeration bound is " + std::to_string(bound)) {}
};

class UnknownConditionError : public Error {
 public:
  explicit UnknownConditionError(const std::string& kind)
      : Error("unknown condition kind: " + kind) {}
};

class MissingFeatureError : public Error {
 public:
  explicit MissingFeatureError(const std::string& feature)
      : Error("state is missing feature: " + feature), feature_(feature) {}
  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

class MissingValueError : public Error {
 public:
  explicit MissingValueError(const std::string& id)
      : Error("no value assigned to argument: " + id) {}
};

class DuplicateValueError : public Error {
 public:
  using Error::Error;
};

// Internal consistency violation (exit code 3 at the CLI).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class MissingNodeError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

// Row-level parse failure; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NoDataError : public Error {
 public:
  using Error::Error;
};

// A trajectory step lacks the requested agent's action.
class DataGapError : public Error {
 public:
  DataGapError(std::int64_t episode, std::size_t step, int agent)
      : Error("episode " + std::to_string(episode) + " step " +
              std::to_string(step) + " has no action for agent " +
              std::to_string(agent)) {}
};

}  // namespace vafex
