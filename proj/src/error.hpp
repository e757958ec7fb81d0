#pragma once

#include <stdexcept>
#include <string>

namespace zopt {

enum class ErrorCode {
  kInvalidArgument = 1,
  kUnknownName = 2,
  kDegenerateWeights = 3,
  kNumeric = 4,
  kIo = 5,
  kParse = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class UnknownName : public Error {
 public:
  explicit UnknownName(const std::string& what)
      : Error(ErrorCode::kUnknownName, what) {}
};

// All importance weights of the Monte-Carlo drift vanished. Usually cured by
// a wider initial noise (gamma), more particles, or a smaller temperature.
class DegenerateWeights : public Error {
 public:
  explicit DegenerateWeights(const std::string& what)
      : Error(ErrorCode::kDegenerateWeights, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCode::kNumeric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace zopt
