#pragma once

#include <stdexcept>
#include <string>

namespace relaycap {

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   DomainError / ShapeError / PreconditionError  bad values or dimensions
//   ResourceError                                 request exceeds an enumeration limit
//   ConfigError                                   invalid run configuration
//   ParseError                                    malformed input file
//   IoError                                       filesystem failure

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int line_ = -1, int column_ = -1)
      : std::runtime_error(message), line(line_), column(column_) {}
  int line;
  int column;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace relaycap
