#ifndef EASPEC_ERRORS_H_
#define EASPEC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace easpec {

// Broad failure classes. Each maps onto one CLI exit status.
enum class ErrorClass {
  kUsage = 1,
  kParse = 2,
  kAnalysis = 3,
  kRuntime = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& message)
      : std::runtime_error(message), error_class_(error_class) {}

  ErrorClass error_class() const { return error_class_; }

 private:
  ErrorClass error_class_;
};

class ParseError : public Error {
 public:
  ParseError(std::string origin, int line, int column, const std::string& message)
      : Error(ErrorClass::kParse, origin + ":" + std::to_string(line) + ":" +
                                      std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Raised by validation, binding-time analysis and specialization.
class AnalysisError : public Error {
 public:
  explicit AnalysisError(const std::string& message)
      : Error(ErrorClass::kAnalysis, message) {}
};

// Raised while executing a program: overflow, unresolved update conflicts.
class RuntimeError : public Error {
 public:
  explicit RuntimeError(const std::string& message)
      : Error(ErrorClass::kRuntime, message) {}
};

}  // namespace easpec

#endif  // EASPEC_ERRORS_H_
