#pragma once

#include <stdexcept>
#include <string>

namespace ffp {

enum class ErrorKind {
  kParameter,
  kDimension,
  kDomain,
  kBuild,
  kClassification,
  kEvaluation,
  kParse,
  kIngestion,
  kUnsupportedVersion,
  kEmptyDataset,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ffp
