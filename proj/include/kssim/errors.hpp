#pragma once

#include <stdexcept>
#include <string>

namespace kssim {

// Error taxonomy shared by every module. Kinds matter to callers (and tests):
//   Domain      - argument outside an operation's contract
//   EmptyWindow - a requested parameter window is empty
//   Infeasible  - no valid construction exists for these parameters
//   Threshold   - damping mu does not exceed the Lyapunov threshold
//   Singularity - nonpositive field value under a negative power / log / division
//   Evaluation  - nonfinite intermediate in a numeric evaluation
//   Oracle      - a reference computation failed to converge
//   Insufficient- not enough samples for a statistical operation
//   Config      - malformed experiment configuration or CLI usage
enum class ErrorKind {
  Domain,
  EmptyWindow,
  Infeasible,
  Threshold,
  Singularity,
  Evaluation,
  Oracle,
  Insufficient,
  Config,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::EmptyWindow:
      return "empty_window";
    case ErrorKind::Infeasible:
      return "infeasible";
    case ErrorKind::Threshold:
      return "threshold";
    case ErrorKind::Singularity:
      return "singularity";
    case ErrorKind::Evaluation:
      return "evaluation";
    case ErrorKind::Oracle:
      return "oracle";
    case ErrorKind::Insufficient:
      return "insufficient";
    case ErrorKind::Config:
      return "config";
  }
  return "unknown";
}

}  // namespace kssim
