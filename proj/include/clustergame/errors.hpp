#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace clustergame {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad index, dimension mismatch or argument outside the operation's domain.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A point handed to the oracle or a cost evaluator lies outside its box.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// Query radius or step schedule incompatible with the game's safety balls.
class ScheduleViolation : public Error {
 public:
  using Error::Error;
};

// A query round was answered before every agent submitted.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

// NaN or infinity appeared where a finite value is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Structural invariant of a constructed object does not hold.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// One violated invariant inside a report-valued check.
struct Violation {
  std::string code;     // short machine-readable identifier, e.g. "row-sum"
  std::string message;  // human-readable detail
};

// Report-valued checks never throw; they collect every violation found.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const {
    for (const auto& v : violations)
      if (v.code == code) return true;
    return false;
  }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations)
      violations.push_back({v.code, prefix + v.message});
  }
  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) {
      out += "[" + v.code + "] " + v.message + "\n";
    }
    return out;
  }
};

}  // namespace clustergame
