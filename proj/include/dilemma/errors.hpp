#ifndef DILEMMA_ERRORS_HPP
#define DILEMMA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dilemma {

// A declared game class whose payoff ordering does not hold.
class OrderingViolation : public std::invalid_argument {
 public:
  explicit OrderingViolation(const std::string& what) : std::invalid_argument(what) {}
};

class NoUniqueEquilibrium : public std::runtime_error {
 public:
  explicit NoUniqueEquilibrium(const std::string& what) : std::runtime_error(what) {}
};

class UnknownStrategy : public std::invalid_argument {
 public:
  explicit UnknownStrategy(const std::string& name)
      : std::invalid_argument("unknown strategy: " + name) {}
};

class Infeasible : public std::domain_error {
 public:
  explicit Infeasible(const std::string& what) : std::domain_error(what) {}
};

// The joint chain has more than one closed class, so the long-run
// payoff depends on where play starts.
class NotErgodic : public std::runtime_error {
 public:
  explicit NotErgodic(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Carries the JSON path of the offending config entry.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace dilemma

#endif  // DILEMMA_ERRORS_HPP
