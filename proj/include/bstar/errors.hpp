#pragma once

#include <stdexcept>
#include <string>

namespace bstar {

// Violated precondition on a model parameter; message names the inequality.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested expectation is infinite. A contract outcome, not a failure.
class InfiniteExpectation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OriginNotInterior : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace bstar
