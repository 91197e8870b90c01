#pragma once

#include <stdexcept>
#include <string>

namespace spherewf {

// Thrown when an input violates a documented precondition (invalid point,
// out-of-range parameter, time below the evaluator floor, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace spherewf
