#pragma once

#include <stdexcept>
#include <string>

namespace tricover {

// Malformed or inconsistent user input (bad names, schema problems,
// unsatisfiable constraints). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical check that was expected to hold did not.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tricover
