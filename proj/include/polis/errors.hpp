#ifndef POLIS_ERRORS_HPP
#define POLIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polis {

// Violated precondition or inconsistent configuration.
struct InvalidConfig : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed input file; message carries file/line context where known.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polis

#endif  // POLIS_ERRORS_HPP
