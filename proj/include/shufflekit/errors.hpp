#ifndef SHUFFLEKIT_ERRORS_HPP
#define SHUFFLEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shufflekit {

/// Malformed input: unknown symbols, alphabet mismatches, bad documents.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold for the given machine.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size or search budget was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shufflekit

#endif
