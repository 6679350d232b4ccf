#pragma once

#include <stdexcept>
#include <string>

namespace germforge {

// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input.
class parse_error : public error {
public:
  using error::error;
};

// A structural invariant or a documented precondition does not hold.
class invariant_error : public error {
public:
  using error::error;
};

// The question cannot be decided with the available certified precision.
class undecidable_error : public error {
public:
  using error::error;
};

}  // namespace germforge
