#pragma once

#include <stdexcept>

namespace rqw {

/// A numerical invariant (unitarity, probability range) failed at runtime.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rqw
