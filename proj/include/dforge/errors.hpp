#pragma once

#include <stdexcept>
#include <string>

namespace dforge {

/// A coefficient or table value lies beyond what the computed truncation can certify.
/// Distinct from a certified zero.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (e.g. non-integral coefficient where integrality
/// is a theorem, or two equal-norm keys disagreeing).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series expansion that would not terminate under the requested box.
class NonTerminatingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dforge
