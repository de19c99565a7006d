#pragma once

#include <stdexcept>

namespace butterfly {

// A decoder asked for an element that is not present in the stripe.
class MissingElement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// More nodes are lost than the code can tolerate.
class UnrecoverableLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or mismatching on-disk data (headers, manifests, digests).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DigestMismatch : public FormatError {
 public:
  using FormatError::FormatError;
};

// The surviving GF(2) system has no unique solution.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A double-failure decode consumed an element before the iteration that
// produces it. Indicates a bug in row ordering, never a data problem.
class DecodeOrderViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace butterfly
