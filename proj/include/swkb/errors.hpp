#pragma once

#include <stdexcept>

namespace swkb {

/// A structural identity of the series failed to hold exactly.
class StructuralViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation hit u = 0 or E = 0 under a negative power.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested order exceeds the configured substitution bound.
class SubstitutionOverflow : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoClassicalRegion : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AmbiguousRegion : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BranchTrackingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainTooSmall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketNotFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace swkb
