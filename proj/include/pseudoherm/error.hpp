// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pseudoherm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-Hermitian metric,
/// non-unitary transform, parity mismatch on a grid function, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The matrix does not admit a complete biorthonormal eigensystem, as judged
/// by the conditioning of its right-eigenvector matrix.
class DefectiveMatrix : public Error {
 public:
  DefectiveMatrix(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Time integration produced non-finite amplitudes.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace pseudoherm
