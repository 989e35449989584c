#ifndef INDIST_ERRORS_HPP_
#define INDIST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace indist {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments (shape mismatch, bad occupation, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A requested size exceeds one of the documented caps.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A numerical input violates a structural requirement (non-unitary,
/// non-Hermitian, asymmetric coefficients, negative probability...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A diagonal J entry vanishes so the reduced matrix is undefined.
class DegenerateDetectionError : public Error {
 public:
  using Error::Error;
};

/// The engine cannot represent the supplied input (e.g. multi-occupied
/// input modes for the basis-expansion engine).
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the domain of a closed form (gamma outside [0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace indist

#endif  // INDIST_ERRORS_HPP_
