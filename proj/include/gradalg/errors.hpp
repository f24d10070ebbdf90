#pragma once

#include <stdexcept>
#include <string>

namespace gradalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two semigroup indices of different kinds were combined.
class VariantMismatch : public Error {
public:
  using Error::Error;
};

/// Elements belonging to different algebras were combined.
class AlgebraMismatch : public Error {
public:
  using Error::Error;
};

/// A level pair (p, q) violates p > q + gap.
class LevelGapError : public Error {
public:
  using Error::Error;
};

/// A sum, product or integral that was requested does not converge.
class DivergenceError : public Error {
public:
  using Error::Error;
};

/// The weight family is not submultiplicative, so no coupling constant exists.
class NotStrongAlgebra : public Error {
public:
  using Error::Error;
};

/// No admissible level pair was found within the scanned range.
class NoLevelError : public Error {
public:
  using Error::Error;
};

/// A power series has infinitely many terms but no usable tail bound.
class CertificationError : public Error {
public:
  using Error::Error;
};

/// The element is provably not invertible.
class NotInvertible : public Error {
public:
  using Error::Error;
};

/// Invertibility could neither be certified nor refuted.
class Inconclusive : public Error {
public:
  using Error::Error;
};

/// Support growth hit the user supplied cap.
class SupportCapExceeded : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace gradalg
