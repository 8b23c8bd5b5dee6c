#pragma once

#include <stdexcept>
#include <string>

namespace coorbit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A dilation parameter violates its family chart.
class InvalidElement : public Error {
public:
  using Error::Error;
};

/// Two group elements (or grids) belong to different families.
class FamilyMismatch : public Error {
public:
  using Error::Error;
};

/// A point lies outside the domain of a function (e.g. off the dual orbit).
class DomainError : public Error {
public:
  using Error::Error;
};

/// The operation is not defined for the given family.
class Unsupported : public Error {
public:
  using Error::Error;
};

/// Sampled data live on incompatible grids.
class GridMismatch : public Error {
public:
  using Error::Error;
};

/// Parameter out of range.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Malformed or unreadable file.
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace coorbit
