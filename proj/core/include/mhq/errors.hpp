#pragma once

#include <stdexcept>
#include <string>

namespace mhq {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class UnsupportedIndex : public Error {
  public:
    using Error::Error;
};

class InvalidSpec : public Error {
  public:
    using Error::Error;
};

class InvalidParams : public Error {
  public:
    using Error::Error;
};

class UnnormalizedState : public Error {
  public:
    using Error::Error;
};

class DegenerateComplement : public Error {
  public:
    using Error::Error;
};

class NotRankOne : public Error {
  public:
    using Error::Error;
};

class InvalidDistribution : public Error {
  public:
    using Error::Error;
};

class DegenerateTable : public Error {
  public:
    using Error::Error;
};

}  // namespace mhq
