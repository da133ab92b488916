#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mera {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& reason)
      : Error("schema error at '" + field + "': " + reason),
        field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DisconnectedDevice : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

class ZeroShots : public Error {
 public:
  using Error::Error;
};

class OccupiedPhysical : public Error {
 public:
  using Error::Error;
};

class AlreadyMapped : public Error {
 public:
  using Error::Error;
};

class DeviceTooSmall : public Error {
 public:
  using Error::Error;
};

class RoutingStalled : public Error {
 public:
  using Error::Error;
};

class NoCandidates : public Error {
 public:
  using Error::Error;
};

class TooManyQubits : public Error {
 public:
  using Error::Error;
};

class EmptyCounts : public Error {
 public:
  using Error::Error;
};

class NotRUS : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace mera
