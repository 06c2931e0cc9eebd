#pragma once

#include <stdexcept>
#include <string>

namespace kmax {

// Every error raised by the library derives from kmax::Error so callers can
// catch the family or an individual condition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class UnknownInstance : public Error {
 public:
  explicit UnknownInstance(const std::string& name)
      : Error("unknown builtin instance '" + name + "' (expected D1, D2 or D3)") {}
};

class DegenerateMass : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class InfiniteGap : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kmax
