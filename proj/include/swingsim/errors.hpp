#ifndef SWINGSIM_ERRORS_HPP
#define SWINGSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swingsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter outside its physical/model domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Config text could not be parsed (syntax, unknown key, bad literal).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Config parsed but violates an invariant; message names key and constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Leg/wheel geometry with a non-positive load-balance denominator.
class SingularConfigError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// Line sensor lost the reference path.
class PathLostError : public Error {
 public:
  using Error::Error;
};

}  // namespace swingsim

#endif
