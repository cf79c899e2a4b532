#pragma once

#include <stdexcept>
#include <string>

namespace topent {

enum class ErrorKind {
  kInput,       // precondition violated by the caller
  kFormat,      // malformed text/CSV/JSON input
  kSize,        // too few / too many elements for the operation
  kValidation,  // well-formed input that breaks a domain invariant
  kResource,    // configured budget exceeded
  kInternal,    // an invariant of the library itself failed
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TOPENT_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

TOPENT_DEFINE_ERROR(InputError, kInput)
TOPENT_DEFINE_ERROR(FormatError, kFormat)
TOPENT_DEFINE_ERROR(SizeError, kSize)
TOPENT_DEFINE_ERROR(ValidationError, kValidation)
TOPENT_DEFINE_ERROR(ResourceError, kResource)
TOPENT_DEFINE_ERROR(InternalError, kInternal)

#undef TOPENT_DEFINE_ERROR

}  // namespace topent
