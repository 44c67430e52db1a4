#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace susyqm {

/// Broad failure classes. The CLI maps these onto exit codes 1, 2 and 3.
enum class ErrorCategory { Input = 1, Numeric = 2, Io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

#define SUSYQM_DEFINE_ERROR(Name, Base)                          \
  class Name : public Base {                                     \
   public:                                                       \
    explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
  }

SUSYQM_DEFINE_ERROR(InvalidUnits, InputError);
SUSYQM_DEFINE_ERROR(InvalidGrid, InputError);
SUSYQM_DEFINE_ERROR(InvalidShift, InputError);
SUSYQM_DEFINE_ERROR(InvalidParameter, InputError);
SUSYQM_DEFINE_ERROR(SingularOnGrid, InputError);
SUSYQM_DEFINE_ERROR(GridMismatch, InputError);
SUSYQM_DEFINE_ERROR(InterfaceOffGrid, InputError);
SUSYQM_DEFINE_ERROR(ChannelClosed, InputError);
SUSYQM_DEFINE_ERROR(UnknownKey, InputError);
SUSYQM_DEFINE_ERROR(MissingRequired, InputError);

SUSYQM_DEFINE_ERROR(NonAsymptotic, NumericError);
SUSYQM_DEFINE_ERROR(NotConverged, NumericError);
SUSYQM_DEFINE_ERROR(ImmediateBlowup, NumericError);
SUSYQM_DEFINE_ERROR(BlowupInsideGrid, NumericError);

#undef SUSYQM_DEFINE_ERROR

/// Malformed configuration text; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("ParseError: line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Wraps an error raised by one item of a batch (an energy of a sweep, a
/// partner of a pair) and keeps the category of the original failure.
class TaggedError : public Error {
 public:
  TaggedError(std::string tag, std::size_t index, const Error& inner)
      : Error(inner.category(), tag + " " + std::to_string(index) + ": " + inner.what()),
        tag_(std::move(tag)),
        index_(index) {}

  const std::string& tag() const noexcept { return tag_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::string tag_;
  std::size_t index_;
};

}  // namespace susyqm
