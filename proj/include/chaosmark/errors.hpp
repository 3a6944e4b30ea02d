#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaosmark {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The watermark does not fit into the carrier's LSC channel, or probing ran
/// out of free positions.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: image files, key files, grid configs.
class ParseError : public Error {
 public:
  enum class Kind {
    BadMagic,
    MalformedHeader,
    MaxvalUnsupported,
    TruncatedPayload,
    BadPixel,
    UnknownField,
    MissingField,
    BadValue,
    Io,
  };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(std::string(kind_name(kind)) + " at byte " + std::to_string(offset) + ": " + what),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

  static const char* kind_name(Kind kind) noexcept {
    switch (kind) {
      case Kind::BadMagic: return "BadMagic";
      case Kind::MalformedHeader: return "MalformedHeader";
      case Kind::MaxvalUnsupported: return "MaxvalUnsupported";
      case Kind::TruncatedPayload: return "TruncatedPayload";
      case Kind::BadPixel: return "BadPixel";
      case Kind::UnknownField: return "UnknownField";
      case Kind::MissingField: return "MissingField";
      case Kind::BadValue: return "BadValue";
      case Kind::Io: return "Io";
    }
    return "ParseError";
  }

 private:
  Kind kind_;
  std::size_t offset_;
};

}  // namespace chaosmark
