#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pubrank {

/// Base of every fatal error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An input table or record stream does not follow its declared format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Inputs parsed but violate a cross-record rule (duplicates, cycles, dangling references).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Artifacts built from different inputs were combined.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// A raw publisher string matched no registry variant.
class UnresolvedPublisherError : public Error {
 public:
  explicit UnresolvedPublisherError(std::string folded)
      : Error("unresolved publisher: \"" + folded + "\""), folded_(std::move(folded)) {}

  const std::string& folded() const noexcept { return folded_; }

 private:
  std::string folded_;
};

}  // namespace pubrank
