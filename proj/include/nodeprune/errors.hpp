#pragma once

#include <stdexcept>
#include <string>

namespace nodeprune {

/// Raised when array dimensions disagree (params vs. input, X vs. Y, ...).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problems with user-supplied data files.
class DataError : public std::runtime_error {
 public:
  enum class Kind { kMissingFile, kMalformedRow, kBadValue, kUnknownColumn, kEmpty };

  DataError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// The selection pipeline could not produce any usable fit.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nodeprune
