// Copyright 2026 The wcelab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace wce {

enum class ErrorKind {
  EmptySpace,
  NonpositiveWeight,
  NotAPartition,
  SpaceMismatch,
  NotSelfAdjoint,
  NotPositive,
  NotMeasurable,
  NotNormal,
  NotFiberMeasurable,
  ConfigInvalid,
  ParseError,
  NonFiniteValue,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind mirrors the error names of
/// the public operations; the message carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wce
