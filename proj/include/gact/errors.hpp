/*
 * Copyright 2026 The gact authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */
#pragma once

#include <stdexcept>
#include <string>

namespace gact {

/// Base of every exception thrown by the core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad ids, wrong shapes, violated preconditions).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// JSON document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured element budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A construction was asked for something that does not exist (no map, no δ, ...).
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gact
