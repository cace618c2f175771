// Copyright 2026 The multicon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace multicon {

/// Base of every exception thrown by the library.
///
/// Two families exist: `DomainError` for conditions that are a property of
/// the input problem (infeasible layer, complex spectrum, ...) and
/// `InputError` for malformed data (bad indices, parse failures, I/O).
/// The CLI maps the first to exit code 1 and the second to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

// --- input errors -----------------------------------------------------------

class InvalidGraph : public InputError {
 public:
  using InputError::InputError;
};

class InvalidNode : public InputError {
 public:
  using InputError::InputError;
};

class InvalidPartition : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// --- domain errors ----------------------------------------------------------

class Infeasible : public DomainError {
 public:
  using DomainError::DomainError;
};

class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

class InsufficientSources : public DomainError {
 public:
  using DomainError::DomainError;
};

class SignViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotEquitable : public DomainError {
 public:
  using DomainError::DomainError;
};

class ComplexSpectrum : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyDifference : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonConvergence : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonFinite : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised for states that valid input can never produce (e.g. a singular
/// grounded block in a reach decomposition).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace multicon
