// Copyright 2026 The qpclass Authors
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

namespace qpclass {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of mismatched length (pattern vs pattern, input vs training set).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value type was constructed from data that violates its invariants.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A gate was applied at the wrong point of the ψ0 → ψ4 sequence.
class StageError : public Error {
 public:
  using Error::Error;
};

/// Out-of-domain configuration value (k > N, ε <= 0, oversized subset, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Every training pattern sits at a cosine zero, so P(0_a) vanishes.
class PostselectionImpossible : public Error {
 public:
  using Error::Error;
};

/// P(0_a) > 0 but no simulated shot measured the ancilla in |0>.
class PostselectionExhausted : public Error {
 public:
  using Error::Error;
};

/// Dense oracle asked for more qubits than it allows.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// IDX container errors. Grouped under DataError so the CLI can map them to
// the data-format exit code.
class DataError : public Error {
 public:
  using Error::Error;
};

class FormatError : public DataError {
 public:
  using DataError::DataError;
};

class LengthError : public DataError {
 public:
  using DataError::DataError;
};

class ValueError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace qpclass
