// Copyright 2026 The joinrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace joinrank {

// Base of every error the library throws. Subclasses map onto the CLI
// exit codes: ConfigError -> 1, DataError -> 2, ProviderError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid option combinations, e.g. an Exact search against a bundle that
// was built without an inverted index.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed input data: CSV files, ground truth, bundles.
class DataError : public Error {
 public:
  using Error::Error;
};

// On-disk bundle problems (version mismatch, truncation). The message names
// the file and field that failed.
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// Inputs that violate an operation's precondition (dimension mismatch,
// non-rectangular decision matrix, weight sums).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The embedding provider failed (network, timeout, non-200 status).
class ProviderError : public Error {
 public:
  using Error::Error;
};

// The embedding service answered, but not in the agreed wire format.
class ProtocolError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

}  // namespace joinrank
