// Copyright 2026 The haarmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace haarmagic {

// Invalid arguments or configuration (bad qubit index, malformed config).
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(const std::string &msg) : std::invalid_argument(msg) {}
};

// Request exceeds what an operation supports (e.g. too many qubits).
class CapabilityError : public std::runtime_error {
  public:
    explicit CapabilityError(const std::string &msg) : std::runtime_error(msg) {}
};

// Numeric input that violates a data contract (non-finite, unnormalized, ...).
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string &msg) : std::runtime_error(msg) {}
};

// Failure reading or writing campaign outputs.
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace haarmagic
