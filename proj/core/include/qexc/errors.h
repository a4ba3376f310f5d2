// Copyright 2026 The qexc Authors
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

#ifndef QEXC_ERRORS_H
#define QEXC_ERRORS_H

#include <stdexcept>
#include <string>

namespace qexc {

/// Operands disagree on qubit count or length.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (e.g. j == k for E_jk).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mixing exact and float state vectors in one operation.
struct ModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string &msg, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          message(msg),
          line(line),
          column(column) {
    }
    std::string message;
    int line;
    int column;
};

/// Requested work exceeds what the brute-force routines are sized for.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qexc

#endif  // QEXC_ERRORS_H
