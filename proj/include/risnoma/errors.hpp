// SPDX-License-Identifier: Apache-2.0
//
// risnoma - link-level simulation of RIS-assisted code-domain NOMA uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace risnoma {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Iterative eigen-solve missed its residual target within the budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

class DecompositionFailure : public Error {
public:
    using Error::Error;
};

// Cholesky hit a non-positive pivot.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

class InvalidDimensions : public Error {
public:
    using Error::Error;
};

class DesignFailure : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace risnoma
