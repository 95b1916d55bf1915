// Copyright 2026 The thermoqbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Exception types shared by every thermoqbe module.

#include <stdexcept>
#include <string>
#include <vector>

namespace thermoqbe {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation
/// (non-positive temperature, momentum beyond the Debye cutoff, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration. Carries every violated field, not just the first.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Composite Simpson rule did not meet its Richardson tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// Hard failure inside the separated solver (NaN, overflow, singular factor).
class SolverError : public Error {
public:
    SolverError(const std::string& what, int iteration = -1)
        : Error(what), iteration_(iteration) {}
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

} // namespace thermoqbe
