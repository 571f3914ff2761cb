// SPDX-License-Identifier: Apache-2.0
//
// coherent-frames: certified numerics for coherent frames on finite groups
// Copyright (C) 2026 The coherent-frames authors
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

namespace coherent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A group operation left the carrier of a truncated group.
class OutOfCarrier : public Error {
public:
    using Error::Error;
};

class NonSymmetricNeighborhood : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ZeroWindow : public Error {
public:
    using Error::Error;
};

// mollify_window produced a numerically vanishing vector.
class ZeroResult : public Error {
public:
    using Error::Error;
};

// The system does not span the Hilbert space (lower frame bound is zero).
class NotAFrame : public Error {
public:
    using Error::Error;
};

class NotPositive : public Error {
public:
    using Error::Error;
};

// Even the largest candidate set in an L-family misses the HAP threshold.
class NoAdmissibleL : public Error {
public:
    using Error::Error;
};

class HapPreconditionUnmet : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::string field)
        : Error("invalid or missing field: " + field), field_(std::move(field)) {}
    ValidationError(std::string field, const std::string& detail)
        : Error("invalid field " + field + ": " + detail), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace coherent
