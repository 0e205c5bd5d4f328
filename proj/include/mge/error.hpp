// Copyright 2026 The mge Authors. All Rights Reserved.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mge {

/// Base of every data or metric error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An error tied to a location in an input file. line is 1-based; 0 means
/// "not line specific".
class LocatedError : public Error {
 public:
  LocatedError(const std::string& kind, std::size_t line, std::string column,
               const std::string& what)
      : Error(Format(kind, line, column, what)),
        line_(line),
        column_(std::move(column)) {}

  std::size_t line() const { return line_; }
  const std::string& column() const { return column_; }

 private:
  static std::string Format(const std::string& kind, std::size_t line,
                            const std::string& column,
                            const std::string& what) {
    std::string msg = kind;
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!column.empty()) msg += " (" + column + ")";
    msg += ": " + what;
    return msg;
  }

  std::size_t line_;
  std::string column_;
};

class DecodeError : public LocatedError {
 public:
  DecodeError(std::size_t line, const std::string& what)
      : LocatedError("DecodeError", line, "", what) {}
};

class SchemaError : public LocatedError {
 public:
  SchemaError(std::size_t line, std::string column, const std::string& what)
      : LocatedError("SchemaError", line, std::move(column), what) {}
};

class ValueError : public LocatedError {
 public:
  ValueError(std::size_t line, std::string column, const std::string& what)
      : LocatedError("ValueError", line, std::move(column), what) {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t hypotheses, std::size_t entries)
      : Error("LengthMismatch: " + std::to_string(hypotheses) +
              " hypothesis lines for " + std::to_string(entries) +
              " corpus entries") {}
};

class SliceMismatch : public Error {
 public:
  explicit SliceMismatch(const std::string& what)
      : Error("SliceMismatch: " + what) {}
};

class UnknownLabel : public LocatedError {
 public:
  UnknownLabel(std::size_t line, const std::string& label)
      : LocatedError("UnknownLabel", line, "LABEL",
                     "'" + label + "' is not a valid label") {}
};

class UnknownRecord : public LocatedError {
 public:
  UnknownRecord(std::size_t line, const std::string& what)
      : LocatedError("UnknownRecord", line, "", what) {}
};

class DuplicateRecord : public LocatedError {
 public:
  DuplicateRecord(std::size_t line, const std::string& what)
      : LocatedError("DuplicateRecord", line, "", what) {}
};

class EmptySet : public Error {
 public:
  explicit EmptySet(const std::string& what) : Error("EmptySet: " + what) {}
};

class DegenerateDistribution : public Error {
 public:
  DegenerateDistribution()
      : Error(
            "DegenerateDistribution: every item carries the same label in "
            "both annotations, so expected agreement is 1 and pi is "
            "undefined") {}
};

class EmptySets : public Error {
 public:
  EmptySets() : Error("EmptySets: both chain sets are empty") {}
};

class InfeasibleSpec : public Error {
 public:
  explicit InfeasibleSpec(const std::string& what)
      : Error("InfeasibleSpec: " + what) {}
};

}  // namespace mge
