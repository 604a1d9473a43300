// Copyright 2026 The opd Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opd {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad run configuration (unknown key, invalid threshold, missing path).
struct ConfigError : Error {
  using Error::Error;
};

/// Unreadable or malformed input data.
struct InputError : Error {
  using Error::Error;
};

/// Raster grids that do not line up, or an empty stack.
struct ShapeError : InputError {
  using InputError::InputError;
};

/// Numeric argument outside its domain (non-finite dB, bad level).
struct ValueError : InputError {
  using InputError::InputError;
};

/// Text record that cannot be parsed; carries the 1-based line number.
struct ParseError : InputError {
  ParseError(const std::string& msg, std::size_t line)
      : InputError(msg + " (line " + std::to_string(line) + ")"),
        line_no(line) {}
  std::size_t line_no;
};

/// Query point or box entirely outside a raster footprint.
struct FootprintError : InputError {
  using InputError::InputError;
};

/// Tabular input whose columns do not match the documented schema.
struct SchemaError : InputError {
  using InputError::InputError;
};

/// Filesystem failure while reading or writing.
struct IoError : InputError {
  using InputError::InputError;
};

/// Synthetic-scene spec that violates a generator invariant.
struct SpecError : InputError {
  using InputError::InputError;
};

/// Pipeline stage failure; remembers which stage and unit went wrong.
struct StageError : Error {
  StageError(const std::string& stage, const std::string& unit,
             const std::string& msg)
      : Error("stage " + stage + (unit.empty() ? "" : " [" + unit + "]") +
              ": " + msg),
        stage_name(stage),
        unit_name(unit) {}
  std::string stage_name;
  std::string unit_name;
};

}  // namespace opd
