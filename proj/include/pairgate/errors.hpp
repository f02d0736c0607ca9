// Copyright 2026 The pairgate Authors
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

namespace pairgate {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index or parameter lies outside the retained (truncated) space.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A vector that must be normalized is not.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The Fock-space truncation is too small for the requested accuracy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Sideband order incompatible with the Fock components being evolved.
class SidebandOrderError : public Error {
 public:
  using Error::Error;
};

/// lambda_+ == lambda_- where a formula divides by their splitting.
class DegenerateSplitting : public Error {
 public:
  using Error::Error;
};

/// Iterative solver or integrator failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Spins and motional bus did not factorize after a gate.
class BusEntangled : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairgate
