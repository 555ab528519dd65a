// Copyright 2026 The passv Authors.
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

namespace passv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mode count or matrix dimension is zero or otherwise unusable.
class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input data failed a numerical validity check (unitarity, normalization).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds a cost or memory guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Annihilating a photon from the vacuum: the resulting state is zero.
class ZeroStateError : public Error {
 public:
  using Error::Error;
};

/// A distribution was requested from a state with zero norm.
class UndefinedDistribution : public Error {
 public:
  using Error::Error;
};

}  // namespace passv
