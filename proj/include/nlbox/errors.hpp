// Copyright 2026 The nlbox Authors
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

namespace nlbox {

/// Base of every error raised by the library. The CLI maps these to exit
/// status 3; usage problems are reported separately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A variable label that does not exist in a distribution.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid arguments: overlapping label sets, mismatched
/// dimensions, bad mixture weights, cyclic wiring.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on evidence of zero probability.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition (independence, functional dependence) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Post-measurement update requested for a zero-probability outcome.
class UpdateError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the given alphabet (e.g. non-binary outputs).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration would exceed the configured size limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlbox
