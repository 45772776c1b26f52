// Copyright 2026 The catbell Authors
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

namespace catbell {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (bad family, negative amplitude,
/// odd cat at zero amplitude, non-finite coordinates, g <= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated Fock representation cannot hold the requested state or
/// displacement within the declared tail bound.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace catbell
