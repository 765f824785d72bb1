// Copyright 2026 The qmermin Authors
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

namespace qmermin {

// Base class for domain errors raised by the library. Argument validation
// failures use std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OrderMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CoefficientOverflowError : public Error {
 public:
  using Error::Error;
};

// A result that should be proportional to a target state is not.
class NotEigenstateError : public Error {
 public:
  using Error::Error;
};

// An eigenphase was requested for a word that does not stabilize the state.
class NotEigenoperatorError : public Error {
 public:
  using Error::Error;
};

class SearchCapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmermin
