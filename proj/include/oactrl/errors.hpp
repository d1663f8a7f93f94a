// Copyright 2026 The oactrl Authors
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

namespace oactrl {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A precondition on an argument was violated (bad prime, zero inverse, ...). */
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/** Malformed text input: ragged rows, unknown tokens, bad numbers. */
class ParseError : public Error {
 public:
  using Error::Error;
};

/** An array or scheme failed the property it claims to have. */
class VerificationError : public Error {
 public:
  using Error::Error;
};

/** Desk-scale size guard tripped (dense dimension too large, etc). */
class GuardError : public Error {
 public:
  using Error::Error;
};

/** An iterative numerical routine did not converge. */
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace oactrl
