// Copyright 2026 The sicforge Authors
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

#ifndef SICFORGE_ERROR_HPP
#define SICFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sicforge {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible size (Hilbert-space dimension, operator count).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition of the operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-incompatible serialized data.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sicforge

#endif  // SICFORGE_ERROR_HPP
