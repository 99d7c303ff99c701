// Copyright 2026 The phasefilter Authors
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

#ifndef PHASEFILTER_ERRORS_HPP_
#define PHASEFILTER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace phasefilter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (odd grid size, negative width, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different lattices.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A state has significant amplitude at the edge of its grid.
class ClippingError : public Error {
 public:
  using Error::Error;
};

/// The discrete transform produced an imaginary residue above tolerance,
/// which signals an undersampled (aliased) or inconsistent input.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// Scenario text could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace phasefilter

#endif  // PHASEFILTER_ERRORS_HPP_
