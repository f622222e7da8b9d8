/******************************************************************************
 * Copyright 2026 The pexcite Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace pexcite {

/// Window or index outside the available signal horizon.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Matrix or signal dimensions that do not conform.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain, e.g. asking for a
/// perturbation radius of a signal that is not persistently exciting.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A system failed a structural certificate (stability or reachability).
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace pexcite
