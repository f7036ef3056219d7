// Copyright 2026 The ICAR Authors
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

#ifndef ICAR_ERRORS_HPP_
#define ICAR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace icar {

// Base of every error raised by the library. Findings (validation results)
// are returned as data, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Paths whose endpoints do not line up.
class CompositionError : public Error {
 public:
  CompositionError(const std::string& end_of_first,
                   const std::string& start_of_second)
      : Error("cannot compose: first path ends at '" + end_of_first +
              "' but second starts at '" + start_of_second + "'"),
        end_of_first_(end_of_first),
        start_of_second_(start_of_second) {}

  const std::string& end_of_first() const { return end_of_first_; }
  const std::string& start_of_second() const { return start_of_second_; }

 private:
  std::string end_of_first_;
  std::string start_of_second_;
};

// Caller handed in something structurally wrong (namespace mismatch,
// malformed path, invalid interval...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaMismatchError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  NormalizationError(const std::string& ns, const std::string& raw)
      : Error("cannot normalize '" + raw + "' as " + ns + " identifier"),
        ns_(ns),
        raw_(raw) {}

  const std::string& ns() const { return ns_; }
  const std::string& raw() const { return raw_; }

 private:
  std::string ns_;
  std::string raw_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

// Migration requested along a schema morphism outside the implemented class.
class UnsupportedMorphismError : public Error {
 public:
  using Error::Error;
};

class TypingError : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

}  // namespace icar

#endif  // ICAR_ERRORS_HPP_
