// Copyright 2026 The rankone Authors
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
#include <utility>
#include <vector>

namespace rankone {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RANKONE_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

RANKONE_DEFINE_ERROR(RowCapExceeded);
RANKONE_DEFINE_ERROR(DimensionCapExceeded);
RANKONE_DEFINE_ERROR(NotBounded);
RANKONE_DEFINE_ERROR(RecessionConditionViolated);
RANKONE_DEFINE_ERROR(FamilyCapExceeded);
RANKONE_DEFINE_ERROR(NoLowerBounds);
RANKONE_DEFINE_ERROR(StructureMismatch);
RANKONE_DEFINE_ERROR(OutOfRange);
RANKONE_DEFINE_ERROR(ParamError);
RANKONE_DEFINE_ERROR(SizeGuardExceeded);
RANKONE_DEFINE_ERROR(NumericalFailure);
RANKONE_DEFINE_ERROR(IoError);

#undef RANKONE_DEFINE_ERROR

// Raised when an instance file does not match the expected JSON layout.
// `path` is a JSON-pointer-like location such as "/arcs/3/u".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Raised when an instance parses but violates model invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "instance validation failed:";
    for (const auto& p : v) out += "\n  - " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

}  // namespace rankone
