// Copyright 2026 The roipca Authors. All Rights Reserved.
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

#ifndef ROIPCA_ERROR_H_
#define ROIPCA_ERROR_H_

#include <stdexcept>
#include <string>

namespace roipca {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values, dimension mismatches, illegal configurations.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A secular root could not be isolated within the iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// A root landed on a pole of an eigenvector formula.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace roipca

#endif  // ROIPCA_ERROR_H_
