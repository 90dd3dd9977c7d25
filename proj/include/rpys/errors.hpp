// Copyright 2026 The rpys Authors. All Rights Reserved.
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

#include <cstddef>
#include <exception>
#include <string>

namespace rpys {

// Base of every error the library throws. Context can be prepended while the
// exception propagates (e.g. the script engine adds the failing command)
// without changing its dynamic type.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  void add_context(const std::string& context) {
    message_ = context + ": " + message_;
  }

 private:
  std::string message_;
};

// Bad parameter or violated type invariant (YearRange lo > hi, threshold
// outside [0,1], marker without author+year or DOI, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// File framing or content problems in a bibliographic export.
class MalformedFile : public Error {
 public:
  MalformedFile(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyLine : public Error {
 public:
  EmptyLine() : Error("cited reference line is empty") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

class WindowTooLarge : public Error {
 public:
  WindowTooLarge(std::size_t window, std::size_t length)
      : Error("median window " + std::to_string(window) +
              " exceeds series length " + std::to_string(length)) {}
};

class EmptySeries : public Error {
 public:
  using Error::Error;
};

}  // namespace rpys
