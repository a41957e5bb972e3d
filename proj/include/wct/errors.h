/*
 * Copyright 2026 The WCT Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef WCT_ERRORS_H_
#define WCT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wct {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration (bad level count, bad block size...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be processed (bad shapes, single-class folds...).
class DataError : public Error {
 public:
  using Error::Error;
};

// PGM decoding failure. `offset` is the byte position where parsing stopped.
class PgmError : public DataError {
 public:
  enum class Kind { kMalformedHeader, kMaxvalTooLarge, kTruncatedPayload, kBadValue };

  PgmError(Kind kind, std::size_t offset, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

}  // namespace wct

#endif  // WCT_ERRORS_H_
