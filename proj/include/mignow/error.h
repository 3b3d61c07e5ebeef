/*
 * Copyright 2026 The Mignow Authors.
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

#ifndef MIGNOW_ERROR_H_
#define MIGNOW_ERROR_H_

#include <stdexcept>
#include <string>

namespace mignow {

// Broad failure classes. The CLI maps each class to a process exit code.
enum class ErrorKind {
  kInput,      // Malformed or invalid input data, missing files.
  kNumerical,  // Rank deficiency, zero variance, non-finite values.
  kInvariant,  // Internal consistency check failed.
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error InputError(const std::string& message) {
  return Error(ErrorKind::kInput, message);
}

inline Error NumericalError(const std::string& message) {
  return Error(ErrorKind::kNumerical, message);
}

inline Error InvariantError(const std::string& message) {
  return Error(ErrorKind::kInvariant, message);
}

}  // namespace mignow

#endif  // MIGNOW_ERROR_H_
