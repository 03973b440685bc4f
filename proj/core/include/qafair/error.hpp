// Copyright 2026 The qafair Authors
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

namespace qafair {

// Malformed or inconsistent input data (model files, embeddings, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model exceeds the exhaustive-enumeration guard.
class SizeGuardError : public InputError {
 public:
  using InputError::InputError;
};

// Integration drifted beyond the accuracy budget; more steps are needed.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A validation clause failed.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qafair
