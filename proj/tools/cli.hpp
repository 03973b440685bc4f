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

#include <iosfwd>

namespace qafair::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kValidationFailure = 3,
  kAccuracyFailure = 4,
};

/// Entry point behind the `qafair` binary. Subcommands: solve, anneal, embed,
/// pt, validate, reproduce. Never throws; maps failures to ExitCode.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qafair::cli
