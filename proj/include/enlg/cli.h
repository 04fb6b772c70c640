// Copyright 2026 The enlg Authors.
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

#ifndef ENLG_CLI_H_
#define ENLG_CLI_H_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "enlg/error.h"
#include "enlg/optimize.h"

namespace enlg {

// Process exit statuses of the command-line front end.
enum ExitStatus : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitDimension = 4,
  kExitResidual = 5,
  kExitUnsupported = 6,
};

int ExitStatusFor(ErrorCode code);

// Parses "1x1,2x2" into ancilla pairs; a bare "N" means (N, 1).
std::vector<AncillaDims> ParseDimsList(const std::string& text);

// Runs one command. Line 1 of `out` is always a single-line JSON summary.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace enlg

#endif  // ENLG_CLI_H_
