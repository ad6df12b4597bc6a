//------------------------------------------------------------------------------
//
//   Copyright 2026 The qbsc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbsc {

/// Process exit codes. Usage errors and failed numerical validations are
/// kept distinct so scripts can tell them apart.
enum ExitCode : int {
  kExitOk = 0,
  kExitSessionRejected = 1,
  kExitUsage = 2,
  kExitValidationFailed = 3,
};

/// Entry point behind the qbsc binary; `args` excludes the program name.
/// Data output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qbsc
