// Copyright 2026 The mpmue Authors
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

/// \file cli.hpp
/// Command-line front end. Subcommands: eval, fit, simulate, momcurve,
/// verify. Exit codes: 0 success, 1 a verification check failed, 2 bad
/// usage or bad input.

#ifndef MPMUE_CLI_HPP
#define MPMUE_CLI_HPP

#include <iosfwd>

namespace mpmue::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. Regular output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpmue::cli

#endif  // MPMUE_CLI_HPP
