// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace sketchcomm::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_verification = 3;
inline constexpr int exit_deadlock = 4;

/// Entry point of the `sketchcomm` tool. Subcommands: sketch, nystrom,
/// bounds, kernel. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sketchcomm::cli
