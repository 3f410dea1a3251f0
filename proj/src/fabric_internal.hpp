// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sketchcomm/fabric.hpp"

namespace sketchcomm::detail {

/// Thrown inside a rank to unwind it after another rank failed or the run
/// deadlocked. Deliberately not a std::exception.
struct RunAborted {};

struct RunOutcome {
  std::vector<std::exception_ptr> errors;  // indexed by rank, null if clean
  std::optional<std::string> deadlock;
  std::size_t leftover_messages = 0;
};

using Program = std::function<void(Communicator&)>;

RunOutcome run_threaded(int world_size, const Program& program, const SpmdOptions& options,
                        std::vector<CollectiveRecord>& records);
RunOutcome run_lockstep(int world_size, const Program& program, const SpmdOptions& options,
                        std::vector<CollectiveRecord>& records);

std::string describe(const PendingOp& op);

}  // namespace sketchcomm::detail
