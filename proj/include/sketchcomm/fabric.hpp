// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "sketchcomm/cost.hpp"
#include "sketchcomm/group.hpp"

namespace sketchcomm {

// In-process message-passing fabric. A program runs once per rank; the
// collectives below are the only channel between ranks. Two interchangeable
// backends execute it:
//
//   threaded  one OS thread per rank, bounded point-to-point mailboxes.
//   lockstep  every rank is a fiber on the calling thread; a round-based
//             scheduler resumes runnable ranks in ascending order, which makes
//             runs fully deterministic and lets it diagnose deadlocks.
//
// Both backends share the collective schedules (ring all-gather, direct
// reduce-scatter with ascending-rank summation, pairwise all-to-all), so they
// produce bit-identical results and identical word counts.

enum class Backend { threaded, lockstep };

std::string_view to_string(Backend b) noexcept;
Backend parse_backend(std::string_view text);

class FabricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no rank can make progress.
class DeadlockError : public FabricError {
 public:
  using FabricError::FabricError;
};

/// Raised when ranks disagree on a collective (kind, group, payload geometry).
class CollectiveMismatch : public FabricError {
 public:
  using FabricError::FabricError;
};

/// A rank's program threw; `cause()` holds the original exception.
class RankFailure : public FabricError {
 public:
  RankFailure(int rank, std::string what, std::exception_ptr cause);
  int rank() const noexcept { return rank_; }
  std::exception_ptr cause() const noexcept { return cause_; }

 private:
  int rank_;
  std::exception_ptr cause_;
};

namespace detail {

struct Message {
  std::uint64_t signature = 0;
  CollectiveKind kind = CollectiveKind::all_gather;
  std::vector<double> payload;
};

/// Describes the collective a blocked rank is inside, for diagnostics.
struct PendingOp {
  CollectiveKind kind = CollectiveKind::all_gather;
  std::string site;
  std::string group;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(int source, int destination, Message message, const PendingOp& op) = 0;
  virtual Message recv(int source, int destination, const PendingOp& op) = 0;
};

}  // namespace detail

class Communicator {
 public:
  Communicator(int rank, int world_size, Backend backend, detail::Transport& transport);

  Communicator(const Communicator&) = delete;
  Communicator& operator=(const Communicator&) = delete;

  int rank() const noexcept { return rank_; }
  int world_size() const noexcept { return world_size_; }
  Backend backend() const noexcept { return backend_; }

  /// Concatenation of every member's block in group order. All blocks must
  /// have the same length.
  std::vector<double> all_gather(std::span<const double> local, const Group& group,
                                 std::string_view site = "all-gather");

  /// The buffer is cut into Q equal contiguous segments; member q receives
  /// the element-wise sum of everyone's segment q, summed in ascending group
  /// order.
  std::vector<double> reduce_scatter(std::span<const double> local, const Group& group,
                                     std::string_view site = "reduce-scatter");

  /// chunks[q] goes to member q; the result holds one chunk per source in
  /// group order. Chunk lengths may differ.
  std::vector<std::vector<double>> all_to_all(std::vector<std::vector<double>> chunks,
                                              const Group& group,
                                              std::string_view site = "all-to-all");

  /// While paused, collectives still run but are left out of the cost report.
  void pause_meter() noexcept { ++pause_depth_; }
  void resume_meter() noexcept;
  bool metering() const noexcept { return pause_depth_ == 0; }

  const std::vector<CollectiveRecord>& records() const noexcept { return records_; }

 private:
  struct CallScope;

  std::size_t require_member(const Group& group) const;
  void send(int destination, detail::Message message);
  detail::Message recv(int source, CollectiveKind kind, const Group& group,
                       std::size_t expected_words, bool check_size);

  int rank_;
  int world_size_;
  Backend backend_;
  detail::Transport& transport_;
  int pause_depth_ = 0;
  detail::PendingOp current_;
  std::uint64_t sent_ = 0;
  std::uint64_t received_ = 0;
  std::uint64_t messages_ = 0;
  std::vector<CollectiveRecord> records_;
};

/// RAII meter pause.
class MeterPause {
 public:
  explicit MeterPause(Communicator& comm) noexcept : comm_(comm) { comm_.pause_meter(); }
  ~MeterPause() { comm_.resume_meter(); }
  MeterPause(const MeterPause&) = delete;
  MeterPause& operator=(const MeterPause&) = delete;

 private:
  Communicator& comm_;
};

struct SpmdOptions {
  /// Messages a (source, destination) mailbox holds before send blocks.
  std::size_t mailbox_capacity = 1024;
  std::size_t fiber_stack_bytes = std::size_t{1} << 20;
};

/// Runs `program` on ranks 0..P−1 and returns the merged cost report.
CostReport run_spmd_program(int world_size, Backend backend,
                            const std::function<void(Communicator&)>& program,
                            const SpmdOptions& options = {});

template <class R>
struct SpmdResult {
  std::vector<R> results;  // indexed by rank
  CostReport report;
};

template <class Program>
auto run_spmd(int world_size, Backend backend, Program&& program,
              const SpmdOptions& options = {}) {
  using Raw = std::invoke_result_t<Program&, Communicator&>;
  using R = std::conditional_t<std::is_void_v<Raw>, std::monostate, Raw>;
  std::vector<std::optional<R>> slots(world_size > 0 ? static_cast<std::size_t>(world_size) : 0);
  auto report = run_spmd_program(
      world_size, backend,
      [&](Communicator& comm) {
        if constexpr (std::is_void_v<Raw>) {
          program(comm);
          slots[comm.rank()].emplace();
        } else {
          slots[comm.rank()].emplace(program(comm));
        }
      },
      options);
  SpmdResult<R> out;
  out.results.reserve(slots.size());
  for (auto& s : slots) out.results.push_back(std::move(*s));
  out.report = std::move(report);
  return out;
}

}  // namespace sketchcomm
