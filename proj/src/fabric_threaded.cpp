// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>

#include "fabric_internal.hpp"

namespace sketchcomm::detail {

namespace {

enum class RankState { running, blocked_recv, blocked_send, finished };

// One mutex guards every mailbox. Ranks only contend on it for the
// push/pop, which is cheap next to the local compute between collectives.
class ThreadedTransport final : public Transport {
 public:
  ThreadedTransport(int world_size, std::size_t capacity)
      : p_(world_size),
        capacity_(capacity),
        boxes_(static_cast<std::size_t>(world_size) * world_size),
        wakeups_(static_cast<std::size_t>(world_size)),
        state_(static_cast<std::size_t>(world_size), RankState::running),
        peer_(static_cast<std::size_t>(world_size), -1),
        ops_(static_cast<std::size_t>(world_size)) {}

  void send(int source, int destination, Message message, const PendingOp& op) override {
    std::unique_lock lock(mu_);
    auto& box = box_of(source, destination);
    while (box.size() >= capacity_ && !aborted_) {
      block(lock, source, RankState::blocked_send, destination, op);
    }
    if (aborted_) throw RunAborted{};
    state_[source] = RankState::running;
    box.push_back(std::move(message));
    wakeups_[destination].notify_one();
  }

  Message recv(int source, int destination, const PendingOp& op) override {
    std::unique_lock lock(mu_);
    auto& box = box_of(source, destination);
    while (box.empty() && !aborted_) {
      block(lock, destination, RankState::blocked_recv, source, op);
    }
    if (aborted_) throw RunAborted{};
    state_[destination] = RankState::running;
    Message m = std::move(box.front());
    box.pop_front();
    wakeups_[source].notify_one();
    return m;
  }

  void finish(int rank, bool failed) {
    std::lock_guard lock(mu_);
    state_[rank] = RankState::finished;
    if (failed) {
      abort_locked();
    } else if (all_stuck()) {
      deadlock_ = report_locked();
      abort_locked();
    }
  }

  std::optional<std::string> deadlock() const { return deadlock_; }

  std::size_t leftover() const {
    std::size_t n = 0;
    for (const auto& b : boxes_) n += b.size();
    return n;
  }

 private:
  std::deque<Message>& box_of(int source, int destination) {
    return boxes_[static_cast<std::size_t>(source) * p_ + destination];
  }

  void block(std::unique_lock<std::mutex>& lock, int rank, RankState why, int peer,
             const PendingOp& op) {
    state_[rank] = why;
    peer_[rank] = peer;
    ops_[rank] = op;
    if (all_stuck()) {
      deadlock_ = report_locked();
      abort_locked();
      return;
    }
    wakeups_[rank].wait(lock);
  }

  // True when no unfinished rank can make progress. A rank that was notified
  // but has not yet rechecked its condition does not count as stuck.
  bool all_stuck() {
    bool any_live = false;
    for (int r = 0; r < p_; ++r) {
      switch (state_[r]) {
        case RankState::finished: break;
        case RankState::running: return false;
        case RankState::blocked_recv:
          if (!box_of(peer_[r], r).empty()) return false;
          any_live = true;
          break;
        case RankState::blocked_send:
          if (box_of(r, peer_[r]).size() < capacity_) return false;
          any_live = true;
          break;
      }
    }
    return any_live;
  }

  std::string report_locked() {
    std::string out = "deadlock: no rank can make progress;";
    for (int r = 0; r < p_; ++r) {
      out += " rank " + std::to_string(r);
      switch (state_[r]) {
        case RankState::finished: out += " finished;"; break;
        case RankState::running: out += " running;"; break;
        case RankState::blocked_recv:
          out += " waits in " + describe(ops_[r]) + " for rank " + std::to_string(peer_[r]) + ";";
          break;
        case RankState::blocked_send:
          out += " cannot send in " + describe(ops_[r]) + " to rank " +
                 std::to_string(peer_[r]) + " (mailbox full);";
          break;
      }
    }
    out.pop_back();
    return out;
  }

  void abort_locked() {
    aborted_ = true;
    for (auto& cv : wakeups_) cv.notify_all();
  }

  int p_;
  std::size_t capacity_;
  std::mutex mu_;
  std::vector<std::deque<Message>> boxes_;
  std::vector<std::condition_variable> wakeups_;
  std::vector<RankState> state_;
  std::vector<int> peer_;
  std::vector<PendingOp> ops_;
  bool aborted_ = false;
  std::optional<std::string> deadlock_;
};

}  // namespace

RunOutcome run_threaded(int world_size, const Program& program, const SpmdOptions& options,
                        std::vector<CollectiveRecord>& records) {
  ThreadedTransport transport(world_size, options.mailbox_capacity);
  std::vector<std::unique_ptr<Communicator>> comms;
  for (int r = 0; r < world_size; ++r) {
    comms.push_back(std::make_unique<Communicator>(r, world_size, Backend::threaded, transport));
  }
  RunOutcome outcome;
  outcome.errors.resize(static_cast<std::size_t>(world_size));

  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(world_size));
  for (int r = 0; r < world_size; ++r) {
    workers.emplace_back([&, r] {
      bool failed = false;
      try {
        program(*comms[r]);
      } catch (const RunAborted&) {
      } catch (...) {
        outcome.errors[r] = std::current_exception();
        failed = true;
      }
      transport.finish(r, failed);
    });
  }
  for (auto& w : workers) w.join();

  outcome.deadlock = transport.deadlock();
  outcome.leftover_messages = transport.leftover();
  for (auto& c : comms)
    for (const auto& rec : c->records()) records.push_back(rec);
  return outcome;
}

}  // namespace sketchcomm::detail
