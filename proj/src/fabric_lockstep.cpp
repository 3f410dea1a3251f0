// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include <boost/context/fiber.hpp>
#include <boost/context/fixedsize_stack.hpp>
#include <deque>
#include <memory>

#include "fabric_internal.hpp"

namespace sketchcomm::detail {

namespace {

namespace ctx = boost::context;

struct Waiting {
  int source = -1;  // -1: not blocked
  PendingOp op;
};

class LockstepTransport final : public Transport {
 public:
  explicit LockstepTransport(int world_size)
      : p_(world_size),
        boxes_(static_cast<std::size_t>(world_size) * world_size),
        mains_(static_cast<std::size_t>(world_size)),
        waiting_(static_cast<std::size_t>(world_size)) {}

  void send(int source, int destination, Message message, const PendingOp&) override {
    if (aborted_) throw RunAborted{};
    box_of(source, destination).push_back(std::move(message));
  }

  Message recv(int source, int destination, const PendingOp& op) override {
    auto& box = box_of(source, destination);
    while (box.empty() && !aborted_) {
      waiting_[destination] = Waiting{source, op};
      yield(destination);
    }
    waiting_[destination].source = -1;
    if (aborted_) throw RunAborted{};
    Message m = std::move(box.front());
    box.pop_front();
    return m;
  }

  bool runnable(int rank) {
    const auto& w = waiting_[rank];
    return aborted_ || w.source < 0 || !box_of(w.source, rank).empty();
  }

  void set_main(int rank, ctx::fiber&& main) { mains_[rank] = std::move(main); }
  ctx::fiber take_main(int rank) { return std::move(mains_[rank]); }

  void abort() { aborted_ = true; }
  bool aborted() const { return aborted_; }

  std::string report(const std::vector<bool>& finished) const {
    std::string out = "deadlock: no rank can make progress;";
    for (int r = 0; r < p_; ++r) {
      out += " rank " + std::to_string(r);
      if (finished[r]) {
        out += " finished;";
      } else {
        out += " waits in " + describe(waiting_[r].op) + " for rank " +
               std::to_string(waiting_[r].source) + ";";
      }
    }
    out.pop_back();
    return out;
  }

  std::size_t leftover() const {
    std::size_t n = 0;
    for (const auto& b : boxes_) n += b.size();
    return n;
  }

 private:
  std::deque<Message>& box_of(int source, int destination) {
    return boxes_[static_cast<std::size_t>(source) * p_ + destination];
  }

  void yield(int rank) { mains_[rank] = std::move(mains_[rank]).resume(); }

  int p_;
  std::vector<std::deque<Message>> boxes_;
  std::vector<ctx::fiber> mains_;
  std::vector<Waiting> waiting_;
  bool aborted_ = false;
};

}  // namespace

RunOutcome run_lockstep(int world_size, const Program& program, const SpmdOptions& options,
                        std::vector<CollectiveRecord>& records) {
  LockstepTransport transport(world_size);
  std::vector<std::unique_ptr<Communicator>> comms;
  for (int r = 0; r < world_size; ++r) {
    comms.push_back(std::make_unique<Communicator>(r, world_size, Backend::lockstep, transport));
  }
  RunOutcome outcome;
  outcome.errors.resize(static_cast<std::size_t>(world_size));

  std::vector<ctx::fiber> fibers;
  fibers.reserve(static_cast<std::size_t>(world_size));
  for (int r = 0; r < world_size; ++r) {
    fibers.emplace_back(std::allocator_arg, ctx::fixedsize_stack(options.fiber_stack_bytes),
                        [&, r](ctx::fiber&& main) {
                          transport.set_main(r, std::move(main));
                          try {
                            program(*comms[r]);
                          } catch (const ctx::detail::forced_unwind&) {
                            throw;
                          } catch (const RunAborted&) {
                          } catch (...) {
                            outcome.errors[r] = std::current_exception();
                            transport.abort();
                          }
                          return transport.take_main(r);
                        });
  }

  // Rounds: resume every runnable rank once, in ascending order. A round in
  // which nobody was runnable while some rank is unfinished is a deadlock;
  // the blocked ranks are then resumed with the abort flag set so their
  // stacks unwind normally.
  std::vector<bool> finished(static_cast<std::size_t>(world_size), false);
  int remaining = world_size;
  while (remaining > 0) {
    bool progressed = false;
    for (int r = 0; r < world_size; ++r) {
      if (finished[r] || !transport.runnable(r)) continue;
      fibers[r] = std::move(fibers[r]).resume();
      progressed = true;
      if (!fibers[r]) {
        finished[r] = true;
        --remaining;
      }
    }
    if (!progressed) {
      outcome.deadlock = transport.report(finished);
      transport.abort();
    }
  }

  outcome.leftover_messages = transport.leftover();
  for (auto& c : comms)
    for (const auto& rec : c->records()) records.push_back(rec);
  return outcome;
}

}  // namespace sketchcomm::detail
