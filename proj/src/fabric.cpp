// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/fabric.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "fabric_internal.hpp"

namespace sketchcomm {

std::string_view to_string(Backend b) noexcept {
  return b == Backend::threaded ? "threaded" : "lockstep";
}

Backend parse_backend(std::string_view text) {
  if (text == "threaded") return Backend::threaded;
  if (text == "lockstep") return Backend::lockstep;
  throw std::invalid_argument("unknown backend '" + std::string(text) +
                              "' (expected threaded or lockstep)");
}

RankFailure::RankFailure(int rank, std::string what, std::exception_ptr cause)
    : FabricError("rank " + std::to_string(rank) + " failed: " + what),
      rank_(rank),
      cause_(std::move(cause)) {}

namespace detail {

std::string describe(const PendingOp& op) {
  return std::string(to_string(op.kind)) + " '" + op.site + "' over " + op.group;
}

}  // namespace detail

// Snapshots the counters on entry and emits one record on normal exit.
struct Communicator::CallScope {
  Communicator& comm;
  bool metered;
  std::uint64_t sent0, received0, messages0;
  CollectiveRecord record;

  CallScope(Communicator& c, CollectiveKind kind, const Group& group, std::string_view site)
      : comm(c),
        metered(c.metering()),
        sent0(c.sent_),
        received0(c.received_),
        messages0(c.messages_) {
    record.rank = c.rank_;
    record.site = std::string(site);
    record.kind = kind;
    record.group_size = group.size();
    c.current_ = detail::PendingOp{kind, record.site, group.to_string()};
  }

  void commit(std::uint64_t model_bandwidth, std::uint64_t model_latency) {
    if (!metered) return;
    record.words_sent = comm.sent_ - sent0;
    record.words_received = comm.received_ - received0;
    record.messages = comm.messages_ - messages0;
    record.model_bandwidth = model_bandwidth;
    record.model_latency = model_latency;
    comm.records_.push_back(std::move(record));
  }
};

Communicator::Communicator(int rank, int world_size, Backend backend,
                           detail::Transport& transport)
    : rank_(rank), world_size_(world_size), backend_(backend), transport_(transport) {}

void Communicator::resume_meter() noexcept {
  if (pause_depth_ > 0) --pause_depth_;
}

std::size_t Communicator::require_member(const Group& group) const {
  for (int m : group.members()) {
    if (m >= world_size_) {
      throw std::invalid_argument("group " + group.to_string() + " names rank " +
                                  std::to_string(m) + " outside world of size " +
                                  std::to_string(world_size_));
    }
  }
  auto q = group.index_of(rank_);
  if (!q) {
    throw std::invalid_argument("rank " + std::to_string(rank_) +
                                " is not a member of group " + group.to_string());
  }
  return *q;
}

void Communicator::send(int destination, detail::Message message) {
  sent_ += message.payload.size();
  ++messages_;
  transport_.send(rank_, destination, std::move(message), current_);
}

detail::Message Communicator::recv(int source, CollectiveKind kind, const Group& group,
                                   std::size_t expected_words, bool check_size) {
  detail::Message m = transport_.recv(source, rank_, current_);
  if (m.signature != group.signature() || m.kind != kind) {
    throw CollectiveMismatch("rank " + std::to_string(rank_) + " in " +
                             detail::describe(current_) + ": message from rank " +
                             std::to_string(source) + " belongs to a " +
                             std::string(to_string(m.kind)) + " over a different group");
  }
  if (check_size && m.payload.size() != expected_words) {
    throw CollectiveMismatch("rank " + std::to_string(rank_) + " in " +
                             detail::describe(current_) + ": rank " + std::to_string(source) +
                             " contributed " + std::to_string(m.payload.size()) +
                             " words, expected " + std::to_string(expected_words));
  }
  received_ += m.payload.size();
  return m;
}

std::vector<double> Communicator::all_gather(std::span<const double> local, const Group& group,
                                             std::string_view site) {
  const std::size_t q = require_member(group);
  const std::size_t size = group.size();
  CallScope scope(*this, CollectiveKind::all_gather, group, site);
  const std::size_t w = local.size();
  std::vector<double> out(w * size);
  std::copy(local.begin(), local.end(), out.begin() + q * w);

  // Ring: at step s, forward block (q − s) to the right and take block
  // (q − s − 1) from the left.
  const int right = group.member((q + 1) % size);
  const int left = group.member((q + size - 1) % size);
  for (std::size_t s = 0; s + 1 < size; ++s) {
    const std::size_t out_block = (q + size - s) % size;
    const std::size_t in_block = (q + 2 * size - s - 1) % size;
    detail::Message m{group.signature(), CollectiveKind::all_gather,
                      std::vector<double>(out.begin() + out_block * w,
                                          out.begin() + (out_block + 1) * w)};
    send(right, std::move(m));
    detail::Message in = recv(left, CollectiveKind::all_gather, group, w, true);
    std::copy(in.payload.begin(), in.payload.end(), out.begin() + in_block * w);
  }
  scope.commit((size - 1) * w, ceil_log2(size));
  return out;
}

std::vector<double> Communicator::reduce_scatter(std::span<const double> local,
                                                 const Group& group, std::string_view site) {
  const std::size_t q = require_member(group);
  const std::size_t size = group.size();
  if (local.size() % size != 0) {
    throw std::invalid_argument("reduce_scatter '" + std::string(site) + "': buffer of " +
                                std::to_string(local.size()) + " words does not split into " +
                                std::to_string(size) + " equal segments");
  }
  CallScope scope(*this, CollectiveKind::reduce_scatter, group, site);
  const std::size_t seg = local.size() / size;

  for (std::size_t s = 1; s < size; ++s) {
    const std::size_t d = (q + s) % size;
    send(group.member(d),
         detail::Message{group.signature(), CollectiveKind::reduce_scatter,
                         std::vector<double>(local.begin() + d * seg,
                                             local.begin() + (d + 1) * seg)});
  }
  std::vector<double> out;
  for (std::size_t g = 0; g < size; ++g) {
    std::vector<double> part;
    std::span<const double> contribution;
    if (g == q) {
      contribution = local.subspan(q * seg, seg);
    } else {
      part = recv(group.member(g), CollectiveKind::reduce_scatter, group, seg, true).payload;
      contribution = part;
    }
    if (g == 0) {
      out.assign(contribution.begin(), contribution.end());
    } else {
      for (std::size_t t = 0; t < seg; ++t) out[t] += contribution[t];
    }
  }
  scope.commit((size - 1) * seg, ceil_log2(size));
  return out;
}

std::vector<std::vector<double>> Communicator::all_to_all(std::vector<std::vector<double>> chunks,
                                                          const Group& group,
                                                          std::string_view site) {
  const std::size_t q = require_member(group);
  const std::size_t size = group.size();
  if (chunks.size() != size) {
    throw std::invalid_argument("all_to_all '" + std::string(site) + "': got " +
                                std::to_string(chunks.size()) + " chunks for a group of " +
                                std::to_string(size));
  }
  CallScope scope(*this, CollectiveKind::all_to_all, group, site);
  std::uint64_t held = 0;
  for (const auto& c : chunks) held += c.size();

  std::vector<std::vector<double>> out(size);
  out[q] = std::move(chunks[q]);
  for (std::size_t s = 1; s < size; ++s) {
    const std::size_t dest = (q + s) % size;
    const std::size_t src = (q + size - s) % size;
    send(group.member(dest),
         detail::Message{group.signature(), CollectiveKind::all_to_all, std::move(chunks[dest])});
    out[src] = recv(group.member(src), CollectiveKind::all_to_all, group, 0, false).payload;
  }
  scope.commit(size > 1 ? held : 0, size - 1);
  return out;
}

CostReport run_spmd_program(int world_size, Backend backend,
                            const std::function<void(Communicator&)>& program,
                            const SpmdOptions& options) {
  if (world_size < 1) throw std::invalid_argument("run_spmd: P must be >= 1");
  if (options.mailbox_capacity < 1) {
    throw std::invalid_argument("run_spmd: mailbox capacity must be >= 1");
  }
  std::vector<CollectiveRecord> records;
  detail::RunOutcome outcome = backend == Backend::threaded
                                   ? detail::run_threaded(world_size, program, options, records)
                                   : detail::run_lockstep(world_size, program, options, records);

  for (int r = 0; r < world_size; ++r) {
    const auto& err = outcome.errors[static_cast<std::size_t>(r)];
    if (!err) continue;
    try {
      std::rethrow_exception(err);
    } catch (const FabricError&) {
      throw;
    } catch (const std::exception& e) {
      throw RankFailure(r, e.what(), err);
    } catch (...) {
      throw RankFailure(r, "non-standard exception", err);
    }
  }
  if (outcome.deadlock) throw DeadlockError(*outcome.deadlock);
  if (outcome.leftover_messages > 0) {
    throw FabricError("run ended with " + std::to_string(outcome.leftover_messages) +
                      " undelivered messages");
  }

  CostReport report(world_size);
  for (auto& rec : records) report.append(std::move(rec));
  return report;
}

}  // namespace sketchcomm
