// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sketchcomm {

enum class CollectiveKind { all_gather, reduce_scatter, all_to_all };

std::string_view to_string(CollectiveKind kind) noexcept;

// Model charges per call, with Q the group size:
//   all-gather      (1 − 1/Q) W words, ⌈log₂Q⌉ messages, W = words held after
//   reduce-scatter  (1 − 1/Q) W words, ⌈log₂Q⌉ messages, W = words held before
//   all-to-all      W words,           Q − 1 messages,    W = words held before
std::uint64_t ceil_log2(std::uint64_t q) noexcept;

/// One rank's view of one collective call.
struct CollectiveRecord {
  int rank = 0;
  std::string site;
  CollectiveKind kind = CollectiveKind::all_gather;
  std::size_t group_size = 1;
  std::uint64_t words_sent = 0;
  std::uint64_t words_received = 0;
  std::uint64_t messages = 0;
  std::uint64_t model_bandwidth = 0;
  std::uint64_t model_latency = 0;
};

struct CostTotals {
  std::uint64_t words_sent = 0;
  std::uint64_t words_received = 0;
  std::uint64_t messages = 0;
  std::uint64_t model_bandwidth = 0;
  std::uint64_t model_latency = 0;
  std::size_t calls = 0;

  CostTotals& operator+=(const CollectiveRecord& r);
};

/// Merged meter output of an SPMD run: measured words (what the backend
/// actually moved) alongside the cost-model charges.
class CostReport {
 public:
  CostReport() = default;
  explicit CostReport(int world_size) : world_size_(world_size) {}

  void append(CollectiveRecord record);

  int world_size() const noexcept { return world_size_; }
  std::span<const CollectiveRecord> records() const noexcept { return records_; }

  CostTotals rank_totals(int rank) const;
  CostTotals site_totals(int rank, std::string_view site) const;

  /// max over ranks of (words_sent + words_received).
  std::uint64_t critical_path_words() const;
  /// max over ranks of the accumulated model bandwidth.
  std::uint64_t max_model_bandwidth() const;
  std::uint64_t max_model_bandwidth(std::string_view site) const;
  std::uint64_t max_model_latency() const;
  std::uint64_t max_words_sent(std::string_view site) const;
  std::uint64_t max_words_received(std::string_view site) const;

  std::uint64_t total_words_sent() const;
  std::uint64_t total_words_received() const;

  /// Call sites in order of first appearance.
  std::vector<std::string> sites() const;

  /// One row per (rank, call site):
  /// rank,site,kind,group_size,calls,words_sent,words_received,messages,model_bandwidth,model_latency
  void write_csv(std::ostream& out) const;

 private:
  int world_size_ = 0;
  std::vector<CollectiveRecord> records_;
};

}  // namespace sketchcomm
