// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/cost.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace sketchcomm {

std::string_view to_string(CollectiveKind kind) noexcept {
  switch (kind) {
    case CollectiveKind::all_gather: return "all-gather";
    case CollectiveKind::reduce_scatter: return "reduce-scatter";
    case CollectiveKind::all_to_all: return "all-to-all";
  }
  return "?";
}

std::uint64_t ceil_log2(std::uint64_t q) noexcept {
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < q) ++bits;
  return bits;
}

CostTotals& CostTotals::operator+=(const CollectiveRecord& r) {
  words_sent += r.words_sent;
  words_received += r.words_received;
  messages += r.messages;
  model_bandwidth += r.model_bandwidth;
  model_latency += r.model_latency;
  ++calls;
  return *this;
}

void CostReport::append(CollectiveRecord record) {
  world_size_ = std::max(world_size_, record.rank + 1);
  records_.push_back(std::move(record));
}

CostTotals CostReport::rank_totals(int rank) const {
  CostTotals t;
  for (const auto& r : records_)
    if (r.rank == rank) t += r;
  return t;
}

CostTotals CostReport::site_totals(int rank, std::string_view site) const {
  CostTotals t;
  for (const auto& r : records_)
    if (r.rank == rank && r.site == site) t += r;
  return t;
}

std::uint64_t CostReport::critical_path_words() const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank) {
    const auto t = rank_totals(rank);
    best = std::max(best, t.words_sent + t.words_received);
  }
  return best;
}

std::uint64_t CostReport::max_model_bandwidth() const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank)
    best = std::max(best, rank_totals(rank).model_bandwidth);
  return best;
}

std::uint64_t CostReport::max_model_bandwidth(std::string_view site) const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank)
    best = std::max(best, site_totals(rank, site).model_bandwidth);
  return best;
}

std::uint64_t CostReport::max_model_latency() const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank)
    best = std::max(best, rank_totals(rank).model_latency);
  return best;
}

std::uint64_t CostReport::max_words_sent(std::string_view site) const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank)
    best = std::max(best, site_totals(rank, site).words_sent);
  return best;
}

std::uint64_t CostReport::max_words_received(std::string_view site) const {
  std::uint64_t best = 0;
  for (int rank = 0; rank < world_size_; ++rank)
    best = std::max(best, site_totals(rank, site).words_received);
  return best;
}

std::uint64_t CostReport::total_words_sent() const {
  std::uint64_t sum = 0;
  for (const auto& r : records_) sum += r.words_sent;
  return sum;
}

std::uint64_t CostReport::total_words_received() const {
  std::uint64_t sum = 0;
  for (const auto& r : records_) sum += r.words_received;
  return sum;
}

std::vector<std::string> CostReport::sites() const {
  std::vector<std::string> out;
  for (const auto& r : records_)
    if (std::find(out.begin(), out.end(), r.site) == out.end()) out.push_back(r.site);
  return out;
}

void CostReport::write_csv(std::ostream& out) const {
  out << "rank,site,kind,group_size,calls,words_sent,words_received,messages,model_bandwidth,"
         "model_latency\n";
  const auto site_list = sites();
  for (int rank = 0; rank < world_size_; ++rank) {
    for (const auto& site : site_list) {
      CostTotals t;
      const CollectiveRecord* first = nullptr;
      for (const auto& r : records_) {
        if (r.rank != rank || r.site != site) continue;
        if (!first) first = &r;
        t += r;
      }
      if (!first) continue;
      out << rank << ',' << site << ',' << to_string(first->kind) << ',' << first->group_size
          << ',' << t.calls << ',' << t.words_sent << ',' << t.words_received << ','
          << t.messages << ',' << t.model_bandwidth << ',' << t.model_latency << '\n';
    }
  }
}

}  // namespace sketchcomm
