// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sketchcomm {

Group::Group(std::vector<int> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("Group: no members");
  std::vector<int> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) throw std::invalid_argument("Group: negative rank");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("Group: duplicate member in " + to_string());
  }
  // FNV-1a over the ordered member list.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (int m : members_) {
    h ^= static_cast<std::uint32_t>(m);
    h *= 0x100000001b3ull;
  }
  signature_ = h ^ members_.size();
}

Group Group::world(int world_size) {
  if (world_size < 1) throw std::invalid_argument("Group::world: size must be >= 1");
  std::vector<int> all(static_cast<std::size_t>(world_size));
  std::iota(all.begin(), all.end(), 0);
  return Group(std::move(all));
}

std::optional<std::size_t> Group::index_of(int rank) const noexcept {
  auto it = std::find(members_.begin(), members_.end(), rank);
  if (it == members_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::string Group::to_string() const {
  std::string out = "{";
  for (std::size_t q = 0; q < members_.size(); ++q) {
    if (q) out += ',';
    out += std::to_string(members_[q]);
  }
  return out + "}";
}

}  // namespace sketchcomm
