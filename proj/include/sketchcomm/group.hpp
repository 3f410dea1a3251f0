// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sketchcomm {

/// Ordered list of distinct ranks taking part in one collective. The order
/// fixes chunk ownership and concatenation order.
class Group {
 public:
  explicit Group(std::vector<int> members);

  static Group world(int world_size);

  std::size_t size() const noexcept { return members_.size(); }
  int member(std::size_t q) const { return members_.at(q); }
  std::span<const int> members() const noexcept { return members_; }
  std::optional<std::size_t> index_of(int rank) const noexcept;

  /// Hash of the ordered member list; messages carry it so that ranks which
  /// disagree on a group are caught.
  std::uint64_t signature() const noexcept { return signature_; }

  std::string to_string() const;

  friend bool operator==(const Group& a, const Group& b) { return a.members_ == b.members_; }

 private:
  std::vector<int> members_;
  std::uint64_t signature_ = 0;
};

}  // namespace sketchcomm
