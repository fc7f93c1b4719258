// Copyright 2026 The rfi Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RFI_INTERVAL_HPP_
#define RFI_INTERVAL_HPP_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rfi {

// Lattice coordinate.
using Site = std::int64_t;

// Integer interval {left, ..., right}, or the empty set.
//
// The empty set is a distinct structural value; it has no endpoints, and
// left()/right() must not be called on it. Ordering puts Empty first, then
// spans lexicographically by (left, right).
class Interval {
 public:
  constexpr Interval() noexcept = default;

  static constexpr Interval empty() noexcept { return Interval(); }
  // Throws std::invalid_argument if left > right.
  static Interval span(Site left, Site right);
  static constexpr Interval point(Site x) noexcept { return Interval(x, x); }

  constexpr bool is_empty() const noexcept { return empty_; }
  constexpr Site left() const noexcept { return left_; }
  constexpr Site right() const noexcept { return right_; }

  constexpr std::uint64_t size() const noexcept {
    return empty_ ? 0 : static_cast<std::uint64_t>(right_ - left_) + 1;
  }
  constexpr bool contains(Site x) const noexcept {
    return !empty_ && left_ <= x && x <= right_;
  }
  // Subset relation; Empty is a subset of everything.
  constexpr bool contains(const Interval& other) const noexcept {
    return other.empty_ || (!empty_ && left_ <= other.left_ && other.right_ <= right_);
  }

  friend constexpr bool operator==(const Interval& a, const Interval& b) noexcept {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.left_ == b.left_ && a.right_ == b.right_;
  }
  friend constexpr std::strong_ordering operator<=>(const Interval& a,
                                                    const Interval& b) noexcept {
    if (a.empty_ || b.empty_) return b.empty_ <=> a.empty_;
    if (auto c = a.left_ <=> b.left_; c != 0) return c;
    return a.right_ <=> b.right_;
  }

 private:
  constexpr Interval(Site left, Site right) noexcept
      : empty_(false), left_(left), right_(right) {}

  bool empty_ = true;
  Site left_ = 0;
  Site right_ = 0;
};

Interval intersect(const Interval& a, const Interval& b) noexcept;

// "[l,r]" or "EMPTY".
std::string to_string(const Interval& i);
std::ostream& operator<<(std::ostream& os, const Interval& i);

// Expansion parameter p in (0, 1).
//
// Keeps the exact ratio num/den alongside the double so that the exact
// oracle can run in rational arithmetic without inheriting binary rounding
// (0.2 stays 1/5).
class ExpansionParam {
 public:
  // Throws std::invalid_argument unless 0 < p < 1. No exact ratio is kept;
  // rational arithmetic then uses the exact binary value of p.
  explicit ExpansionParam(double p);
  // Throws std::invalid_argument unless 0 < num < den.
  static ExpansionParam ratio(std::int64_t num, std::int64_t den);
  // Decimals ("0.35") and ratios ("7/20") keep an exact ratio; other
  // forms ("2e-1") parse as a double only.
  static ExpansionParam parse(std::string_view text);

  double value() const noexcept { return value_; }
  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool has_exact_ratio() const noexcept { return den_ != 0; }

 private:
  ExpansionParam() = default;

  double value_ = 0.5;
  // den_ == 0: no decimal ratio known.
  std::int64_t num_ = 0;
  std::int64_t den_ = 0;
};

}  // namespace rfi

#endif  // RFI_INTERVAL_HPP_
