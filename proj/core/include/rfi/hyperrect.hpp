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

#ifndef RFI_HYPERRECT_HPP_
#define RFI_HYPERRECT_HPP_

// Randomly fluctuating hyperrectangles in d >= 1 dimensions.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rfi/interval.hpp"
#include "rfi/random_stream.hpp"

namespace rfi {

// Axis-aligned box given by one nonempty span per axis, or Empty. The
// dimension is kept even when Empty.
class HyperRect {
 public:
  static HyperRect empty(std::size_t dimension);
  // Throws std::invalid_argument if `spans` is empty or holds an Empty span.
  static HyperRect box(std::vector<Interval> spans);
  // Unit box at `point`.
  static HyperRect point(std::span<const Site> point);

  bool is_empty() const noexcept { return empty_; }
  std::size_t dimension() const noexcept { return dimension_; }
  // Spans of a nonempty box; empty vector for Empty.
  const std::vector<Interval>& spans() const noexcept { return spans_; }
  const Interval& axis(std::size_t i) const { return spans_.at(i); }

  bool contains(std::span<const Site> point) const;

  friend bool operator==(const HyperRect&, const HyperRect&) = default;

 private:
  HyperRect() = default;

  bool empty_ = true;
  std::size_t dimension_ = 0;
  std::vector<Interval> spans_;
};

std::string to_string(const HyperRect& r);
std::ostream& operator<<(std::ostream& os, const HyperRect& r);

// Face shift: axis `axis`, low (false) or high (true) face, outward amount.
struct FaceShift {
  std::size_t axis = 0;
  bool high = false;
  std::uint64_t amount = 0;
};

// prod_i n_i (n_i + 1) / 2. Throws std::invalid_argument on a zero size.
std::uint64_t count_nonempty_subrects(std::span<const std::uint64_t> sizes);

// Index 0 is Empty; 1..K decode mixed-radix, axis 0 fastest, each digit
// through unrank_subinterval.
HyperRect unrank_subrect(const HyperRect& host, std::uint64_t index);

// Uniform over the K nonempty sub-boxes plus one Empty atom, via one
// global index draw.
HyperRect contract_uniform(const HyperRect& state, RandomStream& stream);

// 2d independent geometric outward face shifts, per axis low then high.
HyperRect expand_faces(const HyperRect& core, ExpansionParam p, RandomStream& stream);
// The same expansion, reporting the shifts applied.
HyperRect expand_faces(const HyperRect& core, ExpansionParam p, RandomStream& stream,
                       std::vector<FaceShift>& shifts);

HyperRect step_rect(const HyperRect& state, ExpansionParam p, RandomStream& stream);

std::vector<HyperRect> simulate_path_rect(const HyperRect& initial, std::uint64_t horizon,
                                          ExpansionParam p, RandomStream& stream);

std::uint64_t l1_norm(std::span<const Site> x) noexcept;

}  // namespace rfi

#endif  // RFI_HYPERRECT_HPP_
