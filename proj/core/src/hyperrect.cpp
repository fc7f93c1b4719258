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

#include "rfi/hyperrect.hpp"

#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rfi/process.hpp"

namespace rfi {

HyperRect HyperRect::empty(std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("HyperRect: dimension must be >= 1");
  HyperRect r;
  r.dimension_ = dimension;
  return r;
}

HyperRect HyperRect::box(std::vector<Interval> spans) {
  if (spans.empty()) throw std::invalid_argument("HyperRect: dimension must be >= 1");
  for (const Interval& s : spans) {
    if (s.is_empty()) throw std::invalid_argument("HyperRect: empty span in box");
  }
  HyperRect r;
  r.empty_ = false;
  r.dimension_ = spans.size();
  r.spans_ = std::move(spans);
  return r;
}

HyperRect HyperRect::point(std::span<const Site> point) {
  std::vector<Interval> spans;
  spans.reserve(point.size());
  for (Site x : point) spans.push_back(Interval::point(x));
  return box(std::move(spans));
}

bool HyperRect::contains(std::span<const Site> point) const {
  if (point.size() != dimension_) {
    throw std::invalid_argument("HyperRect::contains: dimension mismatch");
  }
  if (empty_) return false;
  for (std::size_t i = 0; i < dimension_; ++i) {
    if (!spans_[i].contains(point[i])) return false;
  }
  return true;
}

std::string to_string(const HyperRect& r) {
  if (r.is_empty()) return "EMPTY";
  std::string out;
  for (std::size_t i = 0; i < r.dimension(); ++i) {
    if (i > 0) out += "x";
    out += to_string(r.axis(i));
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const HyperRect& r) { return os << to_string(r); }

std::uint64_t count_nonempty_subrects(std::span<const std::uint64_t> sizes) {
  std::uint64_t total = 1;
  for (std::uint64_t n : sizes) {
    const std::uint64_t k = count_nonempty_subintervals(n);
    if (total > std::numeric_limits<std::uint64_t>::max() / k) {
      throw std::overflow_error("count_nonempty_subrects: count overflows 64 bits");
    }
    total *= k;
  }
  return total;
}

namespace {

std::vector<std::uint64_t> sizes_of(const HyperRect& r) {
  std::vector<std::uint64_t> sizes;
  sizes.reserve(r.dimension());
  for (const Interval& s : r.spans()) sizes.push_back(s.size());
  return sizes;
}

}  // namespace

HyperRect unrank_subrect(const HyperRect& host, std::uint64_t index) {
  if (host.is_empty()) throw std::invalid_argument("unrank_subrect: empty host");
  const std::vector<std::uint64_t> sizes = sizes_of(host);
  const std::uint64_t total = count_nonempty_subrects(sizes);
  if (index > total) throw std::out_of_range("unrank_subrect: index out of range");
  if (index == 0) return HyperRect::empty(host.dimension());
  std::uint64_t rest = index - 1;
  std::vector<Interval> spans;
  spans.reserve(host.dimension());
  for (std::size_t i = 0; i < host.dimension(); ++i) {
    const std::uint64_t k = count_nonempty_subintervals(sizes[i]);
    spans.push_back(unrank_subinterval(host.axis(i), 1 + rest % k));
    rest /= k;
  }
  return HyperRect::box(std::move(spans));
}

HyperRect contract_uniform(const HyperRect& state, RandomStream& stream) {
  if (state.is_empty()) return state;
  const std::uint64_t total = count_nonempty_subrects(sizes_of(state));
  return unrank_subrect(state, stream.uniform_below(total + 1));
}

HyperRect expand_faces(const HyperRect& core, ExpansionParam p, RandomStream& stream,
                       std::vector<FaceShift>& shifts) {
  shifts.clear();
  if (core.is_empty()) return core;
  std::vector<Interval> spans;
  spans.reserve(core.dimension());
  for (std::size_t i = 0; i < core.dimension(); ++i) {
    const std::uint64_t low = geometric_sample(p, stream);
    const std::uint64_t high = geometric_sample(p, stream);
    shifts.push_back({i, false, low});
    shifts.push_back({i, true, high});
    const Interval& s = core.axis(i);
    spans.push_back(Interval::span(s.left() - static_cast<Site>(low),
                                   s.right() + static_cast<Site>(high)));
  }
  return HyperRect::box(std::move(spans));
}

HyperRect expand_faces(const HyperRect& core, ExpansionParam p, RandomStream& stream) {
  std::vector<FaceShift> shifts;
  return expand_faces(core, p, stream, shifts);
}

HyperRect step_rect(const HyperRect& state, ExpansionParam p, RandomStream& stream) {
  return expand_faces(contract_uniform(state, stream), p, stream);
}

std::vector<HyperRect> simulate_path_rect(const HyperRect& initial, std::uint64_t horizon,
                                          ExpansionParam p, RandomStream& stream) {
  std::vector<HyperRect> path;
  path.reserve(horizon + 1);
  path.push_back(initial);
  for (std::uint64_t t = 0; t < horizon; ++t) path.push_back(step_rect(path.back(), p, stream));
  return path;
}

std::uint64_t l1_norm(std::span<const Site> x) noexcept {
  std::uint64_t total = 0;
  for (Site v : x) total += static_cast<std::uint64_t>(v < 0 ? -v : v);
  return total;
}

}  // namespace rfi
