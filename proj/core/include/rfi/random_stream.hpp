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

#ifndef RFI_RANDOM_STREAM_HPP_
#define RFI_RANDOM_STREAM_HPP_

#include <cstdint>

namespace rfi {

// Counter-based pseudorandom stream.
//
// Output n of a stream is a SplitMix64 finalizer applied to key + n * gamma,
// so a stream is fully described by (key, counter). Substreams are derived
// by hashing (key, label) into a fresh key; they do not consume draws from
// the parent, which makes results independent of how work is scheduled.
// A stream is single-consumer: copy it to fork, never share it across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) noexcept;

  // Independent stream identified by `label`. Deterministic in (key, label).
  [[nodiscard]] RandomStream substream(std::uint64_t label) const noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() noexcept;
  // Uniform on (0, 1]; safe to pass to log().
  double next_open_unit() noexcept;

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  bool bernoulli(double p) noexcept { return next_unit() < p; }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  RandomStream(std::uint64_t key, std::uint64_t counter) noexcept
      : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rfi

#endif  // RFI_RANDOM_STREAM_HPP_
