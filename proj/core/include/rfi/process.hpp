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

#ifndef RFI_PROCESS_HPP_
#define RFI_PROCESS_HPP_

// One-dimensional randomly fluctuating intervals: contraction rules,
// geometric expansion and path simulation.

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "rfi/interval.hpp"
#include "rfi/random_stream.hpp"

namespace rfi {

// P(N = n) = (1 - p) p^n, n >= 0.
double geometric_pmf(ExpansionParam p, std::uint64_t n) noexcept;

// One geometric draw by inversion; consumes exactly one stream output.
std::uint64_t geometric_sample(ExpansionParam p, RandomStream& stream) noexcept;

// n(n+1)/2. Throws std::invalid_argument for n == 0.
std::uint64_t count_nonempty_subintervals(std::uint64_t n);

// Index 0 is Empty; 1..K enumerate the nonempty subintervals of `host`
// sorted by (left, right). Throws std::invalid_argument for an empty host
// and std::out_of_range for index > K.
Interval unrank_subinterval(const Interval& host, std::uint64_t index);
// Inverse of unrank_subinterval. Throws std::invalid_argument if `sub` is
// not contained in `host` or host is empty.
std::uint64_t rank_subinterval(const Interval& host, const Interval& sub);

// Contraction rules.

// Every element of I(state), Empty included, equally likely.
struct UniformRule {};

// Draw a size k ~ phi(n) (a pmf over k = 0..n), then a uniformly placed
// subinterval of that size; k = 0 kills.
struct GeneralSizeRule {
  std::function<std::vector<double>(std::uint64_t n)> phi;
};

// Empty with probability p_empty(p, n), otherwise uniform over the
// nonempty subintervals. The default reproduces UniformRule.
struct KillThenUniformRule {
  std::function<double(double p, std::uint64_t n)> p_empty = default_p_empty;

  static double default_p_empty(double /*p*/, std::uint64_t n) {
    return 1.0 / (static_cast<double>(count_nonempty_subintervals(n)) + 1.0);
  }
};

// Two sites drawn i.i.d. uniformly (with repetition) from the state; the
// result is the interval they span. Never Empty.
struct EndpointResampleRule {};

using ContractionRule =
    std::variant<UniformRule, GeneralSizeRule, KillThenUniformRule, EndpointResampleRule>;

// The size law phi(k; n) = (#size-k subintervals + [k = 0]) / (K + 1), under
// which GeneralSizeRule coincides with UniformRule.
std::vector<double> uniform_size_law(std::uint64_t n);

// Validated phi(n); throws std::invalid_argument if the pmf has the wrong
// length, a negative entry, or does not sum to 1 within 1e-9.
std::vector<double> checked_size_law(const GeneralSizeRule& rule, std::uint64_t n);
// Validated p_empty(p, n); throws std::invalid_argument outside [0, 1].
double checked_kill_probability(const KillThenUniformRule& rule, double p, std::uint64_t n);

// Empty is absorbing under every rule.
Interval contract(const Interval& state, const ContractionRule& rule, ExpansionParam p,
                  RandomStream& stream);

// Span[l, r] -> Span[l - N_L, r + N_R], N_L drawn before N_R.
Interval expand(const Interval& core, ExpansionParam p, RandomStream& stream);

Interval step(const Interval& state, const ContractionRule& rule, ExpansionParam p,
              RandomStream& stream);

// horizon + 1 states, the first being `initial`.
std::vector<Interval> simulate_path(const Interval& initial, std::uint64_t horizon,
                                    const ContractionRule& rule, ExpansionParam p,
                                    RandomStream& stream);

}  // namespace rfi

#endif  // RFI_PROCESS_HPP_
