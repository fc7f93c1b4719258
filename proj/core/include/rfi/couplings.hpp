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

#ifndef RFI_COUPLINGS_HPP_
#define RFI_COUPLINGS_HPP_

// Executable couplings of the one-dimensional process.
//
// Reflection coupling: a process and its mirror image about the origin,
// driven by one set of draws with the left/right expansions swapped.
//
// Antithetic coupling: the process started at {-1} ("minus") and at {0}
// ("plus"). All arithmetic is in original lattice coordinates, where the
// antithetic map is the mirror about -1/2, T(x) = -1 - x. The zero-skipping
// labels (0 -> 1, 1 -> 2, ..., negatives unchanged) are available through
// relabel()/unrelabel() for cross-checking.
//
// Invariants of the antithetic coupling, checked by the tests:
//   - while not coalesced, (minus, plus) is in A \ (S u O) or in O;
//   - once coalesced, minus == plus forever;
//   - plus contains every site x >= 0 that minus contains.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rfi/interval.hpp"
#include "rfi/random_stream.hpp"

namespace rfi {

Interval reflect_origin(const Interval& i) noexcept;  // [a,b] -> [-b,-a]
Interval mirror(const Interval& i) noexcept;          // [a,b] -> [-1-b,-1-a]

Site relabel(Site x) noexcept;    // x >= 0 -> x + 1
Site unrelabel(Site y);           // throws std::invalid_argument for y == 0

enum class PairClass {
  kO,        // (Empty, Empty)
  kS,        // identical nonempty
  kAProper,  // antithetic, minus leans left, not identical
  kNotInA,
};

const char* to_string(PairClass c) noexcept;

PairClass classify_pair(const Interval& minus, const Interval& plus) noexcept;

// Bijection I(host_minus) -> I(mirror(host_minus)): identity on subintervals
// of host_minus ∩ mirror(host_minus) (and on Empty), mirror elsewhere.
// Throws std::invalid_argument unless (host_minus, mirror(host_minus)) is
// kAProper and j is a subinterval of host_minus.
Interval psi(const Interval& host_minus, const Interval& j);

struct CoupledState {
  Interval minus = Interval::point(-1);
  Interval plus = Interval::point(0);
  bool coalesced = false;

  friend bool operator==(const CoupledState&, const CoupledState&) = default;
};

// Mutations used to demonstrate that the verification suites have teeth.
struct CouplingOptions {
  // Copy the minus contraction to plus verbatim instead of applying psi.
  bool skip_psi = false;
};

// Lazily materialized i.i.d. Bernoulli(p) sequence omega(1), omega(2), ...
// Bits are memoized, so every reader sees the same values. A surface is
// either driven by its own stream or fully prescribed (enumeration), in
// which case reading past the prescribed prefix throws std::out_of_range.
class BernoulliSurface {
 public:
  BernoulliSurface(ExpansionParam p, RandomStream stream);
  static BernoulliSurface fixed(ExpansionParam p, std::vector<std::uint8_t> bits);

  // omega(n), n >= 1.
  int at(std::uint64_t n);
  // min{n >= 1 : omega(n) = 0} - 1; geometric with pmf (1 - p) p^k.
  std::uint64_t shift();

  std::uint64_t materialized() const noexcept { return bits_.size(); }

 private:
  BernoulliSurface(ExpansionParam p, std::optional<RandomStream> stream,
                   std::vector<std::uint8_t> bits);

  ExpansionParam p_;
  std::optional<RandomStream> stream_;
  std::vector<std::uint8_t> bits_;
};

// Shift read off a surface given by an accessor n -> omega(n).
std::uint64_t first_zero_shift(const std::function<int(std::uint64_t)>& omega);

// Draws the minus contraction uniformly and maps it through psi.
// Throws std::invalid_argument unless the state is uncoalesced kAProper.
std::pair<Interval, Interval> coupled_contraction(const CoupledState& state,
                                                  RandomStream& stream,
                                                  const CouplingOptions& options = {});

// Lattice distance R(plus) - R(minus) by which plus is a translate of minus.
// For a kAProper pair this is >= 1. Throws std::invalid_argument otherwise.
std::int64_t gap(const Interval& tilde_minus, const Interval& tilde_plus);

// Expansion of a kAProper contraction pair from the minus surfaces.
// If omega_R(1..g) are all 1 the plus surfaces are
//   omega+_L = omega_R(1..g) followed by omega_L, omega+_R(n) = omega_R(g + n)
// and the pair coalesces; otherwise omega+_L = omega_R, omega+_R = omega_L
// and the result is again kAProper.
CoupledState coupled_expansion(const Interval& tilde_minus, const Interval& tilde_plus,
                               BernoulliSurface& minus_right, BernoulliSurface& minus_left);
CoupledState coupled_expansion(const Interval& tilde_minus, const Interval& tilde_plus,
                               ExpansionParam p, RandomStream& stream);

CoupledState coupled_step(const CoupledState& state, ExpansionParam p, RandomStream& stream,
                          const CouplingOptions& options = {});

// horizon + 1 states from ({-1}, {0}).
std::vector<CoupledState> run_coupled(std::uint64_t horizon, ExpansionParam p,
                                      std::uint64_t seed, const CouplingOptions& options = {});
std::vector<CoupledState> run_coupled(std::uint64_t horizon, ExpansionParam p,
                                      RandomStream stream, const CouplingOptions& options = {});

// Whether plus covers every nonnegative site of minus.
bool dominates_on_nonnegative(const Interval& minus, const Interval& plus) noexcept;

// Reflection coupling.

struct MirrorPair {
  Interval zeta = Interval::point(0);
  Interval eta = Interval::point(0);

  friend bool operator==(const MirrorPair&, const MirrorPair&) = default;
};

struct ReflectionOptions {
  // Expand eta with zeta's draws on the same sides instead of swapped.
  bool unmirrored_expansion = false;
};

// Throws std::invalid_argument unless eta == reflect_origin(zeta).
MirrorPair reflection_coupled_step(const MirrorPair& pair, ExpansionParam p,
                                   RandomStream& stream, const ReflectionOptions& options = {});

// Stops early at the first pair that breaks the mirror identity.
std::vector<MirrorPair> run_reflection_coupled(const Interval& initial, std::uint64_t horizon,
                                               ExpansionParam p, std::uint64_t seed,
                                               const ReflectionOptions& options = {});
std::vector<MirrorPair> run_reflection_coupled(const Interval& initial, std::uint64_t horizon,
                                               ExpansionParam p, RandomStream stream,
                                               const ReflectionOptions& options = {});

}  // namespace rfi

#endif  // RFI_COUPLINGS_HPP_
