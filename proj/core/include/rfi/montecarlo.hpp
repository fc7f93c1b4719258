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

#ifndef RFI_MONTECARLO_HPP_
#define RFI_MONTECARLO_HPP_

// Monte Carlo estimation of occupancy functions and statistical checks of
// evenness, monotonicity and the couplings.
//
// Trial i always runs on RandomStream(seed).substream(i) (or a fixed
// relabeling of it), so results do not depend on `jobs`. Comparisons across
// sites use common random numbers: every site is scored on the same paths.
// Simultaneous coverage is obtained with a union bound over the sites of a
// check: each interval is built at confidence 1 - (1 - confidence) / m.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfi/couplings.hpp"
#include "rfi/hyperrect.hpp"
#include "rfi/interval.hpp"
#include "rfi/process.hpp"
#include "rfi/statistics.hpp"

namespace rfi {

// Deliberately broken dynamics used to show that the checks can fail.
enum class Mutant {
  kNone,
  kSkipPsi,               // antithetic coupling copies the minus contraction
  kUnmirroredReflection,  // reflection coupling does not swap expansion sides
  kOneSidedExpansion,     // the process only grows to the right
};

const char* to_string(Mutant m) noexcept;
std::optional<Mutant> parse_mutant(std::string_view name) noexcept;

struct McOptions {
  double confidence = 0.99;
  IntervalMethod method = IntervalMethod::kWilson;
  unsigned jobs = 1;
  Mutant mutant = Mutant::kNone;
};

struct OccupancyEstimate {
  std::vector<Site> site;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

// One path per trial; per-site intervals at options.confidence.
// Throws std::invalid_argument for trials == 0.
std::vector<OccupancyEstimate> estimate_occupancy(const Interval& initial, std::uint64_t t,
                                                  std::span<const Site> sites,
                                                  std::uint64_t trials,
                                                  const ContractionRule& rule, ExpansionParam p,
                                                  std::uint64_t seed,
                                                  const McOptions& options = {});

std::vector<OccupancyEstimate> estimate_occupancy_rect(const HyperRect& initial, std::uint64_t t,
                                                       std::span<const std::vector<Site>> sites,
                                                       std::uint64_t trials, ExpansionParam p,
                                                       std::uint64_t seed,
                                                       const McOptions& options = {});

// Recomputes the intervals of `estimates` at `confidence`.
void reinterval(std::vector<OccupancyEstimate>& estimates, double confidence,
                IntervalMethod method);

struct CheckReport {
  std::string claim;
  bool pass = true;
  // Smallest slack over all comparisons; negative means a violation.
  double worst_margin = 0.0;
  std::string worst_case;
  std::vector<std::pair<std::string, std::string>> parameters;
};

// |f(x) - f(-x)| within the combined simultaneous intervals, 1 <= x <= x_range.
CheckReport check_even(std::uint64_t t, ExpansionParam p, Site x_range, std::uint64_t trials,
                       std::uint64_t seed, const McOptions& options = {});

// f(x) >= f(x + 1) up to the combined intervals, 0 <= x < x_max.
CheckReport check_monotone_1d(std::uint64_t t, ExpansionParam p, Site x_max,
                              std::uint64_t trials, std::uint64_t seed,
                              const McOptions& options = {});

// For all sites x, y in the L1 ball of `radius` with |x|_1 <= |y|_1:
// f(x) >= f(y) up to the combined intervals. Process started from the unit
// box at the origin. Throws std::invalid_argument for d < 2.
CheckReport check_monotone_l1(std::size_t d, std::uint64_t t, ExpansionParam p,
                              std::uint64_t radius, std::uint64_t trials, std::uint64_t seed,
                              const McOptions& options = {});

// Two-sample chi-square, at each time 1..t, of the state law of each
// coupled marginal against an independent standalone simulation (from {-1}
// and {0}). Passes when every p-value is at least 1e-3 / (2 t).
CheckReport coupling_marginal_test(std::uint64_t t, ExpansionParam p, std::uint64_t trials,
                                   std::uint64_t seed, const McOptions& options = {});

// Class closure, domination on x >= 0 and coalescence absorption at every
// step of `runs` antithetic runs.
CheckReport coupling_invariants_check(std::uint64_t runs, std::uint64_t horizon,
                                      ExpansionParam p, std::uint64_t seed,
                                      const McOptions& options = {});

// eta == reflect_origin(zeta) at every step of `runs` reflection-coupled runs
// from {0}.
CheckReport reflection_check(std::uint64_t runs, std::uint64_t horizon, ExpansionParam p,
                             std::uint64_t seed, const McOptions& options = {});

struct CoalescenceSummary {
  std::uint64_t trials = 0;
  std::uint64_t horizon = 0;
  // first_time[s] = runs whose first coalescence-or-O time is s (s >= 1).
  std::vector<std::uint64_t> first_time;
  std::uint64_t coalesced = 0;  // ended by coalescence
  std::uint64_t absorbed = 0;   // ended in O before coalescing
  std::uint64_t censored = 0;   // neither by the horizon

  // Fraction of runs that have coalesced or died by time s.
  double resolved_fraction(std::uint64_t s) const;
  double censored_fraction() const;
};

CoalescenceSummary coalescence_stats(ExpansionParam p, std::uint64_t horizon,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const McOptions& options = {});

// Helpers shared with the command-line tool.

// One path of the (possibly mutated) 1-D dynamics.
Interval simulate_state(const Interval& initial, std::uint64_t t, const ContractionRule& rule,
                        ExpansionParam p, RandomStream& stream, Mutant mutant);

// Sites of Z^d with L1 norm <= radius, in lexicographic order.
std::vector<std::vector<Site>> l1_ball(std::size_t d, std::uint64_t radius);

}  // namespace rfi

#endif  // RFI_MONTECARLO_HPP_
