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

#ifndef RFI_EXACT_ORACLE_HPP_
#define RFI_EXACT_ORACLE_HPP_

// Exact propagation of the law of the one-dimensional process.
//
// The law is held as a dense triangular table over a site window: cell
// (l, r), l <= r, carries the mass of the state [l, r]; Empty has its own
// cell. Contraction is computed exactly. Expansion keeps shifts 0..n_max
// per side; the discarded tail mass is accumulated in `lost`, so every
// occupancy value comes with a certified bracket [lo, lo + lost].
//
// Mass is either double or Rational (GMP). In rational mode with
// UniformRule or EndpointResampleRule, weights + Empty + lost == 1 exactly.
// Rules given by double-valued functions are converted exactly from their
// binary values.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rfi/interval.hpp"
#include "rfi/process.hpp"

namespace rfi {

using Rational = mpq_class;

struct TruncationPolicy {
  std::uint32_t n_max = 40;
};

template <class Mass>
struct OccupancyBounds {
  Site x = 0;
  Mass lo{};
  Mass hi{};
};

template <class Mass>
class StateDist {
 public:
  StateDist() = default;

  static StateDist point_mass(const Interval& state);

  // Mass of one state (zero outside the table).
  Mass mass(const Interval& state) const;
  const Mass& empty_mass() const noexcept { return empty_; }
  const Mass& lost() const noexcept { return lost_; }
  // Sum over all states, Empty included; equals 1 - lost.
  Mass total_weight() const;

  // Site window covered by the table; nullopt when no span is tracked.
  std::optional<Interval> window() const;

  // Visits (state, mass) for every state with nonzero mass: Empty first,
  // then spans in (left, right) order.
  template <class F>
  void for_each(F&& visit) const {
    if (empty_ != 0) visit(Interval::empty(), empty_);
    for (std::size_t a = 0; a < width_; ++a) {
      for (std::size_t b = a; b < width_; ++b) {
        const Mass& m = cells_[a * width_ + b];
        if (m != 0) {
          visit(Interval::span(origin_ + static_cast<Site>(a), origin_ + static_cast<Site>(b)),
                m);
        }
      }
    }
  }

  std::size_t support_size() const;

  // Raw table access for the pushforward kernels.
  Site origin() const noexcept { return origin_; }
  std::size_t width() const noexcept { return width_; }
  Mass& cell(std::size_t a, std::size_t b) { return cells_[a * width_ + b]; }
  const Mass& cell(std::size_t a, std::size_t b) const { return cells_[a * width_ + b]; }
  Mass& empty_mass_ref() noexcept { return empty_; }
  Mass& lost_ref() noexcept { return lost_; }
  // Fresh zero table over [origin, origin + width).
  void reset_table(Site origin, std::size_t width);

 private:
  Site origin_ = 0;
  std::size_t width_ = 0;
  std::vector<Mass> cells_;
  Mass empty_{0};
  Mass lost_{0};
};

template <class Mass>
StateDist<Mass> contraction_pushforward(const StateDist<Mass>& dist, const ContractionRule& rule,
                                        ExpansionParam p);

template <class Mass>
StateDist<Mass> expansion_pushforward(const StateDist<Mass>& dist, ExpansionParam p,
                                      TruncationPolicy policy);

// t alternating contraction/expansion pushforwards from a point mass.
template <class Mass>
StateDist<Mass> evolve(const Interval& initial, std::uint64_t t, const ContractionRule& rule,
                       ExpansionParam p, TruncationPolicy policy);

template <class Mass>
OccupancyBounds<Mass> occupancy_bounds(const StateDist<Mass>& dist, Site x);

// Bounds for every x in [x_min, x_max].
template <class Mass>
std::vector<OccupancyBounds<Mass>> occupancy_table(const StateDist<Mass>& dist, Site x_min,
                                                   Site x_max);

// Upper bound on the mass discarded per state per expansion:
// 1 - (1 - p^(n_max + 1))^2.
double truncation_loss_per_step(ExpansionParam p, TruncationPolicy policy);

double to_double(double m) noexcept;
double to_double(const Rational& m);

// Exhaustive checks of the antithetic coupling against the exact law.

struct CouplingTransitionReport {
  double plus_discrepancy = 0.0;   // max |P_coupled(plus' = s) - P_exact(s)|
  double minus_discrepancy = 0.0;  // same for minus'
  double tail_bound = 0.0;         // 1 - (1 - p^L)^2, L = surface length
  double coalescence_probability = 0.0;  // enumerated P(coalesced after one step)
  std::uint64_t outcomes = 0;      // enumerated (contraction, surfaces) cells
};

// Enumerates every contraction of `host` (the minus interval; plus is
// mirror(host)) and every pair of minus surface prefixes 1^k 0, k < L,
// drives the coupled transition, and compares each marginal with the exact
// one-step law truncated at n_max = L - 1. Prescribed surfaces throw if read
// past their first zero, so prefix classes are exhaustive.
// Throws std::invalid_argument unless (host, mirror(host)) is A\(S+O).
CouplingTransitionReport coupling_transition_check(const Interval& host, ExpansionParam p,
                                                   std::uint32_t surface_len);

struct ExpansionMarginalReport {
  double plus_discrepancy = 0.0;   // max over shifts (a, b) of |P(a, b) - (1-p)^2 p^(a+b)|
  double minus_discrepancy = 0.0;
  double coalescing_mass = 0.0;    // enumerated mass of the coalescing branch
  double antithetic_mass = 0.0;
  std::uint64_t gap = 0;
};

// Shift law of both processes under coupled_expansion of a fixed
// A\(S+O) contraction pair, by enumeration of surface prefixes.
ExpansionMarginalReport expansion_marginal_check(const Interval& tilde_minus,
                                                 const Interval& tilde_plus, ExpansionParam p,
                                                 std::uint32_t surface_len);

// Total variation distance between the pushforward of the uniform
// contraction law on I(host) through psi and the uniform law on
// I(mirror(host)), in exact arithmetic.
Rational psi_pushforward_tv(const Interval& host);

extern template class StateDist<double>;
extern template class StateDist<Rational>;

}  // namespace rfi

#endif  // RFI_EXACT_ORACLE_HPP_
