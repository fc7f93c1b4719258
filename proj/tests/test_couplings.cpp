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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "rfi/couplings.hpp"
#include "rfi/exact_oracle.hpp"
#include "rfi/process.hpp"
#include "rfi/statistics.hpp"

namespace rfi {
namespace {

using Bits = std::vector<std::uint8_t>;

// 1^k followed by a single 0.
Bits ones_then_zero(std::uint64_t k) {
  Bits bits(k, 1);
  bits.push_back(0);
  return bits;
}

std::vector<Interval> subintervals(const Interval& host) {
  std::vector<Interval> out{Interval::empty()};
  for (Site a = host.left(); a <= host.right(); ++a) {
    for (Site b = a; b <= host.right(); ++b) out.push_back(Interval::span(a, b));
  }
  return out;
}

// Hosts h with (h, mirror(h)) antithetic and distinct, up to `max_size` sites.
std::vector<Interval> antithetic_hosts(std::uint64_t max_size) {
  std::vector<Interval> out;
  const Site reach = static_cast<Site>(max_size) + 1;
  for (Site a = -reach; a <= reach; ++a) {
    for (Site b = a; b <= reach && static_cast<std::uint64_t>(b - a + 1) <= max_size; ++b) {
      const Interval h = Interval::span(a, b);
      if (classify_pair(h, mirror(h)) == PairClass::kAProper) out.push_back(h);
    }
  }
  return out;
}

TEST(Reflect, ExamplesAndInvolution) {
  EXPECT_EQ(reflect_origin(Interval::span(1, 3)), Interval::span(-3, -1));
  EXPECT_EQ(reflect_origin(Interval::empty()), Interval::empty());
  for (const Interval& i : subintervals(Interval::span(-10, 10))) {
    ASSERT_EQ(reflect_origin(reflect_origin(i)), i);
    ASSERT_EQ(reflect_origin(i).size(), i.size());
  }
}

TEST(Mirror, ExamplesAndInvolution) {
  EXPECT_EQ(mirror(Interval::point(-1)), Interval::point(0));
  EXPECT_EQ(mirror(Interval::span(-3, 0)), Interval::span(-1, 2));
  EXPECT_EQ(mirror(Interval::empty()), Interval::empty());
  for (const Interval& i : subintervals(Interval::span(-10, 10))) {
    ASSERT_EQ(mirror(mirror(i)), i);
  }
}

TEST(Relabel, SkipsZero) {
  EXPECT_EQ(relabel(-1), -1);
  EXPECT_EQ(relabel(0), 1);
  EXPECT_EQ(relabel(4), 5);
  EXPECT_EQ(unrelabel(1), 0);
  EXPECT_EQ(unrelabel(-3), -3);
  EXPECT_THROW(unrelabel(0), std::invalid_argument);
  // mirror is negation in relabeled coordinates.
  for (Site x = -20; x <= 20; ++x) {
    ASSERT_EQ(relabel(-1 - x), -relabel(x));
  }
}

TEST(ClassifyPair, Examples) {
  EXPECT_EQ(classify_pair(Interval::empty(), Interval::empty()), PairClass::kO);
  EXPECT_EQ(classify_pair(Interval::point(-1), Interval::point(0)), PairClass::kAProper);
  EXPECT_EQ(classify_pair(Interval::span(2, 5), Interval::span(2, 5)), PairClass::kS);
  // Plus leaning left of minus is the reverse orientation.
  EXPECT_EQ(classify_pair(Interval::point(0), Interval::point(-1)), PairClass::kNotInA);
  // Not mirror images.
  EXPECT_EQ(classify_pair(Interval::point(-1), Interval::point(1)), PairClass::kNotInA);
  EXPECT_EQ(classify_pair(Interval::empty(), Interval::point(0)), PairClass::kNotInA);
  // Symmetric about the mirror axis: a mirror image of itself, hence S.
  EXPECT_EQ(classify_pair(Interval::span(-2, 1), Interval::span(-2, 1)), PairClass::kS);
  EXPECT_EQ(classify_pair(Interval::span(-3, 0), Interval::span(-1, 2)), PairClass::kAProper);
  EXPECT_EQ(classify_pair(Interval::span(0, 1), Interval::span(-2, -1)), PairClass::kNotInA);
  EXPECT_STREQ(to_string(PairClass::kAProper), "A-proper");
}

TEST(ClassifyPair, ExhaustiveTotalAndExclusive) {
  const auto family = subintervals(Interval::span(-6, 5));
  for (const Interval& m : family) {
    for (const Interval& q : family) {
      const PairClass c = classify_pair(m, q);
      const bool o = m.is_empty() && q.is_empty();
      const bool s = !m.is_empty() && m == q;
      const bool a = !o && !s && q == mirror(m) && !m.is_empty() && m.left() <= -1 &&
                     m.right() + 1 <= -m.left();
      ASSERT_EQ(c == PairClass::kO, o);
      ASSERT_EQ(c == PairClass::kS, s);
      ASSERT_EQ(c == PairClass::kAProper, a) << m << " " << q;
    }
  }
}

TEST(Psi, Examples) {
  const Interval host = Interval::span(-3, 0);
  EXPECT_EQ(psi(host, Interval::span(-3, -2)), Interval::span(1, 2));
  EXPECT_EQ(psi(host, Interval::span(-1, 0)), Interval::span(-1, 0));
  EXPECT_EQ(psi(host, Interval::empty()), Interval::empty());
  EXPECT_THROW(psi(host, Interval::span(0, 1)), std::invalid_argument);
  EXPECT_THROW(psi(Interval::point(0), Interval::point(0)), std::invalid_argument);
  EXPECT_THROW(psi(Interval::span(-2, 1), Interval::point(0)), std::invalid_argument);
}

TEST(Psi, BijectionForSmallHosts) {
  for (const Interval& host : antithetic_hosts(8)) {
    const auto target = subintervals(mirror(host));
    const std::set<Interval> target_set(target.begin(), target.end());
    std::set<Interval> image;
    for (const Interval& j : subintervals(host)) {
      const Interval k = psi(host, j);
      ASSERT_TRUE(target_set.count(k)) << host << " " << j << " -> " << k;
      image.insert(k);
    }
    ASSERT_EQ(image, target_set) << host;
    EXPECT_EQ(psi_pushforward_tv(host), Rational(0)) << host;
  }
}

TEST(Gap, LatticeDistance) {
  EXPECT_EQ(gap(Interval::point(-1), Interval::point(0)), 1);
  EXPECT_EQ(gap(Interval::span(-2, 0), Interval::span(-1, 1)), 1);
  EXPECT_EQ(gap(Interval::span(-3, -2), Interval::span(1, 2)), 4);
  EXPECT_THROW(gap(Interval::point(0), Interval::point(0)), std::invalid_argument);
}

// The coalescing branch makes the intervals identical exactly when g equals
// the number of lattice sites separating the right endpoints; relabeled
// distance overcounts by one whenever the pair straddles site 0.
TEST(Gap, CoalescenceNeedsLatticeDistance) {
  for (const Interval& host : antithetic_hosts(8)) {
    for (const Interval& tm : subintervals(host)) {
      const Interval tp = psi(host, tm);
      if (classify_pair(tm, tp) != PairClass::kAProper) continue;
      const std::int64_t g = gap(tm, tp);
      const std::int64_t relabeled = relabel(tp.right()) - relabel(tm.right());
      const std::int64_t straddle = tm.right() < 0 && tp.right() >= 0 ? 1 : 0;
      ASSERT_EQ(g, relabeled - straddle);
      for (std::uint64_t kl = 0; kl < 4; ++kl) {
        auto right = BernoulliSurface::fixed(ExpansionParam(0.5),
                                             ones_then_zero(static_cast<std::uint64_t>(g)));
        auto left = BernoulliSurface::fixed(ExpansionParam(0.5), ones_then_zero(kl));
        const CoupledState next = coupled_expansion(tm, tp, right, left);
        ASSERT_TRUE(next.coalesced);
        ASSERT_EQ(next.minus, next.plus);
      }
    }
  }
}

TEST(BernoulliSurface, MemoizedAndFixed) {
  BernoulliSurface s(ExpansionParam(0.5), RandomStream(1));
  std::vector<int> first;
  for (std::uint64_t n = 1; n <= 50; ++n) first.push_back(s.at(n));
  for (std::uint64_t n = 50; n >= 1; --n) ASSERT_EQ(s.at(n), first[n - 1]);
  EXPECT_EQ(s.materialized(), 50u);
  EXPECT_THROW(s.at(0), std::out_of_range);

  auto f = BernoulliSurface::fixed(ExpansionParam(0.5), {1, 1, 0});
  EXPECT_EQ(f.shift(), 2u);
  EXPECT_THROW(f.at(4), std::out_of_range);
  EXPECT_EQ(first_zero_shift([](std::uint64_t n) { return n < 5 ? 1 : 0; }), 4u);
}

TEST(BernoulliSurface, ShiftIsGeometric) {
  const ExpansionParam p(0.5);
  RandomStream root(2);
  constexpr std::uint64_t kSamples = 200'000;
  constexpr std::size_t kCells = 30;
  std::vector<std::uint64_t> observed(kCells, 0);
  for (std::uint64_t i = 0; i < kSamples; ++i) {
    BernoulliSurface s(p, root.substream(i));
    observed[std::min<std::uint64_t>(s.shift(), kCells - 1)]++;
  }
  std::vector<double> probs(kCells);
  for (std::size_t n = 0; n + 1 < kCells; ++n) probs[n] = geometric_pmf(p, n);
  probs[kCells - 1] = std::pow(0.5, kCells - 1);
  EXPECT_GT(chi_square_gof(observed, probs).p_value, 1e-3);
}

TEST(CoupledExpansion, HandTracedBranches) {
  const ExpansionParam p(0.5);
  const Interval tm = Interval::point(-1);
  const Interval tp = Interval::point(0);
  {
    auto right = BernoulliSurface::fixed(p, {1, 1, 0});
    auto left = BernoulliSurface::fixed(p, {0});
    const CoupledState next = coupled_expansion(tm, tp, right, left);
    EXPECT_EQ(next.minus, Interval::span(-1, 1));
    EXPECT_EQ(next.plus, Interval::span(-1, 1));
    EXPECT_TRUE(next.coalesced);
  }
  {
    auto right = BernoulliSurface::fixed(p, {0});
    auto left = BernoulliSurface::fixed(p, {1, 0});
    const CoupledState next = coupled_expansion(tm, tp, right, left);
    EXPECT_EQ(next.minus, Interval::span(-2, -1));
    EXPECT_EQ(next.plus, Interval::span(0, 1));
    EXPECT_EQ(next.plus, mirror(next.minus));
    EXPECT_FALSE(next.coalesced);
  }
  auto right = BernoulliSurface::fixed(p, {0});
  auto left = BernoulliSurface::fixed(p, {0});
  EXPECT_THROW(coupled_expansion(Interval::point(0), Interval::point(0), right, left),
               std::invalid_argument);
}

TEST(CoupledExpansion, CoalescingMassIsPToTheGap) {
  constexpr std::uint32_t kLen = 14;
  for (double pv : {0.3, 0.5, 0.7}) {
    const ExpansionParam p(pv);
    for (const auto& [tm, tp] : std::vector<std::pair<Interval, Interval>>{
             {Interval::point(-1), Interval::point(0)},
             {Interval::span(-2, 0), Interval::span(-1, 1)},
             {Interval::span(-3, -2), Interval::span(1, 2)}}) {
      const ExpansionMarginalReport r = expansion_marginal_check(tm, tp, p, kLen);
      const double g = static_cast<double>(r.gap);
      const double tail = std::pow(pv, kLen);
      const double expected = (std::pow(pv, g) - tail) * (1 - tail);
      EXPECT_NEAR(r.coalescing_mass, expected, 1e-12) << tm << " p=" << pv;
      EXPECT_NEAR(r.coalescing_mass + r.antithetic_mass, (1 - tail) * (1 - tail), 1e-12);
      EXPECT_LE(r.plus_discrepancy, 2 * tail);
      EXPECT_LE(r.minus_discrepancy, 2 * tail);
    }
  }
}

TEST(CoupledContraction, EmptyAndOverlapCases) {
  RandomStream stream(5);
  const CoupledState state{Interval::span(-3, 0), Interval::span(-1, 2), false};
  const Interval overlap = Interval::span(-1, 0);
  int identical = 0;
  constexpr int kSamples = 110'000;
  for (int i = 0; i < kSamples; ++i) {
    const auto [tm, tp] = coupled_contraction(state, stream);
    if (tm.is_empty()) {
      ASSERT_TRUE(tp.is_empty());
      continue;
    }
    ASSERT_EQ(tm == tp, overlap.contains(tm)) << tm;
    identical += tm == tp ? 1 : 0;
  }
  // Three of the eleven outcomes lie in the overlap.
  const double q = 3.0 / 11.0;
  EXPECT_NEAR(static_cast<double>(identical) / kSamples, q, 4 * std::sqrt(q * (1 - q) / kSamples));
  EXPECT_THROW(coupled_contraction(CoupledState{Interval::point(0), Interval::point(0), true},
                                   stream),
               std::invalid_argument);
}

// Every contraction outcome and every surface-prefix class, from every small
// antithetic host: the next state is in O, coalesced S or A-proper, and the
// plus process dominates on the nonnegative sites.
TEST(CoupledStep, ClassClosureByEnumeration) {
  const ExpansionParam p(0.5);
  constexpr std::uint64_t kLen = 12;
  std::uint64_t checked = 0;
  for (const Interval& host : antithetic_hosts(8)) {
    for (const Interval& tm : subintervals(host)) {
      const Interval tp = psi(host, tm);
      if (tm.is_empty()) {
        ASSERT_TRUE(tp.is_empty());
        continue;
      }
      if (tm == tp) continue;  // shared expansion keeps them identical
      ASSERT_EQ(classify_pair(tm, tp), PairClass::kAProper) << host << " " << tm;
      for (std::uint64_t kr = 0; kr < kLen; ++kr) {
        for (std::uint64_t kl = 0; kl < kLen; ++kl) {
          auto right = BernoulliSurface::fixed(p, ones_then_zero(kr));
          auto left = BernoulliSurface::fixed(p, ones_then_zero(kl));
          const CoupledState next = coupled_expansion(tm, tp, right, left);
          const PairClass c = classify_pair(next.minus, next.plus);
          if (next.coalesced) {
            ASSERT_EQ(c, PairClass::kS);
          } else {
            ASSERT_EQ(c, PairClass::kAProper) << host << " " << tm << " " << kr << " " << kl;
          }
          ASSERT_TRUE(dominates_on_nonnegative(next.minus, next.plus));
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 10'000u);
}

TEST(CoupledStep, OAndCoalescedStates) {
  const ExpansionParam p(0.5);
  RandomStream stream(3);
  const CoupledState o{Interval::empty(), Interval::empty(), false};
  EXPECT_EQ(coupled_step(o, p, stream), o);
  CoupledState s{Interval::span(0, 2), Interval::span(0, 2), true};
  for (int i = 0; i < 200 && !s.minus.is_empty(); ++i) {
    s = coupled_step(s, p, stream);
    ASSERT_TRUE(s.coalesced);
    ASSERT_EQ(s.minus, s.plus);
  }
  EXPECT_THROW(coupled_step({Interval::point(3), Interval::point(4), false}, p, stream),
               std::invalid_argument);
  EXPECT_THROW(coupled_step({Interval::point(3), Interval::point(4), true}, p, stream),
               std::invalid_argument);
}

TEST(RunCoupled, InitialStateAndInvariants) {
  const ExpansionParam p(0.5);
  const auto zero = run_coupled(0, p, std::uint64_t{1});
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].minus, Interval::point(-1));
  EXPECT_EQ(zero[0].plus, Interval::point(0));
  EXPECT_EQ(classify_pair(zero[0].minus, zero[0].plus), PairClass::kAProper);

  for (std::uint64_t seed = 0; seed < 5000; ++seed) {
    const auto path = run_coupled(50, p, seed);
    bool coalesced = false;
    for (const CoupledState& s : path) {
      const PairClass c = classify_pair(s.minus, s.plus);
      if (coalesced) {
        ASSERT_TRUE(s.coalesced);
      }
      coalesced = s.coalesced;
      if (s.coalesced) {
        ASSERT_EQ(s.minus, s.plus);
      } else {
        ASSERT_TRUE(c == PairClass::kO || c == PairClass::kAProper);
      }
      ASSERT_TRUE(dominates_on_nonnegative(s.minus, s.plus));
    }
  }
}

TEST(RunCoupled, SkipPsiBreaksPlusMarginal) {
  // Copying the minus contraction makes the plus process start its first step
  // from a subinterval of {-1}; it can never see site 0 survive alone.
  const ExpansionParam p(0.5);
  int plus_has_zero = 0;
  constexpr int kRuns = 20'000;
  for (int seed = 0; seed < kRuns; ++seed) {
    const auto path = run_coupled(1, p, static_cast<std::uint64_t>(seed), {.skip_psi = true});
    plus_has_zero += path[1].plus.contains(0) ? 1 : 0;
  }
  // Faithful: P(0 in plus_1) = 1/2. Mutant: 1/2 * p = 1/4.
  EXPECT_LT(static_cast<double>(plus_has_zero) / kRuns, 0.3);
}

TEST(Domination, Definition) {
  EXPECT_TRUE(dominates_on_nonnegative(Interval::empty(), Interval::empty()));
  EXPECT_TRUE(dominates_on_nonnegative(Interval::span(-4, -1), Interval::empty()));
  EXPECT_TRUE(dominates_on_nonnegative(Interval::span(-4, 1), Interval::span(-2, 3)));
  EXPECT_FALSE(dominates_on_nonnegative(Interval::span(-4, 1), Interval::span(1, 3)));
  EXPECT_FALSE(dominates_on_nonnegative(Interval::span(0, 0), Interval::empty()));
}

TEST(Reflection, Examples) {
  const ExpansionParam p(0.5);
  RandomStream stream(0);
  const MirrorPair dead{Interval::empty(), Interval::empty()};
  EXPECT_EQ(reflection_coupled_step(dead, p, stream), dead);

  // Search for a stream whose draws are: survive, N_L = 1, N_R = 2.
  for (std::uint64_t seed = 0;; ++seed) {
    RandomStream probe(seed);
    if (probe.uniform_below(2) != 1) continue;
    if (geometric_sample(p, probe) != 1 || geometric_sample(p, probe) != 2) continue;
    RandomStream s(seed);
    const MirrorPair next =
        reflection_coupled_step({Interval::point(0), Interval::point(0)}, p, s);
    EXPECT_EQ(next.zeta, Interval::span(-1, 2));
    EXPECT_EQ(next.eta, Interval::span(-2, 1));
    RandomStream m(seed);
    const MirrorPair broken = reflection_coupled_step(
        {Interval::point(0), Interval::point(0)}, p, m, {.unmirrored_expansion = true});
    EXPECT_NE(broken.eta, reflect_origin(broken.zeta));
    break;
  }
  EXPECT_THROW(reflection_coupled_step({Interval::point(1), Interval::point(1)}, p, stream),
               std::invalid_argument);
}

TEST(Reflection, IdentityAlongRuns) {
  const ExpansionParam p(0.6);
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const auto path = run_reflection_coupled(Interval::point(0), 50, p, seed);
    ASSERT_EQ(path.size(), 51u);
    for (const MirrorPair& m : path) ASSERT_EQ(m.eta, reflect_origin(m.zeta));
  }
  // The mutant breaks the identity and the run stops after the break.
  std::uint64_t broken = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto path =
        run_reflection_coupled(Interval::point(0), 50, p, seed, {.unmirrored_expansion = true});
    broken += path.back().eta != reflect_origin(path.back().zeta) ? 1 : 0;
  }
  EXPECT_GT(broken, 0u);
}

}  // namespace
}  // namespace rfi
