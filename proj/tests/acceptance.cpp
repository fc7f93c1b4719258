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

// Acceptance gate. Prints one PASS/FAIL line per criterion; tolerances and
// runtime limits are pinned below. `acceptance N` runs criterion N alone,
// no argument runs all of them. Exit status is nonzero iff a run criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rfi/couplings.hpp"
#include "rfi/exact_oracle.hpp"
#include "rfi/hyperrect.hpp"
#include "rfi/montecarlo.hpp"
#include "rfi/process.hpp"

namespace {

using namespace rfi;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> body;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<Interval> all_subintervals(const Interval& host) {
  std::vector<Interval> out{Interval::empty()};
  for (Site a = host.left(); a <= host.right(); ++a) {
    for (Site b = a; b <= host.right(); ++b) out.push_back(Interval::span(a, b));
  }
  return out;
}

std::vector<Interval> antithetic_hosts(std::uint64_t max_size) {
  std::vector<Interval> out;
  const auto reach = static_cast<Site>(max_size) + 1;
  for (Site a = -reach; a <= reach; ++a) {
    for (Site b = a; b <= reach && static_cast<std::uint64_t>(b - a + 1) <= max_size; ++b) {
      const Interval h = Interval::span(a, b);
      if (classify_pair(h, mirror(h)) == PairClass::kAProper) out.push_back(h);
    }
  }
  return out;
}

// 1. t = 1 closed form f_1(x) = p^|x| / 2 at p = 1/2, n_max = 40, |x| <= 10.
Outcome closed_form() {
  constexpr double kMaxWidth = 1e-12;
  const auto d = evolve<Rational>(Interval::point(0), 1, UniformRule{},
                                  ExpansionParam::parse("1/2"), {40});
  Outcome o;
  Rational f(1, 2);
  for (Site x = 0; x <= 10; ++x) {
    for (Site y : {x, -x}) {
      const auto b = occupancy_bounds(d, y);
      o.ok = o.ok && b.lo <= f && f <= b.hi && b.hi - b.lo == d.lost();
    }
    f /= 2;
  }
  o.ok = o.ok && to_double(d.lost()) <= kMaxWidth;
  o.detail = "width = lost = " + num(to_double(d.lost())) + " (<= " + num(kMaxWidth) + ")";
  return o;
}

// 2 and 3 share one rational evolution per p, stepping t = 1..4.
constexpr std::uint32_t kTheoremNmax = 20;
struct TheoremGrid {
  bool even_ok = true;
  bool decreasing_ok = true;
  double even_worst = 0.0;        // max |lo(x) - lo(-x)| - 2 lost
  double decreasing_worst = 0.0;  // min lo(x) - lo(x+1) + 2 lost
  std::string even_where;
  std::string decreasing_where;
};

const TheoremGrid& theorem_grid() {
  static const TheoremGrid grid = [] {
    TheoremGrid g;
    g.even_worst = -1.0;
    g.decreasing_worst = 1.0;
    for (const char* pv : {"0.2", "0.5", "0.8"}) {
      const ExpansionParam p = ExpansionParam::parse(pv);
      auto dist = StateDist<Rational>::point_mass(Interval::point(0));
      for (std::uint64_t t = 1; t <= 4; ++t) {
        dist = expansion_pushforward(contraction_pushforward(dist, UniformRule{}, p), p,
                                     {kTheoremNmax});
        const Rational slack = 2 * dist.lost();
        std::map<Site, Rational> lo;
        for (Site x = -15; x <= 15; ++x) lo[x] = occupancy_bounds(dist, x).lo;
        for (Site x = 1; x <= 15; ++x) {
          const Rational gap = abs(lo[x] - lo[-x]) - slack;
          if (gap > 0) g.even_ok = false;
          if (to_double(gap) > g.even_worst) {
            g.even_worst = to_double(gap);
            g.even_where = std::string("p=") + pv + " t=" + std::to_string(t) +
                           " x=" + std::to_string(x);
          }
        }
        for (Site x = 0; x <= 14; ++x) {
          const Rational margin = lo[x] - lo[x + 1] + slack;
          if (margin < 0) g.decreasing_ok = false;
          if (to_double(margin) < g.decreasing_worst) {
            g.decreasing_worst = to_double(margin);
            g.decreasing_where = std::string("p=") + pv + " t=" + std::to_string(t) +
                                 " x=" + std::to_string(x);
          }
        }
      }
    }
    return g;
  }();
  return grid;
}

Outcome evenness() {
  const TheoremGrid& g = theorem_grid();
  return {g.even_ok, "rational, n_max=" + std::to_string(kTheoremNmax) +
                         "; max |lo(x)-lo(-x)| - 2 lost = " + num(g.even_worst) + " at " +
                         g.even_where};
}

Outcome monotonicity() {
  const TheoremGrid& g = theorem_grid();
  return {g.decreasing_ok, "rational, n_max=" + std::to_string(kTheoremNmax) +
                               "; min lo(x)-lo(x+1) + 2 lost = " + num(g.decreasing_worst) +
                               " at " + g.decreasing_where};
}

// 4. psi is a bijection I(host) -> I(mirror(host)) for hosts of <= 12 sites.
Outcome psi_bijection() {
  Outcome o;
  std::uint64_t hosts = 0;
  for (const Interval& host : antithetic_hosts(12)) {
    ++hosts;
    const auto target = all_subintervals(mirror(host));
    const std::set<Interval> target_set(target.begin(), target.end());
    std::set<Interval> image;
    std::uint64_t domain = 0;
    for (const Interval& j : all_subintervals(host)) {
      image.insert(psi(host, j));
      ++domain;
    }
    if (image.size() != domain || image != target_set) {
      o.ok = false;
      o.detail = "fails at host " + to_string(host);
      return o;
    }
  }
  o.detail = std::to_string(hosts) + " hosts: injective, image = I(mirror(host))";
  return o;
}

// 5. Uniform law on I(host) pushed through psi is uniform on I(mirror(host)).
Outcome contraction_marginal() {
  Outcome o;
  std::uint64_t hosts = 0;
  for (const Interval& host : antithetic_hosts(6)) {
    ++hosts;
    const Rational tv = psi_pushforward_tv(host);
    if (tv != 0) {
      o.ok = false;
      o.detail = "TV " + tv.get_str() + " at host " + to_string(host);
      return o;
    }
  }
  o.detail = std::to_string(hosts) + " hosts, exact TV = 0";
  return o;
}

// 6. Surface enumeration of length 14 at p = 1/2: shift laws within 2 p^14.
Outcome expansion_marginal() {
  constexpr std::uint32_t kLen = 14;
  const ExpansionParam p(0.5);
  const double bound = 2 * std::pow(0.5, kLen);
  double worst = 0.0;
  std::string where;
  std::uint64_t pairs = 0;
  for (const Interval& host : antithetic_hosts(8)) {
    for (const Interval& tm : all_subintervals(host)) {
      const Interval tp = tm.is_empty() ? tm : psi(host, tm);
      if (classify_pair(tm, tp) != PairClass::kAProper || tm != host) continue;
      ++pairs;
      const ExpansionMarginalReport r = expansion_marginal_check(tm, tp, p, kLen);
      for (double d : {r.plus_discrepancy, r.minus_discrepancy}) {
        if (d > worst) {
          worst = d;
          where = to_string(tm);
        }
      }
    }
  }
  double transition_worst = 0.0;
  for (const Interval& host : antithetic_hosts(6)) {
    const CouplingTransitionReport r = coupling_transition_check(host, p, kLen);
    transition_worst = std::max({transition_worst, r.plus_discrepancy, r.minus_discrepancy});
  }
  Outcome o;
  o.ok = worst <= bound && transition_worst <= bound;
  o.detail = std::to_string(pairs) + " A-proper pairs; max shift-law discrepancy " + num(worst) +
             (where.empty() ? "" : " at " + where) + ", one-step law " + num(transition_worst) +
             " (bound " + num(bound) + ")";
  return o;
}

// 7. Class closure, domination and absorbing coalescence along 1e5 runs.
Outcome class_closure() {
  Outcome o;
  for (double pv : {0.3, 0.5, 0.7}) {
    const CheckReport r = coupling_invariants_check(100'000, 50, ExpansionParam(pv), 7);
    o.ok = o.ok && r.pass;
    o.detail += "p=" + num(pv) + ": " + (r.pass ? "ok" : r.worst_case) + "; ";
  }
  return o;
}

// 8. Mirror identity of the reflection coupling along 1e5 runs.
Outcome reflection_identity() {
  Outcome o;
  for (double pv : {0.3, 0.5, 0.7}) {
    const CheckReport r = reflection_check(100'000, 50, ExpansionParam(pv), 8);
    o.ok = o.ok && r.pass;
    o.detail += "p=" + num(pv) + ": " + r.worst_case + "; ";
  }
  return o;
}

// 9. MC within [lo - CI, hi + CI] of the oracle, and CI coverage.
Outcome mc_consistency() {
  constexpr std::uint64_t kTrials = 1'000'000;
  constexpr double kNominal = 0.99;
  constexpr int kReps = 500;
  constexpr double kMinCoverage = 0.98;
  const ExpansionParam p(0.5);
  std::vector<Site> sites;
  for (Site x = -10; x <= 10; ++x) sites.push_back(x);
  // Simultaneous over all (t, x) cells by a union bound.
  const double per_cell = 1.0 - (1.0 - kNominal) / static_cast<double>(3 * sites.size());
  Outcome o;
  double worst = 1.0;
  std::string where;
  for (std::uint64_t t = 1; t <= 3; ++t) {
    const auto dist = evolve<double>(Interval::point(0), t, UniformRule{}, p, {40});
    const auto est = estimate_occupancy(Interval::point(0), t, sites, kTrials, UniformRule{}, p,
                                        900 + t, {.confidence = per_cell});
    for (const auto& e : est) {
      const auto b = occupancy_bounds(dist, e.site[0]);
      const double margin = std::min(b.hi - e.ci_lo, e.ci_hi - b.lo);
      if (margin < worst) {
        worst = margin;
        where = "t=" + std::to_string(t) + " x=" + std::to_string(e.site[0]);
      }
    }
  }
  o.ok = worst >= 0.0;

  const std::vector<Site> probe{0, 1, 2, 3};
  std::vector<int> covered(probe.size(), 0);
  for (int rep = 0; rep < kReps; ++rep) {
    const auto est = estimate_occupancy(Interval::point(0), 1, probe, 10'000, UniformRule{}, p,
                                        50'000 + static_cast<std::uint64_t>(rep),
                                        {.confidence = kNominal});
    for (std::size_t k = 0; k < probe.size(); ++k) {
      const double f = 0.5 * std::pow(0.5, static_cast<double>(probe[k]));
      covered[k] += est[k].ci_lo <= f && f <= est[k].ci_hi ? 1 : 0;
    }
  }
  double min_coverage = 1.0;
  for (int c : covered) min_coverage = std::min(min_coverage, static_cast<double>(c) / kReps);
  o.ok = o.ok && min_coverage >= kMinCoverage;
  o.detail = "worst oracle margin " + num(worst) + " at " + where + "; min coverage " +
             num(min_coverage) + " over x=0..3 (>= " + num(kMinCoverage) + ")";
  return o;
}

// 10. d = 2: ||x||_1 <= ||y||_1 implies f(x) >= f(y) up to CI margins.
Outcome l1_monotone() {
  constexpr std::uint64_t kTrials = 1'000'000;
  const ExpansionParam p(0.5);
  Outcome o;
  for (std::uint64_t t = 1; t <= 3; ++t) {
    const CheckReport r = check_monotone_l1(2, t, p, 4, kTrials, 1000 + t);
    o.ok = o.ok && r.pass;
    o.detail += "t=" + std::to_string(t) + ": " + (r.pass ? "pass" : "FAIL") + " margin " +
                num(r.worst_margin) + " [" + r.worst_case + "]; ";
  }
  // Context for the ledger: the same estimates restricted to strictly
  // smaller norms.
  const std::vector<Site> origin{0, 0};
  const auto sites = l1_ball(2, 4);
  auto est = estimate_occupancy_rect(HyperRect::point(origin), 3, sites, kTrials, p, 1003);
  reinterval(est, 1.0 - 0.01 / static_cast<double>(sites.size()), IntervalMethod::kWilson);
  double strict_worst = 1.0;
  for (const auto& x : est) {
    for (const auto& y : est) {
      if (l1_norm(x.site) < l1_norm(y.site)) strict_worst = std::min(strict_worst, x.ci_hi - y.ci_lo);
    }
  }
  o.detail += "strict-norm pairs only at t=3: margin " + num(strict_worst);
  return o;
}

// 11. Each mutant fails at least one suite that the faithful build passes.
Outcome mutant_sensitivity() {
  constexpr std::uint64_t kTrials = 100'000;
  const ExpansionParam p(0.5);
  auto suites = [&](Mutant m) {
    const McOptions o{.mutant = m};
    std::vector<std::pair<std::string, bool>> out;
    out.emplace_back("even", check_even(3, p, 10, kTrials, 11, o).pass);
    out.emplace_back("monotone-1d", check_monotone_1d(3, p, 10, kTrials, 12, o).pass);
    out.emplace_back("coupling-marginals", coupling_marginal_test(3, p, kTrials, 13, o).pass);
    out.emplace_back("coupling-invariants",
                     coupling_invariants_check(kTrials, 50, p, 14, o).pass);
    out.emplace_back("reflection", reflection_check(kTrials, 50, p, 15, o).pass);
    return out;
  };
  const auto faithful = suites(Mutant::kNone);
  Outcome o;
  for (const auto& [name, pass] : faithful) {
    if (!pass) {
      o.ok = false;
      o.detail += "faithful fails " + name + "; ";
    }
  }
  for (Mutant m : {Mutant::kSkipPsi, Mutant::kUnmirroredReflection, Mutant::kOneSidedExpansion}) {
    const auto mutated = suites(m);
    std::string caught;
    for (std::size_t i = 0; i < mutated.size(); ++i) {
      if (faithful[i].second && !mutated[i].second) caught += (caught.empty() ? "" : ",") + mutated[i].first;
    }
    o.ok = o.ok && !caught.empty();
    o.detail += std::string(to_string(m)) + " caught by {" + caught + "}; ";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "closed form t=1", 1.0, closed_form},
      {2, "evenness (exact)", 60.0, evenness},
      {3, "monotonicity (exact)", 60.0, monotonicity},
      {4, "psi bijectivity", 10.0, psi_bijection},
      {5, "coupled contraction marginal", 10.0, contraction_marginal},
      {6, "coupled expansion marginal", 30.0, expansion_marginal},
      {7, "class closure and domination", 120.0, class_closure},
      {8, "reflection identity", 60.0, reflection_identity},
      {9, "Monte Carlo consistency", 300.0, mc_consistency},
      {10, "2-D L1 monotonicity", 300.0, l1_monotone},
      {11, "mutant sensitivity", 300.0, mutant_sensitivity},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.body();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && seconds < c.limit_seconds;
    all_ok = all_ok && ok;
    std::printf("criterion %2d %s: %s | %s | %.2f s (limit %.0f s)\n", c.id, ok ? "PASS" : "FAIL",
                c.title, o.detail.c_str(), seconds, c.limit_seconds);
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
