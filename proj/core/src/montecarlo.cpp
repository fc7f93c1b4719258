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

#include "rfi/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rfi {
namespace {

// Standalone simulations in the coupling test draw from a stream family
// disjoint from the coupled runs.
constexpr std::uint64_t kStandaloneSalt = 0x5a17'0c0f'fee0'd00dULL;

// Runs fn(trial, acc) for every trial in [0, trials), split into contiguous
// blocks over `jobs` threads, then folds the per-thread accumulators with
// merge(into, from) in block order.
template <class Acc, class Fn, class Merge>
Acc run_trials(std::uint64_t trials, unsigned jobs, const Acc& zero, Fn&& fn, Merge&& merge) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || trials < 2 * static_cast<std::uint64_t>(jobs)) {
    Acc acc = zero;
    for (std::uint64_t i = 0; i < trials; ++i) fn(i, acc);
    return acc;
  }
  std::vector<Acc> partial(jobs, zero);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  const std::uint64_t block = (trials + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      const std::uint64_t begin = j * block;
      const std::uint64_t end = std::min(trials, begin + block);
      for (std::uint64_t i = begin; i < end; ++i) fn(i, partial[j]);
    });
  }
  for (auto& w : workers) w.join();
  Acc acc = zero;
  for (auto& part : partial) merge(acc, part);
  return acc;
}

void add_counts(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

double simultaneous_confidence(double confidence, std::size_t comparisons) {
  return 1.0 - (1.0 - confidence) / static_cast<double>(std::max<std::size_t>(1, comparisons));
}

std::string format_site(const std::vector<Site>& site) {
  std::string out = "(";
  for (std::size_t i = 0; i < site.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(site[i]);
  }
  return out + ")";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Tracks the smallest margin of a check.
struct MarginTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::string where;

  void update(double margin, const std::string& label) {
    if (margin < worst) {
      worst = margin;
      where = label;
    }
  }
};

CheckReport finish(std::string claim, const MarginTracker& margin,
                   std::vector<std::pair<std::string, std::string>> parameters) {
  CheckReport report;
  report.claim = std::move(claim);
  report.worst_margin = std::isfinite(margin.worst) ? margin.worst : 0.0;
  report.worst_case = margin.where;
  report.pass = !(margin.worst < 0.0);
  report.parameters = std::move(parameters);
  return report;
}

Interval one_sided_expand(const Interval& core, ExpansionParam p, RandomStream& stream) {
  if (core.is_empty()) return core;
  const auto right_shift = static_cast<Site>(geometric_sample(p, stream));
  return Interval::span(core.left(), core.right() + right_shift);
}

HyperRect one_sided_expand(const HyperRect& core, ExpansionParam p, RandomStream& stream) {
  if (core.is_empty()) return core;
  std::vector<Interval> spans;
  for (const Interval& s : core.spans()) spans.push_back(one_sided_expand(s, p, stream));
  return HyperRect::box(std::move(spans));
}

std::vector<OccupancyEstimate> to_estimates(const std::vector<std::vector<Site>>& sites,
                                            const std::vector<std::uint64_t>& hits,
                                            std::uint64_t trials, const McOptions& options) {
  std::vector<OccupancyEstimate> out;
  out.reserve(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    OccupancyEstimate e;
    e.site = sites[k];
    e.trials = trials;
    e.hits = hits[k];
    e.estimate = static_cast<double>(hits[k]) / static_cast<double>(trials);
    out.push_back(std::move(e));
  }
  reinterval(out, options.confidence, options.method);
  return out;
}

}  // namespace

const char* to_string(Mutant m) noexcept {
  switch (m) {
    case Mutant::kNone:
      return "none";
    case Mutant::kSkipPsi:
      return "skip-psi";
    case Mutant::kUnmirroredReflection:
      return "unmirrored-reflection";
    case Mutant::kOneSidedExpansion:
      return "one-sided-expansion";
  }
  return "?";
}

std::optional<Mutant> parse_mutant(std::string_view name) noexcept {
  for (Mutant m : {Mutant::kNone, Mutant::kSkipPsi, Mutant::kUnmirroredReflection,
                   Mutant::kOneSidedExpansion}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

Interval simulate_state(const Interval& initial, std::uint64_t t, const ContractionRule& rule,
                        ExpansionParam p, RandomStream& stream, Mutant mutant) {
  Interval state = initial;
  for (std::uint64_t s = 0; s < t && !state.is_empty(); ++s) {
    const Interval core = contract(state, rule, p, stream);
    state = mutant == Mutant::kOneSidedExpansion ? one_sided_expand(core, p, stream)
                                                 : expand(core, p, stream);
  }
  return state;
}

void reinterval(std::vector<OccupancyEstimate>& estimates, double confidence,
                IntervalMethod method) {
  for (auto& e : estimates) {
    const ProportionInterval ci = proportion_interval(method, e.hits, e.trials, confidence);
    e.ci_lo = ci.lo;
    e.ci_hi = ci.hi;
  }
}

std::vector<OccupancyEstimate> estimate_occupancy(const Interval& initial, std::uint64_t t,
                                                  std::span<const Site> sites,
                                                  std::uint64_t trials,
                                                  const ContractionRule& rule, ExpansionParam p,
                                                  std::uint64_t seed,
                                                  const McOptions& options) {
  if (trials == 0) throw std::invalid_argument("estimate_occupancy: trials must be >= 1");
  const RandomStream root(seed);
  const std::vector<std::uint64_t> zero(sites.size(), 0);
  const auto hits = run_trials(
      trials, options.jobs, zero,
      [&](std::uint64_t trial, std::vector<std::uint64_t>& acc) {
        RandomStream stream = root.substream(trial);
        const Interval state = simulate_state(initial, t, rule, p, stream, options.mutant);
        if (state.is_empty()) return;
        for (std::size_t k = 0; k < sites.size(); ++k) {
          if (state.contains(sites[k])) ++acc[k];
        }
      },
      add_counts);
  std::vector<std::vector<Site>> labels;
  labels.reserve(sites.size());
  for (Site x : sites) labels.push_back({x});
  return to_estimates(labels, hits, trials, options);
}

std::vector<OccupancyEstimate> estimate_occupancy_rect(const HyperRect& initial, std::uint64_t t,
                                                       std::span<const std::vector<Site>> sites,
                                                       std::uint64_t trials, ExpansionParam p,
                                                       std::uint64_t seed,
                                                       const McOptions& options) {
  if (trials == 0) throw std::invalid_argument("estimate_occupancy_rect: trials must be >= 1");
  for (const auto& s : sites) {
    if (s.size() != initial.dimension()) {
      throw std::invalid_argument("estimate_occupancy_rect: site dimension mismatch");
    }
  }
  const RandomStream root(seed);
  const std::vector<std::uint64_t> zero(sites.size(), 0);
  const auto hits = run_trials(
      trials, options.jobs, zero,
      [&](std::uint64_t trial, std::vector<std::uint64_t>& acc) {
        RandomStream stream = root.substream(trial);
        HyperRect state = initial;
        for (std::uint64_t s = 0; s < t && !state.is_empty(); ++s) {
          const HyperRect core = contract_uniform(state, stream);
          state = options.mutant == Mutant::kOneSidedExpansion
                      ? one_sided_expand(core, p, stream)
                      : expand_faces(core, p, stream);
        }
        if (state.is_empty()) return;
        for (std::size_t k = 0; k < sites.size(); ++k) {
          if (state.contains(sites[k])) ++acc[k];
        }
      },
      add_counts);
  return to_estimates({sites.begin(), sites.end()}, hits, trials, options);
}

CheckReport check_even(std::uint64_t t, ExpansionParam p, Site x_range, std::uint64_t trials,
                       std::uint64_t seed, const McOptions& options) {
  std::vector<Site> sites;
  for (Site x = -x_range; x <= x_range; ++x) sites.push_back(x);
  auto est = estimate_occupancy(Interval::point(0), t, sites, trials, UniformRule{}, p, seed,
                                options);
  reinterval(est, simultaneous_confidence(options.confidence, sites.size()), options.method);
  MarginTracker margin;
  for (Site x = 1; x <= x_range; ++x) {
    const auto& pos = est[static_cast<std::size_t>(x_range + x)];
    const auto& neg = est[static_cast<std::size_t>(x_range - x)];
    const std::string where = "x=" + std::to_string(x) + " f(x)=" + format_double(pos.estimate) +
                              " f(-x)=" + format_double(neg.estimate);
    margin.update(pos.ci_hi - neg.ci_lo, where);
    margin.update(neg.ci_hi - pos.ci_lo, where);
  }
  return finish("even", margin,
                {{"t", std::to_string(t)},
                 {"p", format_double(p.value())},
                 {"x_range", std::to_string(x_range)},
                 {"trials", std::to_string(trials)},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

CheckReport check_monotone_1d(std::uint64_t t, ExpansionParam p, Site x_max,
                              std::uint64_t trials, std::uint64_t seed,
                              const McOptions& options) {
  std::vector<Site> sites;
  for (Site x = 0; x <= x_max; ++x) sites.push_back(x);
  auto est = estimate_occupancy(Interval::point(0), t, sites, trials, UniformRule{}, p, seed,
                                options);
  reinterval(est, simultaneous_confidence(options.confidence, sites.size()), options.method);
  MarginTracker margin;
  for (Site x = 0; x < x_max; ++x) {
    const auto& near = est[static_cast<std::size_t>(x)];
    const auto& far = est[static_cast<std::size_t>(x + 1)];
    margin.update(near.ci_hi - far.ci_lo,
                  "x=" + std::to_string(x) + " f(x)=" + format_double(near.estimate) +
                      " f(x+1)=" + format_double(far.estimate));
  }
  return finish("monotone-1d", margin,
                {{"t", std::to_string(t)},
                 {"p", format_double(p.value())},
                 {"x_max", std::to_string(x_max)},
                 {"trials", std::to_string(trials)},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

std::vector<std::vector<Site>> l1_ball(std::size_t d, std::uint64_t radius) {
  std::vector<std::vector<Site>> out;
  const auto r = static_cast<Site>(radius);
  std::vector<Site> point(d, -r);
  while (true) {
    if (l1_norm(point) <= radius) out.push_back(point);
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (point[axis] < r) {
        ++point[axis];
        for (std::size_t k = axis + 1; k < d; ++k) point[k] = -r;
        break;
      }
      if (axis == 0) return out;
    }
    if (d == 0) return out;
  }
}

CheckReport check_monotone_l1(std::size_t d, std::uint64_t t, ExpansionParam p,
                              std::uint64_t radius, std::uint64_t trials, std::uint64_t seed,
                              const McOptions& options) {
  if (d < 2) throw std::invalid_argument("check_monotone_l1: dimension must be >= 2");
  const auto sites = l1_ball(d, radius);
  const std::vector<Site> origin(d, 0);
  auto est = estimate_occupancy_rect(HyperRect::point(origin), t, sites, trials, p, seed,
                                     options);
  reinterval(est, simultaneous_confidence(options.confidence, sites.size()), options.method);
  MarginTracker margin;
  for (const auto& x : est) {
    for (const auto& y : est) {
      if (&x == &y || l1_norm(x.site) > l1_norm(y.site)) continue;
      margin.update(x.ci_hi - y.ci_lo, "x=" + format_site(x.site) + " f(x)=" +
                                           format_double(x.estimate) + " y=" +
                                           format_site(y.site) + " f(y)=" +
                                           format_double(y.estimate));
    }
  }
  return finish("monotone-l1", margin,
                {{"d", std::to_string(d)},
                 {"t", std::to_string(t)},
                 {"p", format_double(p.value())},
                 {"radius", std::to_string(radius)},
                 {"trials", std::to_string(trials)},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

namespace {

using StateCounts = std::vector<std::map<Interval, std::uint64_t>>;

void merge_state_counts(StateCounts& into, const StateCounts& from) {
  for (std::size_t i = 0; i < into.size(); ++i) {
    for (const auto& [state, count] : from[i]) into[i][state] += count;
  }
}

ChiSquareResult compare_laws(const std::map<Interval, std::uint64_t>& a,
                             const std::map<Interval, std::uint64_t>& b) {
  std::map<Interval, std::pair<std::uint64_t, std::uint64_t>> joint;
  for (const auto& [s, c] : a) joint[s].first += c;
  for (const auto& [s, c] : b) joint[s].second += c;
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
  for (const auto& [s, c] : joint) {
    first.push_back(c.first);
    second.push_back(c.second);
  }
  return chi_square_two_sample(first, second);
}

}  // namespace

CheckReport coupling_marginal_test(std::uint64_t t, ExpansionParam p, std::uint64_t trials,
                                   std::uint64_t seed, const McOptions& options) {
  if (trials == 0) throw std::invalid_argument("coupling_marginal_test: trials must be >= 1");
  const CouplingOptions coupling{options.mutant == Mutant::kSkipPsi};
  const RandomStream root(seed);
  const RandomStream standalone_root = RandomStream(seed ^ kStandaloneSalt);
  // Index 4 * (s - 1) + {0: coupled minus, 1: coupled plus, 2: lone minus, 3: lone plus}.
  const StateCounts zero(4 * t);
  const StateCounts counts = run_trials(
      trials, options.jobs, zero,
      [&](std::uint64_t trial, StateCounts& acc) {
        const auto path = run_coupled(t, p, root.substream(trial), coupling);
        RandomStream lone = standalone_root.substream(trial);
        const auto minus_path =
            simulate_path(Interval::point(-1), t, UniformRule{}, p, lone);
        const auto plus_path = simulate_path(Interval::point(0), t, UniformRule{}, p, lone);
        for (std::uint64_t s = 1; s <= t; ++s) {
          acc[4 * (s - 1) + 0][path[s].minus]++;
          acc[4 * (s - 1) + 1][path[s].plus]++;
          acc[4 * (s - 1) + 2][minus_path[s]]++;
          acc[4 * (s - 1) + 3][plus_path[s]]++;
        }
      },
      merge_state_counts);

  const double alpha = 1e-3 / (2.0 * static_cast<double>(std::max<std::uint64_t>(1, t)));
  MarginTracker margin;
  for (std::uint64_t s = 1; s <= t; ++s) {
    const ChiSquareResult minus = compare_laws(counts[4 * (s - 1)], counts[4 * (s - 1) + 2]);
    const ChiSquareResult plus = compare_laws(counts[4 * (s - 1) + 1], counts[4 * (s - 1) + 3]);
    margin.update(minus.p_value - alpha, "t=" + std::to_string(s) + " minus chi2=" +
                                             format_double(minus.statistic) + " dof=" +
                                             std::to_string(minus.dof) +
                                             " p=" + format_double(minus.p_value));
    margin.update(plus.p_value - alpha, "t=" + std::to_string(s) + " plus chi2=" +
                                            format_double(plus.statistic) + " dof=" +
                                            std::to_string(plus.dof) +
                                            " p=" + format_double(plus.p_value));
  }
  return finish("coupling-marginals", margin,
                {{"t", std::to_string(t)},
                 {"p", format_double(p.value())},
                 {"trials", std::to_string(trials)},
                 {"alpha_per_test", format_double(alpha)},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

CheckReport coupling_invariants_check(std::uint64_t runs, std::uint64_t horizon,
                                      ExpansionParam p, std::uint64_t seed,
                                      const McOptions& options) {
  const CouplingOptions coupling{options.mutant == Mutant::kSkipPsi};
  const RandomStream root(seed);
  struct Tally {
    std::uint64_t violations = 0;
    std::uint64_t steps = 0;
    std::uint64_t first_bad_run = std::numeric_limits<std::uint64_t>::max();
  };
  const Tally tally = run_trials(
      runs, options.jobs, Tally{},
      [&](std::uint64_t run, Tally& acc) {
        std::vector<CoupledState> path;
        bool bad = false;
        try {
          path = run_coupled(horizon, p, root.substream(run), coupling);
        } catch (const std::exception&) {
          bad = true;
        }
        bool was_coalesced = false;
        for (const CoupledState& s : path) {
          ++acc.steps;
          const PairClass cls = classify_pair(s.minus, s.plus);
          const bool class_ok = s.coalesced ? s.minus == s.plus
                                            : (cls == PairClass::kAProper || cls == PairClass::kO);
          const bool absorbing_ok = !was_coalesced || s.coalesced;
          if (!class_ok || !absorbing_ok || !dominates_on_nonnegative(s.minus, s.plus)) bad = true;
          was_coalesced = s.coalesced;
        }
        if (bad) {
          ++acc.violations;
          acc.first_bad_run = std::min(acc.first_bad_run, run);
        }
      },
      [](Tally& into, const Tally& from) {
        into.violations += from.violations;
        into.steps += from.steps;
        into.first_bad_run = std::min(into.first_bad_run, from.first_bad_run);
      });
  MarginTracker margin;
  margin.update(0.0 - static_cast<double>(tally.violations),
                tally.violations == 0 ? "steps=" + std::to_string(tally.steps)
                                      : "first violating run " + std::to_string(tally.first_bad_run));
  return finish("coupling-invariants", margin,
                {{"runs", std::to_string(runs)},
                 {"horizon", std::to_string(horizon)},
                 {"p", format_double(p.value())},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

CheckReport reflection_check(std::uint64_t runs, std::uint64_t horizon, ExpansionParam p,
                             std::uint64_t seed, const McOptions& options) {
  const ReflectionOptions reflection{options.mutant == Mutant::kUnmirroredReflection};
  const RandomStream root(seed);
  struct Tally {
    std::uint64_t violations = 0;
    std::uint64_t steps = 0;
  };
  const Tally tally = run_trials(
      runs, options.jobs, Tally{},
      [&](std::uint64_t run, Tally& acc) {
        const auto path = run_reflection_coupled(Interval::point(0), horizon, p,
                                                 root.substream(run), reflection);
        acc.steps += path.size();
        const MirrorPair& last = path.back();
        if (path.size() != horizon + 1 || last.eta != reflect_origin(last.zeta)) {
          ++acc.violations;
        }
      },
      [](Tally& into, const Tally& from) {
        into.violations += from.violations;
        into.steps += from.steps;
      });
  MarginTracker margin;
  margin.update(0.0 - static_cast<double>(tally.violations),
                "violating runs=" + std::to_string(tally.violations) +
                    " steps=" + std::to_string(tally.steps));
  return finish("reflection", margin,
                {{"runs", std::to_string(runs)},
                 {"horizon", std::to_string(horizon)},
                 {"p", format_double(p.value())},
                 {"seed", std::to_string(seed)},
                 {"mutant", to_string(options.mutant)}});
}

double CoalescenceSummary::resolved_fraction(std::uint64_t s) const {
  if (trials == 0) return 0.0;
  std::uint64_t total = 0;
  for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(s, horizon); ++k) total += first_time[k];
  return static_cast<double>(total) / static_cast<double>(trials);
}

double CoalescenceSummary::censored_fraction() const {
  return trials == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(trials);
}

CoalescenceSummary coalescence_stats(ExpansionParam p, std::uint64_t horizon,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const McOptions& options) {
  const CouplingOptions coupling{options.mutant == Mutant::kSkipPsi};
  const RandomStream root(seed);
  CoalescenceSummary zero;
  zero.trials = trials;
  zero.horizon = horizon;
  zero.first_time.assign(horizon + 1, 0);
  return run_trials(
      trials, options.jobs, zero,
      [&](std::uint64_t trial, CoalescenceSummary& acc) {
        RandomStream stream = root.substream(trial);
        CoupledState state;
        for (std::uint64_t s = 1; s <= horizon; ++s) {
          state = coupled_step(state, p, stream, coupling);
          if (state.coalesced || classify_pair(state.minus, state.plus) == PairClass::kO) {
            ++acc.first_time[s];
            ++(state.coalesced ? acc.coalesced : acc.absorbed);
            return;
          }
        }
        ++acc.censored;
      },
      [](CoalescenceSummary& into, const CoalescenceSummary& from) {
        for (std::size_t k = 0; k < into.first_time.size(); ++k) into.first_time[k] += from.first_time[k];
        into.coalesced += from.coalesced;
        into.absorbed += from.absorbed;
        into.censored += from.censored;
      });
}

}  // namespace rfi
