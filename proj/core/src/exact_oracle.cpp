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

#include "rfi/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "rfi/couplings.hpp"

namespace rfi {
namespace {

template <class Mass>
Mass from_count(std::uint64_t n) {
  if constexpr (std::is_same_v<Mass, double>) {
    return static_cast<double>(n);
  } else {
    Rational r;
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
    r = z;
    return r;
  }
}

template <class Mass>
Mass from_double(double v) {
  if constexpr (std::is_same_v<Mass, double>) {
    return v;
  } else {
    return Rational(v);
  }
}

template <class Mass>
Mass param_value(ExpansionParam p) {
  if constexpr (std::is_same_v<Mass, double>) {
    return p.value();
  } else {
    if (p.has_exact_ratio()) {
      Rational r(static_cast<long>(p.num()), static_cast<unsigned long>(p.den()));
      r.canonicalize();
      return r;
    }
    return Rational(p.value());
  }
}

// (1 - p) p^n for n = 0..n_max, and p^(n_max + 1).
template <class Mass>
std::vector<Mass> truncated_geometric(ExpansionParam p, std::uint32_t n_max, Mass& tail) {
  const Mass pm = param_value<Mass>(p);
  std::vector<Mass> weights(n_max + 1);
  Mass power = 1;
  for (std::uint32_t n = 0; n <= n_max; ++n) {
    weights[n] = (1 - pm) * power;
    power *= pm;
  }
  tail = power;
  return weights;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// out(a, b) = factor(a, b) * sum_{l <= a, r >= b} w(l, r), computed in place
// by a prefix sum over l followed by a suffix sum over r.
template <class Mass>
void dominated_sum_in_place(StateDist<Mass>& table) {
  const std::size_t w = table.width();
  for (std::size_t a = 1; a < w; ++a) {
    for (std::size_t r = a; r < w; ++r) table.cell(a, r) += table.cell(a - 1, r);
  }
  for (std::size_t a = 0; a < w; ++a) {
    for (std::size_t b = w - 1; b > a; --b) table.cell(a, b - 1) += table.cell(a, b);
  }
}

}  // namespace

template <class Mass>
StateDist<Mass> StateDist<Mass>::point_mass(const Interval& state) {
  StateDist out;
  if (state.is_empty()) {
    out.empty_ = 1;
    return out;
  }
  out.reset_table(state.left(), state.size());
  out.cell(0, state.size() - 1) = 1;
  return out;
}

template <class Mass>
void StateDist<Mass>::reset_table(Site origin, std::size_t width) {
  origin_ = origin;
  width_ = width;
  cells_.assign(width * width, Mass(0));
}

template <class Mass>
Mass StateDist<Mass>::mass(const Interval& state) const {
  if (state.is_empty()) return empty_;
  if (width_ == 0 || state.left() < origin_ ||
      state.right() >= origin_ + static_cast<Site>(width_)) {
    return Mass(0);
  }
  return cell(static_cast<std::size_t>(state.left() - origin_),
              static_cast<std::size_t>(state.right() - origin_));
}

template <class Mass>
Mass StateDist<Mass>::total_weight() const {
  Mass total = empty_;
  for (std::size_t a = 0; a < width_; ++a) {
    for (std::size_t b = a; b < width_; ++b) total += cell(a, b);
  }
  return total;
}

template <class Mass>
std::optional<Interval> StateDist<Mass>::window() const {
  if (width_ == 0) return std::nullopt;
  return Interval::span(origin_, origin_ + static_cast<Site>(width_) - 1);
}

template <class Mass>
std::size_t StateDist<Mass>::support_size() const {
  std::size_t count = 0;
  for_each([&](const Interval&, const Mass&) { ++count; });
  return count;
}

template <class Mass>
StateDist<Mass> contraction_pushforward(const StateDist<Mass>& dist, const ContractionRule& rule,
                                        ExpansionParam p) {
  StateDist<Mass> out;
  out.empty_mass_ref() = dist.empty_mass();
  out.lost_ref() = dist.lost();
  const std::size_t w = dist.width();
  if (w == 0) return out;
  out.reset_table(dist.origin(), w);

  auto per_size = [&](auto&& weight_of) {
    // weight_of(n, m) -> (mass to Empty, weight spread over dominated cells)
    for (std::size_t a = 0; a < w; ++a) {
      for (std::size_t b = a; b < w; ++b) {
        const Mass& m = dist.cell(a, b);
        if (m == 0) continue;
        auto [to_empty, spread] = weight_of(static_cast<std::uint64_t>(b - a + 1), m);
        out.empty_mass_ref() += to_empty;
        out.cell(a, b) = spread;
      }
    }
    dominated_sum_in_place(out);
  };

  std::visit(
      Overloaded{
          [&](const UniformRule&) {
            per_size([](std::uint64_t n, const Mass& m) {
              Mass share = m / from_count<Mass>(count_nonempty_subintervals(n) + 1);
              return std::pair<Mass, Mass>(share, share);
            });
          },
          [&](const KillThenUniformRule& r) {
            per_size([&](std::uint64_t n, const Mass& m) {
              const Mass q = from_double<Mass>(checked_kill_probability(r, p.value(), n));
              return std::pair<Mass, Mass>(
                  m * q, m * (1 - q) / from_count<Mass>(count_nonempty_subintervals(n)));
            });
          },
          [&](const EndpointResampleRule&) {
            // P([a, b]) = (a == b ? 1 : 2) / n^2 for every [a, b] inside.
            per_size([](std::uint64_t n, const Mass& m) {
              return std::pair<Mass, Mass>(Mass(0), m / from_count<Mass>(n * n));
            });
            for (std::size_t a = 0; a < w; ++a) {
              for (std::size_t b = a + 1; b < w; ++b) out.cell(a, b) *= 2;
            }
          },
          [&](const GeneralSizeRule& r) {
            for (std::size_t a = 0; a < w; ++a) {
              for (std::size_t b = a; b < w; ++b) {
                const Mass& m = dist.cell(a, b);
                if (m == 0) continue;
                const std::uint64_t n = b - a + 1;
                const std::vector<double> law = checked_size_law(r, n);
                out.empty_mass_ref() += m * from_double<Mass>(law[0]);
                for (std::uint64_t k = 1; k <= n; ++k) {
                  if (law[k] == 0.0) continue;
                  const Mass each = m * from_double<Mass>(law[k]) / from_count<Mass>(n - k + 1);
                  for (std::size_t s = a; s + k - 1 <= b; ++s) out.cell(s, s + k - 1) += each;
                }
              }
            }
          },
      },
      rule);
  return out;
}

template <class Mass>
StateDist<Mass> expansion_pushforward(const StateDist<Mass>& dist, ExpansionParam p,
                                      TruncationPolicy policy) {
  StateDist<Mass> out;
  out.empty_mass_ref() = dist.empty_mass();
  out.lost_ref() = dist.lost();
  const std::size_t w = dist.width();
  if (w == 0) return out;

  Mass tail;
  const std::vector<Mass> g = truncated_geometric<Mass>(p, policy.n_max, tail);
  const std::size_t m = policy.n_max;
  const std::size_t w2 = w + 2 * m;

  // Left shifts: tmp(a', r) = sum_i g_i dist(a' - m + i, r), a' indexes the
  // new window, r the old one.
  std::vector<Mass> tmp((w + m) * w, Mass(0));
  Mass nonempty = 0;
  for (std::size_t a = 0; a < w; ++a) {
    for (std::size_t b = a; b < w; ++b) {
      const Mass& v = dist.cell(a, b);
      if (v == 0) continue;
      nonempty += v;
      for (std::size_t i = 0; i <= m; ++i) tmp[(a + m - i) * w + b] += g[i] * v;
    }
  }
  // Right shifts into the new table.
  out.reset_table(dist.origin() - static_cast<Site>(m), w2);
  for (std::size_t a2 = 0; a2 < w + m; ++a2) {
    for (std::size_t b = 0; b < w; ++b) {
      const Mass& v = tmp[a2 * w + b];
      if (v == 0) continue;
      for (std::size_t j = 0; j <= m; ++j) out.cell(a2, b + m + j) += g[j] * v;
    }
  }
  const Mass kept = 1 - tail;
  out.lost_ref() += nonempty * (1 - kept * kept);
  return out;
}

template <class Mass>
StateDist<Mass> evolve(const Interval& initial, std::uint64_t t, const ContractionRule& rule,
                       ExpansionParam p, TruncationPolicy policy) {
  StateDist<Mass> dist = StateDist<Mass>::point_mass(initial);
  for (std::uint64_t s = 0; s < t; ++s) {
    dist = expansion_pushforward(contraction_pushforward(dist, rule, p), p, policy);
  }
  return dist;
}

template <class Mass>
OccupancyBounds<Mass> occupancy_bounds(const StateDist<Mass>& dist, Site x) {
  OccupancyBounds<Mass> out;
  out.x = x;
  out.lo = 0;
  const std::size_t w = dist.width();
  if (w > 0 && x >= dist.origin() && x < dist.origin() + static_cast<Site>(w)) {
    const auto k = static_cast<std::size_t>(x - dist.origin());
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = k; b < w; ++b) out.lo += dist.cell(a, b);
    }
  }
  out.hi = out.lo + dist.lost();
  return out;
}

template <class Mass>
std::vector<OccupancyBounds<Mass>> occupancy_table(const StateDist<Mass>& dist, Site x_min,
                                                   Site x_max) {
  std::vector<OccupancyBounds<Mass>> out;
  for (Site x = x_min; x <= x_max; ++x) out.push_back(occupancy_bounds(dist, x));
  return out;
}

double truncation_loss_per_step(ExpansionParam p, TruncationPolicy policy) {
  const double kept = 1.0 - std::pow(p.value(), static_cast<double>(policy.n_max) + 1.0);
  return 1.0 - kept * kept;
}

double to_double(double m) noexcept { return m; }
double to_double(const Rational& m) { return m.get_d(); }

CouplingTransitionReport coupling_transition_check(const Interval& host, ExpansionParam p,
                                                   std::uint32_t surface_len) {
  if (surface_len == 0) throw std::invalid_argument("coupling_transition_check: L must be >= 1");
  const Interval host_plus = mirror(host);
  if (classify_pair(host, host_plus) != PairClass::kAProper) {
    throw std::invalid_argument("coupling_transition_check: host " + to_string(host) +
                                " does not start an A-proper pair");
  }
  const double pv = p.value();
  std::vector<double> g(surface_len);
  for (std::uint32_t k = 0; k < surface_len; ++k) g[k] = geometric_pmf(p, k);
  auto prefix = [](std::uint32_t ones) {
    std::vector<std::uint8_t> bits(ones, 1);
    bits.push_back(0);
    return bits;
  };

  std::map<Interval, double> plus_law;
  std::map<Interval, double> minus_law;
  CouplingTransitionReport report;
  const std::uint64_t k = count_nonempty_subintervals(host.size());
  const double contraction_weight = 1.0 / static_cast<double>(k + 1);

  for (std::uint64_t index = 0; index <= k; ++index) {
    const Interval tm = unrank_subinterval(host, index);
    const Interval tp = psi(host, tm);
    if (tm.is_empty()) {
      plus_law[Interval::empty()] += contraction_weight;
      minus_law[Interval::empty()] += contraction_weight;
      ++report.outcomes;
      continue;
    }
    for (std::uint32_t kr = 0; kr < surface_len; ++kr) {
      for (std::uint32_t kl = 0; kl < surface_len; ++kl) {
        const double w = contraction_weight * g[kr] * g[kl];
        ++report.outcomes;
        if (tm == tp) {
          // Identical contraction: both processes share one expansion.
          const Interval next = Interval::span(tm.left() - kl, tm.right() + kr);
          plus_law[next] += w;
          minus_law[next] += w;
          report.coalescence_probability += w;
          continue;
        }
        BernoulliSurface right = BernoulliSurface::fixed(p, prefix(kr));
        BernoulliSurface left = BernoulliSurface::fixed(p, prefix(kl));
        const CoupledState next = coupled_expansion(tm, tp, right, left);
        plus_law[next.plus] += w;
        minus_law[next.minus] += w;
        if (next.coalesced) report.coalescence_probability += w;
      }
    }
  }

  const TruncationPolicy policy{surface_len - 1};
  const auto exact_plus = evolve<double>(host_plus, 1, UniformRule{}, p, policy);
  const auto exact_minus = evolve<double>(host, 1, UniformRule{}, p, policy);
  auto discrepancy = [](const std::map<Interval, double>& law, const StateDist<double>& exact) {
    double worst = 0.0;
    for (const auto& [state, mass] : law) {
      worst = std::max(worst, std::abs(mass - exact.mass(state)));
    }
    exact.for_each([&](const Interval& state, double mass) {
      if (!law.contains(state)) worst = std::max(worst, mass);
    });
    return worst;
  };
  report.plus_discrepancy = discrepancy(plus_law, exact_plus);
  report.minus_discrepancy = discrepancy(minus_law, exact_minus);
  const double kept = 1.0 - std::pow(pv, static_cast<double>(surface_len));
  report.tail_bound = 1.0 - kept * kept;
  return report;
}

ExpansionMarginalReport expansion_marginal_check(const Interval& tilde_minus,
                                                 const Interval& tilde_plus, ExpansionParam p,
                                                 std::uint32_t surface_len) {
  if (surface_len == 0) throw std::invalid_argument("expansion_marginal_check: L must be >= 1");
  ExpansionMarginalReport report;
  report.gap = static_cast<std::uint64_t>(gap(tilde_minus, tilde_plus));
  std::vector<double> g(surface_len);
  for (std::uint32_t k = 0; k < surface_len; ++k) g[k] = geometric_pmf(p, k);

  std::map<std::pair<std::int64_t, std::int64_t>, double> plus_law;
  std::map<std::pair<std::int64_t, std::int64_t>, double> minus_law;
  for (std::uint32_t kr = 0; kr < surface_len; ++kr) {
    for (std::uint32_t kl = 0; kl < surface_len; ++kl) {
      std::vector<std::uint8_t> right_bits(kr, 1);
      right_bits.push_back(0);
      std::vector<std::uint8_t> left_bits(kl, 1);
      left_bits.push_back(0);
      BernoulliSurface right = BernoulliSurface::fixed(p, std::move(right_bits));
      BernoulliSurface left = BernoulliSurface::fixed(p, std::move(left_bits));
      const CoupledState next = coupled_expansion(tilde_minus, tilde_plus, right, left);
      const double w = g[kr] * g[kl];
      (next.coalesced ? report.coalescing_mass : report.antithetic_mass) += w;
      plus_law[{tilde_plus.left() - next.plus.left(), next.plus.right() - tilde_plus.right()}] += w;
      minus_law[{tilde_minus.left() - next.minus.left(),
                 next.minus.right() - tilde_minus.right()}] += w;
    }
  }

  const auto reach = static_cast<std::int64_t>(surface_len + report.gap);
  auto discrepancy = [&](const std::map<std::pair<std::int64_t, std::int64_t>, double>& law) {
    double worst = 0.0;
    for (const auto& [shift, mass] : law) {
      if (shift.first < 0 || shift.second < 0) return 1.0;  // inward move: not an expansion
    }
    for (std::int64_t a = 0; a <= reach; ++a) {
      for (std::int64_t b = 0; b <= reach; ++b) {
        const auto it = law.find({a, b});
        const double got = it == law.end() ? 0.0 : it->second;
        const double want = geometric_pmf(p, static_cast<std::uint64_t>(a)) *
                            geometric_pmf(p, static_cast<std::uint64_t>(b));
        worst = std::max(worst, std::abs(got - want));
      }
    }
    return worst;
  };
  report.plus_discrepancy = discrepancy(plus_law);
  report.minus_discrepancy = discrepancy(minus_law);
  return report;
}

Rational psi_pushforward_tv(const Interval& host) {
  const Interval host_plus = mirror(host);
  const std::uint64_t k = count_nonempty_subintervals(host.size());
  const Rational each(1, static_cast<unsigned long>(k + 1));
  std::map<Interval, Rational> pushed;
  for (std::uint64_t index = 0; index <= k; ++index) {
    pushed[psi(host, unrank_subinterval(host, index))] += each;
  }
  // Uniform target: every element of I(host_plus) carries 1/(K+1).
  Rational twice_tv = 0;
  for (std::uint64_t index = 0; index <= k; ++index) {
    const Interval target = unrank_subinterval(host_plus, index);
    const auto it = pushed.find(target);
    const Rational got = it == pushed.end() ? Rational(0) : it->second;
    twice_tv += abs(got - each);
    if (it != pushed.end()) pushed.erase(it);
  }
  for (const auto& [state, mass] : pushed) twice_tv += mass;  // mass outside I(host_plus)
  return twice_tv / 2;
}

template class StateDist<double>;
template class StateDist<Rational>;

#define RFI_INSTANTIATE_ORACLE(Mass)                                                      \
  template StateDist<Mass> contraction_pushforward(const StateDist<Mass>&,                \
                                                   const ContractionRule&, ExpansionParam); \
  template StateDist<Mass> expansion_pushforward(const StateDist<Mass>&, ExpansionParam,  \
                                                 TruncationPolicy);                       \
  template StateDist<Mass> evolve(const Interval&, std::uint64_t, const ContractionRule&, \
                                  ExpansionParam, TruncationPolicy);                      \
  template OccupancyBounds<Mass> occupancy_bounds(const StateDist<Mass>&, Site);          \
  template std::vector<OccupancyBounds<Mass>> occupancy_table(const StateDist<Mass>&, Site, Site);

RFI_INSTANTIATE_ORACLE(double)
RFI_INSTANTIATE_ORACLE(Rational)

#undef RFI_INSTANTIATE_ORACLE

}  // namespace rfi
