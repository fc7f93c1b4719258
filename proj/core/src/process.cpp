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

#include "rfi/process.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rfi {

double geometric_pmf(ExpansionParam p, std::uint64_t n) noexcept {
  return (1.0 - p.value()) * std::pow(p.value(), static_cast<double>(n));
}

std::uint64_t geometric_sample(ExpansionParam p, RandomStream& stream) noexcept {
  // P(floor(log U / log p) >= n) = P(U <= p^n) = p^n.
  const double u = stream.next_open_unit();
  return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(p.value())));
}

std::uint64_t count_nonempty_subintervals(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("count_nonempty_subintervals: n must be positive");
  return n % 2 == 0 ? (n / 2) * (n + 1) : n * ((n + 1) / 2);
}

namespace {

// Number of nonempty subintervals whose left offset is < a, host size n.
constexpr std::uint64_t left_block_start(std::uint64_t n, std::uint64_t a) noexcept {
  return a * n - a * (a - (a > 0 ? 1 : 0)) / 2;
}

}  // namespace

Interval unrank_subinterval(const Interval& host, std::uint64_t index) {
  if (host.is_empty()) throw std::invalid_argument("unrank_subinterval: empty host");
  const std::uint64_t n = host.size();
  const std::uint64_t k = count_nonempty_subintervals(n);
  if (index > k) {
    throw std::out_of_range("unrank_subinterval: index " + std::to_string(index) +
                            " exceeds " + std::to_string(k));
  }
  if (index == 0) return Interval::empty();
  const std::uint64_t r = index - 1;
  // Left offset a solves left_block_start(n, a) <= r < left_block_start(n, a + 1).
  const long double b = 2.0L * static_cast<long double>(n) + 1.0L;
  const long double disc = b * b - 8.0L * static_cast<long double>(r);
  auto a = static_cast<std::uint64_t>(std::max(0.0L, std::floor((b - std::sqrt(disc)) / 2.0L)));
  if (a >= n) a = n - 1;
  while (a + 1 < n && left_block_start(n, a + 1) <= r) ++a;
  while (left_block_start(n, a) > r) --a;
  const std::uint64_t width = r - left_block_start(n, a);
  const Site left = host.left() + static_cast<Site>(a);
  return Interval::span(left, left + static_cast<Site>(width));
}

std::uint64_t rank_subinterval(const Interval& host, const Interval& sub) {
  if (host.is_empty()) throw std::invalid_argument("rank_subinterval: empty host");
  if (!host.contains(sub)) {
    throw std::invalid_argument("rank_subinterval: " + to_string(sub) + " not inside " +
                                to_string(host));
  }
  if (sub.is_empty()) return 0;
  const auto a = static_cast<std::uint64_t>(sub.left() - host.left());
  const auto width = static_cast<std::uint64_t>(sub.right() - sub.left());
  return 1 + left_block_start(host.size(), a) + width;
}

std::vector<double> uniform_size_law(std::uint64_t n) {
  const double total = static_cast<double>(count_nonempty_subintervals(n)) + 1.0;
  std::vector<double> law(n + 1);
  law[0] = 1.0 / total;
  for (std::uint64_t k = 1; k <= n; ++k) law[k] = static_cast<double>(n - k + 1) / total;
  return law;
}

std::vector<double> checked_size_law(const GeneralSizeRule& rule, std::uint64_t n) {
  if (!rule.phi) throw std::invalid_argument("GeneralSizeRule: phi is not set");
  std::vector<double> law = rule.phi(n);
  if (law.size() != n + 1) {
    throw std::invalid_argument("GeneralSizeRule: phi(" + std::to_string(n) + ") has " +
                                std::to_string(law.size()) + " entries, expected " +
                                std::to_string(n + 1));
  }
  double sum = 0.0;
  for (double w : law) {
    if (!(w >= 0.0)) throw std::invalid_argument("GeneralSizeRule: negative probability");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("GeneralSizeRule: phi(" + std::to_string(n) +
                                ") sums to " + std::to_string(sum));
  }
  return law;
}

double checked_kill_probability(const KillThenUniformRule& rule, double p, std::uint64_t n) {
  if (!rule.p_empty) throw std::invalid_argument("KillThenUniformRule: p_empty is not set");
  const double q = rule.p_empty(p, n);
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("KillThenUniformRule: p_empty out of [0,1]: " +
                                std::to_string(q));
  }
  return q;
}

namespace {

Interval uniform_nonempty(const Interval& state, RandomStream& stream) {
  const std::uint64_t k = count_nonempty_subintervals(state.size());
  return unrank_subinterval(state, 1 + stream.uniform_below(k));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Interval contract(const Interval& state, const ContractionRule& rule, ExpansionParam p,
                  RandomStream& stream) {
  if (state.is_empty()) return state;
  const std::uint64_t n = state.size();
  return std::visit(
      Overloaded{
          [&](const UniformRule&) {
            const std::uint64_t k = count_nonempty_subintervals(n);
            return unrank_subinterval(state, stream.uniform_below(k + 1));
          },
          [&](const GeneralSizeRule& r) {
            const std::vector<double> law = checked_size_law(r, n);
            const double u = stream.next_unit();
            double acc = 0.0;
            std::uint64_t size = n;
            for (std::uint64_t k = 0; k <= n; ++k) {
              acc += law[k];
              if (u < acc) {
                size = k;
                break;
              }
            }
            // Rounding may leave u >= acc; fall back to the largest
            // size with positive mass.
            if (size == n) {
              while (size > 0 && law[size] == 0.0) --size;
            }
            if (size == 0) return Interval::empty();
            const Site offset = static_cast<Site>(stream.uniform_below(n - size + 1));
            const Site left = state.left() + offset;
            return Interval::span(left, left + static_cast<Site>(size) - 1);
          },
          [&](const KillThenUniformRule& r) {
            if (stream.bernoulli(checked_kill_probability(r, p.value(), n))) {
              return Interval::empty();
            }
            return uniform_nonempty(state, stream);
          },
          [&](const EndpointResampleRule&) {
            const Site u = state.left() + static_cast<Site>(stream.uniform_below(n));
            const Site v = state.left() + static_cast<Site>(stream.uniform_below(n));
            return Interval::span(std::min(u, v), std::max(u, v));
          },
      },
      rule);
}

Interval expand(const Interval& core, ExpansionParam p, RandomStream& stream) {
  if (core.is_empty()) return core;
  const auto left_shift = static_cast<Site>(geometric_sample(p, stream));
  const auto right_shift = static_cast<Site>(geometric_sample(p, stream));
  return Interval::span(core.left() - left_shift, core.right() + right_shift);
}

Interval step(const Interval& state, const ContractionRule& rule, ExpansionParam p,
              RandomStream& stream) {
  return expand(contract(state, rule, p, stream), p, stream);
}

std::vector<Interval> simulate_path(const Interval& initial, std::uint64_t horizon,
                                    const ContractionRule& rule, ExpansionParam p,
                                    RandomStream& stream) {
  std::vector<Interval> path;
  path.reserve(horizon + 1);
  path.push_back(initial);
  for (std::uint64_t t = 0; t < horizon; ++t) {
    path.push_back(step(path.back(), rule, p, stream));
  }
  return path;
}

}  // namespace rfi
