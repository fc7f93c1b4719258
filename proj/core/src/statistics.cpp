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

#include "rfi/statistics.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace rfi {

double normal_upper_quantile(double tail) {
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("normal quantile: tail not in (0,1)");
  return boost::math::quantile(boost::math::complement(boost::math::normal(), tail));
}

ProportionInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double z = normal_upper_quantile((1.0 - confidence) / 2.0);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  ProportionInterval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Keep the estimate inside its own interval despite rounding.
  out.lo = std::min(out.lo, phat);
  out.hi = std::max(out.hi, phat);
  if (hits == 0) out.lo = 0.0;
  if (hits == trials) out.hi = 1.0;
  return out;
}

ProportionInterval hoeffding_interval(std::uint64_t hits, std::uint64_t trials,
                                      double confidence) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(hits) / n;
  const double half = std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * n));
  return {std::max(0.0, phat - half), std::min(1.0, phat + half)};
}

ProportionInterval proportion_interval(IntervalMethod method, std::uint64_t hits,
                                       std::uint64_t trials, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0,1)");
  }
  if (trials == 0 || hits > trials) {
    throw std::invalid_argument("proportion interval needs 0 <= hits <= trials, trials >= 1");
  }
  return method == IntervalMethod::kWilson ? wilson_interval(hits, trials, confidence)
                                           : hoeffding_interval(hits, trials, confidence);
}

namespace {

double chi_square_tail(double statistic, std::uint64_t dof) {
  if (dof == 0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities, double min_expected) {
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(),
                                                       std::uint64_t{0}));
  std::vector<double> obs;
  std::vector<double> exp;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * probabilities[i];
    if (e < min_expected) {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += e;
    } else {
      obs.push_back(static_cast<double>(observed[i]));
      exp.push_back(e);
    }
  }
  if (pooled_exp > 0.0 || pooled_obs > 0.0) {
    obs.push_back(pooled_obs);
    exp.push_back(pooled_exp);
  }
  ChiSquareResult out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (exp[i] == 0.0) {
      if (obs[i] > 0.0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.dof = obs.size() - 1;
        out.p_value = 0.0;
        return out;
      }
      continue;
    }
    const double d = obs[i] - exp[i];
    out.statistic += d * d / exp[i];
  }
  out.dof = obs.size() > 0 ? obs.size() - 1 : 0;
  out.p_value = chi_square_tail(out.statistic, out.dof);
  return out;
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first,
                                      std::span<const std::uint64_t> second,
                                      double min_pooled) {
  if (first.size() != second.size()) {
    throw std::invalid_argument("chi_square_two_sample: size mismatch");
  }
  std::vector<std::pair<double, double>> cells;
  std::pair<double, double> merged{0.0, 0.0};
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto a = static_cast<double>(first[i]);
    const auto b = static_cast<double>(second[i]);
    if (a + b < min_pooled) {
      merged.first += a;
      merged.second += b;
    } else {
      cells.emplace_back(a, b);
    }
  }
  if (merged.first + merged.second > 0.0) cells.push_back(merged);

  double n1 = 0.0;
  double n2 = 0.0;
  for (const auto& [a, b] : cells) {
    n1 += a;
    n2 += b;
  }
  ChiSquareResult out;
  if (cells.size() < 2 || n1 == 0.0 || n2 == 0.0) return out;
  const double total = n1 + n2;
  for (const auto& [a, b] : cells) {
    const double row = a + b;
    const double e1 = n1 * row / total;
    const double e2 = n2 * row / total;
    out.statistic += (a - e1) * (a - e1) / e1 + (b - e2) * (b - e2) / e2;
  }
  out.dof = cells.size() - 1;
  out.p_value = chi_square_tail(out.statistic, out.dof);
  return out;
}

}  // namespace rfi
