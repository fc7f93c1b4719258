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

#ifndef RFI_STATISTICS_HPP_
#define RFI_STATISTICS_HPP_

#include <cstdint>
#include <span>

namespace rfi {

struct ProportionInterval {
  double lo = 0.0;
  double hi = 1.0;
};

enum class IntervalMethod { kWilson, kHoeffding };

// Two-sided interval for a binomial proportion at the given confidence.
ProportionInterval wilson_interval(std::uint64_t hits, std::uint64_t trials, double confidence);
ProportionInterval hoeffding_interval(std::uint64_t hits, std::uint64_t trials,
                                      double confidence);
ProportionInterval proportion_interval(IntervalMethod method, std::uint64_t hits,
                                       std::uint64_t trials, double confidence);

// Upper quantile z with P(Z > z) = tail for a standard normal.
double normal_upper_quantile(double tail);

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
};

// Goodness of fit of observed counts against cell probabilities (summing
// to 1). Cells with expected count below min_expected are pooled into one.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities, double min_expected = 5.0);

// Homogeneity test for two samples over the same categories. Categories
// whose pooled count is below min_pooled are merged into one.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first,
                                      std::span<const std::uint64_t> second,
                                      double min_pooled = 10.0);

}  // namespace rfi

#endif  // RFI_STATISTICS_HPP_
