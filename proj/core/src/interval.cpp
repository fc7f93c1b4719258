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

#include "rfi/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rfi {

Interval Interval::span(Site left, Site right) {
  if (left > right) {
    throw std::invalid_argument("Interval::span: left " + std::to_string(left) +
                                " > right " + std::to_string(right));
  }
  return Interval(left, right);
}

Interval intersect(const Interval& a, const Interval& b) noexcept {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const Site lo = std::max(a.left(), b.left());
  const Site hi = std::min(a.right(), b.right());
  if (lo > hi) return Interval::empty();
  return Interval::span(lo, hi);
}

std::string to_string(const Interval& i) {
  if (i.is_empty()) return "EMPTY";
  return "[" + std::to_string(i.left()) + "," + std::to_string(i.right()) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& i) {
  return os << to_string(i);
}

ExpansionParam::ExpansionParam(double p) : value_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("expansion parameter must lie in (0,1), got " +
                                std::to_string(p));
  }
}

ExpansionParam ExpansionParam::ratio(std::int64_t num, std::int64_t den) {
  if (!(num > 0 && num < den)) {
    throw std::invalid_argument("expansion parameter ratio must satisfy 0 < num < den");
  }
  const std::int64_t g = std::gcd(num, den);
  ExpansionParam out;
  out.num_ = num / g;
  out.den_ = den / g;
  out.value_ = static_cast<double>(out.num_) / static_cast<double>(out.den_);
  return out;
}

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

ExpansionParam ExpansionParam::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = 0;
    std::int64_t den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den)) {
      throw std::invalid_argument("cannot parse expansion parameter '" + std::string(text) + "'");
    }
    return ratio(num, den);
  }
  // Plain decimal "0.ddd" (optionally with a leading integer part of 0).
  if (const auto dot = text.find('.');
      dot != std::string_view::npos && text.find_first_of("eE") == std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    std::int64_t whole_value = 0;
    std::int64_t frac_value = 0;
    const bool whole_ok = whole.empty() || parse_int(whole, whole_value);
    if (whole_ok && whole_value == 0 && !frac.empty() && frac.size() <= 17 &&
        frac.find_first_not_of("0123456789") == std::string_view::npos &&
        parse_int(frac, frac_value)) {
      std::int64_t den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      return ratio(frac_value, den);
    }
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("cannot parse expansion parameter '" + std::string(text) + "'");
  }
  return ExpansionParam(value);
}

}  // namespace rfi
