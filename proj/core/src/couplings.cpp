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

#include "rfi/couplings.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rfi/process.hpp"

namespace rfi {

Interval reflect_origin(const Interval& i) noexcept {
  if (i.is_empty()) return i;
  return Interval::span(-i.right(), -i.left());
}

Interval mirror(const Interval& i) noexcept {
  if (i.is_empty()) return i;
  return Interval::span(-1 - i.right(), -1 - i.left());
}

Site relabel(Site x) noexcept { return x >= 0 ? x + 1 : x; }

Site unrelabel(Site y) {
  if (y == 0) throw std::invalid_argument("unrelabel: label 0 is not used");
  return y > 0 ? y - 1 : y;
}

const char* to_string(PairClass c) noexcept {
  switch (c) {
    case PairClass::kO:
      return "O";
    case PairClass::kS:
      return "S";
    case PairClass::kAProper:
      return "A-proper";
    case PairClass::kNotInA:
      return "not-A";
  }
  return "?";
}

PairClass classify_pair(const Interval& minus, const Interval& plus) noexcept {
  if (minus.is_empty() && plus.is_empty()) return PairClass::kO;
  if (minus.is_empty() || plus.is_empty()) return PairClass::kNotInA;
  if (minus == plus) return PairClass::kS;
  // At least one negative site, and at least as many negative labels as
  // positive ones: relabel(R) <= -L, i.e. R + 1 <= -L.
  if (plus == mirror(minus) && minus.left() <= -1 && minus.right() + 1 <= -minus.left()) {
    return PairClass::kAProper;
  }
  return PairClass::kNotInA;
}

Interval psi(const Interval& host_minus, const Interval& j) {
  const Interval host_plus = mirror(host_minus);
  if (classify_pair(host_minus, host_plus) != PairClass::kAProper) {
    throw std::invalid_argument("psi: host " + to_string(host_minus) +
                                " is not the first member of an A-proper pair");
  }
  if (!host_minus.contains(j)) {
    throw std::invalid_argument("psi: " + to_string(j) + " is not inside " +
                                to_string(host_minus));
  }
  if (j.is_empty()) return j;
  const Interval overlap = intersect(host_minus, host_plus);
  return overlap.contains(j) ? j : mirror(j);
}

BernoulliSurface::BernoulliSurface(ExpansionParam p, std::optional<RandomStream> stream,
                                   std::vector<std::uint8_t> bits)
    : p_(p), stream_(std::move(stream)), bits_(std::move(bits)) {}

BernoulliSurface::BernoulliSurface(ExpansionParam p, RandomStream stream)
    : BernoulliSurface(p, std::optional<RandomStream>(stream), {}) {}

BernoulliSurface BernoulliSurface::fixed(ExpansionParam p, std::vector<std::uint8_t> bits) {
  return BernoulliSurface(p, std::nullopt, std::move(bits));
}

int BernoulliSurface::at(std::uint64_t n) {
  if (n == 0) throw std::out_of_range("BernoulliSurface: indices start at 1");
  while (bits_.size() < n) {
    if (!stream_) {
      throw std::out_of_range("BernoulliSurface: read omega(" + std::to_string(n) +
                              ") past prescribed prefix of length " +
                              std::to_string(bits_.size()));
    }
    bits_.push_back(stream_->bernoulli(p_.value()) ? 1 : 0);
  }
  return bits_[n - 1];
}

std::uint64_t BernoulliSurface::shift() {
  return first_zero_shift([this](std::uint64_t n) { return at(n); });
}

std::uint64_t first_zero_shift(const std::function<int(std::uint64_t)>& omega) {
  std::uint64_t n = 1;
  while (omega(n) != 0) ++n;
  return n - 1;
}

std::pair<Interval, Interval> coupled_contraction(const CoupledState& state,
                                                  RandomStream& stream,
                                                  const CouplingOptions& options) {
  if (state.coalesced || classify_pair(state.minus, state.plus) != PairClass::kAProper) {
    throw std::invalid_argument("coupled_contraction: state (" + to_string(state.minus) + ", " +
                                to_string(state.plus) + ") is not an uncoalesced A-proper pair");
  }
  const std::uint64_t k = count_nonempty_subintervals(state.minus.size());
  const Interval tilde_minus = unrank_subinterval(state.minus, stream.uniform_below(k + 1));
  const Interval tilde_plus = options.skip_psi ? tilde_minus : psi(state.minus, tilde_minus);
  return {tilde_minus, tilde_plus};
}

std::int64_t gap(const Interval& tilde_minus, const Interval& tilde_plus) {
  if (classify_pair(tilde_minus, tilde_plus) != PairClass::kAProper) {
    throw std::invalid_argument("gap: (" + to_string(tilde_minus) + ", " +
                                to_string(tilde_plus) + ") is not an A-proper pair");
  }
  return tilde_plus.right() - tilde_minus.right();
}

CoupledState coupled_expansion(const Interval& tilde_minus, const Interval& tilde_plus,
                               BernoulliSurface& minus_right, BernoulliSurface& minus_left) {
  const auto g = static_cast<std::uint64_t>(gap(tilde_minus, tilde_plus));

  bool coalescing = true;
  for (std::uint64_t n = 1; n <= g; ++n) {
    if (minus_right.at(n) != 1) {
      coalescing = false;
      break;
    }
  }

  std::function<int(std::uint64_t)> plus_left;
  std::function<int(std::uint64_t)> plus_right;
  if (coalescing) {
    plus_left = [&, g](std::uint64_t n) {
      return n <= g ? minus_right.at(n) : minus_left.at(n - g);
    };
    plus_right = [&, g](std::uint64_t n) { return minus_right.at(g + n); };
  } else {
    plus_left = [&](std::uint64_t n) { return minus_right.at(n); };
    plus_right = [&](std::uint64_t n) { return minus_left.at(n); };
  }

  const auto minus_l = static_cast<Site>(minus_left.shift());
  const auto minus_r = static_cast<Site>(minus_right.shift());
  const auto plus_l = static_cast<Site>(first_zero_shift(plus_left));
  const auto plus_r = static_cast<Site>(first_zero_shift(plus_right));

  CoupledState next;
  next.minus = Interval::span(tilde_minus.left() - minus_l, tilde_minus.right() + minus_r);
  next.plus = Interval::span(tilde_plus.left() - plus_l, tilde_plus.right() + plus_r);
  next.coalesced = coalescing;
  if (coalescing && next.minus != next.plus) {
    throw std::logic_error("coupled_expansion: coalescing branch produced distinct intervals");
  }
  return next;
}

CoupledState coupled_expansion(const Interval& tilde_minus, const Interval& tilde_plus,
                               ExpansionParam p, RandomStream& stream) {
  BernoulliSurface right(p, RandomStream(stream.next_u64()));
  BernoulliSurface left(p, RandomStream(stream.next_u64()));
  return coupled_expansion(tilde_minus, tilde_plus, right, left);
}

CoupledState coupled_step(const CoupledState& state, ExpansionParam p, RandomStream& stream,
                          const CouplingOptions& options) {
  const PairClass cls = classify_pair(state.minus, state.plus);
  if (state.coalesced || cls == PairClass::kS) {
    if (state.minus != state.plus) {
      throw std::invalid_argument("coupled_step: coalesced state with distinct intervals");
    }
    const Interval next = step(state.minus, UniformRule{}, p, stream);
    return {next, next, true};
  }
  if (cls == PairClass::kO) return state;
  if (cls == PairClass::kNotInA) {
    throw std::invalid_argument("coupled_step: state (" + to_string(state.minus) + ", " +
                                to_string(state.plus) + ") is outside A");
  }

  const auto [tilde_minus, tilde_plus] = coupled_contraction(state, stream, options);
  if (tilde_minus.is_empty() && tilde_plus.is_empty()) {
    return {Interval::empty(), Interval::empty(), false};
  }
  if (tilde_minus == tilde_plus) {
    const Interval next = expand(tilde_minus, p, stream);
    return {next, next, true};
  }
  return coupled_expansion(tilde_minus, tilde_plus, p, stream);
}

std::vector<CoupledState> run_coupled(std::uint64_t horizon, ExpansionParam p,
                                      std::uint64_t seed, const CouplingOptions& options) {
  return run_coupled(horizon, p, RandomStream(seed), options);
}

std::vector<CoupledState> run_coupled(std::uint64_t horizon, ExpansionParam p,
                                      RandomStream stream, const CouplingOptions& options) {
  std::vector<CoupledState> trajectory;
  trajectory.reserve(horizon + 1);
  trajectory.emplace_back();
  for (std::uint64_t t = 0; t < horizon; ++t) {
    trajectory.push_back(coupled_step(trajectory.back(), p, stream, options));
  }
  return trajectory;
}

bool dominates_on_nonnegative(const Interval& minus, const Interval& plus) noexcept {
  if (minus.is_empty() || minus.right() < 0) return true;
  return plus.contains(Interval::span(std::max<Site>(0, minus.left()), minus.right()));
}

MirrorPair reflection_coupled_step(const MirrorPair& pair, ExpansionParam p,
                                   RandomStream& stream, const ReflectionOptions& options) {
  if (pair.eta != reflect_origin(pair.zeta)) {
    throw std::invalid_argument("reflection_coupled_step: eta " + to_string(pair.eta) +
                                " is not the reflection of zeta " + to_string(pair.zeta));
  }
  if (pair.zeta.is_empty()) return pair;
  const std::uint64_t k = count_nonempty_subintervals(pair.zeta.size());
  const Interval tilde_zeta = unrank_subinterval(pair.zeta, stream.uniform_below(k + 1));
  if (tilde_zeta.is_empty()) return {Interval::empty(), Interval::empty()};
  const Interval tilde_eta = reflect_origin(tilde_zeta);

  const auto n_left = static_cast<Site>(geometric_sample(p, stream));
  const auto n_right = static_cast<Site>(geometric_sample(p, stream));
  MirrorPair next;
  next.zeta = Interval::span(tilde_zeta.left() - n_left, tilde_zeta.right() + n_right);
  if (options.unmirrored_expansion) {
    next.eta = Interval::span(tilde_eta.left() - n_left, tilde_eta.right() + n_right);
  } else {
    next.eta = Interval::span(tilde_eta.left() - n_right, tilde_eta.right() + n_left);
  }
  return next;
}

std::vector<MirrorPair> run_reflection_coupled(const Interval& initial, std::uint64_t horizon,
                                               ExpansionParam p, std::uint64_t seed,
                                               const ReflectionOptions& options) {
  return run_reflection_coupled(initial, horizon, p, RandomStream(seed), options);
}

std::vector<MirrorPair> run_reflection_coupled(const Interval& initial, std::uint64_t horizon,
                                               ExpansionParam p, RandomStream stream,
                                               const ReflectionOptions& options) {
  std::vector<MirrorPair> trajectory;
  trajectory.reserve(horizon + 1);
  trajectory.push_back({initial, reflect_origin(initial)});
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const MirrorPair& last = trajectory.back();
    // A broken mirror identity ends the run; the caller inspects the last pair.
    if (last.eta != reflect_origin(last.zeta)) break;
    trajectory.push_back(reflection_coupled_step(last, p, stream, options));
  }
  return trajectory;
}

}  // namespace rfi
