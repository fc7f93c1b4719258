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

#include "rfi_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rfi/couplings.hpp"
#include "rfi/exact_oracle.hpp"
#include "rfi/hyperrect.hpp"
#include "rfi/montecarlo.hpp"
#include "rfi/process.hpp"
#include "rfi/random_stream.hpp"

namespace rfi::cli {
namespace {

using json = nlohmann::ordered_json;

// Thrown for anything that should exit with kExitUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string p = "0.5";
  std::uint64_t t = 3;
  std::size_t dimension = 1;
  std::string variant = "uniform";
  double p_empty = -1.0;  // negative: the uniform default
  double size_q = 0.5;
  std::string initial;
  std::string sites = "-10:10";
  std::uint64_t radius = 4;
  std::uint64_t trials = 100'000;
  std::uint64_t runs = 1;
  std::uint32_t n_max = 40;
  std::uint64_t seed = 0;
  std::string mode = "float";
  std::string out;
  std::string meta;
  std::string dist_out;
  double confidence = 0.99;
  std::string method = "wilson";
  unsigned jobs = 1;
  std::string mutant = "none";
  std::string suites = "all";
  std::uint64_t horizon = 50;
  std::string config;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["p"] = c.p;
  j["t"] = c.t;
  j["dimension"] = c.dimension;
  j["variant"] = c.variant;
  j["p-empty"] = c.p_empty;
  j["size-q"] = c.size_q;
  j["initial"] = c.initial;
  j["sites"] = c.sites;
  j["radius"] = c.radius;
  j["trials"] = c.trials;
  j["runs"] = c.runs;
  j["n-max"] = c.n_max;
  j["seed"] = c.seed;
  j["mode"] = c.mode;
  j["out"] = c.out;
  j["meta"] = c.meta;
  j["dist-out"] = c.dist_out;
  j["confidence"] = c.confidence;
  j["method"] = c.method;
  j["jobs"] = c.jobs;
  j["mutant"] = c.mutant;
  j["suites"] = c.suites;
  j["horizon"] = c.horizon;
  j["config"] = c.config;
  return j;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

Site parse_site(const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer site: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not an integer site: '" + text + "'");
  return static_cast<Site>(v);
}

// "a", "a:b" items separated by commas.
std::vector<Site> parse_sites(const std::string& text) {
  std::vector<Site> out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':', item[0] == '-' ? 1 : 0);
    if (colon == std::string::npos) {
      out.push_back(parse_site(item));
      continue;
    }
    const Site lo = parse_site(item.substr(0, colon));
    const Site hi = parse_site(item.substr(colon + 1));
    if (lo > hi) throw UsageError("empty site range '" + item + "'");
    if (hi - lo > 1'000'000) throw UsageError("site range too long: '" + item + "'");
    for (Site x = lo; x <= hi; ++x) out.push_back(x);
  }
  if (out.empty()) throw UsageError("site list is empty");
  return out;
}

Interval parse_span(const std::string& item) {
  const auto colon = item.find(':', !item.empty() && item[0] == '-' ? 1 : 0);
  if (colon == std::string::npos) return Interval::point(parse_site(item));
  const Site lo = parse_site(item.substr(0, colon));
  const Site hi = parse_site(item.substr(colon + 1));
  if (lo > hi) throw UsageError("initial span '" + item + "' has left > right");
  return Interval::span(lo, hi);
}

// Per-axis "l:r" spans separated by commas; default unit box at the origin.
std::vector<Interval> parse_initial(const RunConfig& c) {
  if (c.initial.empty()) return std::vector<Interval>(c.dimension, Interval::point(0));
  std::vector<Interval> spans;
  for (const std::string& item : split(c.initial, ',')) spans.push_back(parse_span(item));
  if (spans.size() != c.dimension) {
    throw UsageError("--initial has " + std::to_string(spans.size()) + " axes, dimension is " +
                     std::to_string(c.dimension));
  }
  return spans;
}

ExpansionParam parse_p(const RunConfig& c) {
  try {
    return ExpansionParam::parse(c.p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> binomial_law(std::uint64_t n, double q) {
  std::vector<double> law(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    law[k] = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                      static_cast<double>(k) * std::log(q) +
                      static_cast<double>(n - k) * std::log1p(-q));
  }
  return law;
}

ContractionRule parse_rule(const RunConfig& c) {
  if (c.variant == "uniform") return UniformRule{};
  if (c.variant == "endpoint-resample") return EndpointResampleRule{};
  if (c.variant == "kill-then-uniform") {
    if (c.p_empty < 0.0) return KillThenUniformRule{};
    const double pe = c.p_empty;
    if (!(pe <= 1.0)) throw UsageError("--p-empty must lie in [0,1]");
    return KillThenUniformRule{[pe](double, std::uint64_t) { return pe; }};
  }
  if (c.variant == "general-size") {
    const double q = c.size_q;
    if (!(q > 0.0 && q < 1.0)) throw UsageError("--size-q must lie in (0,1)");
    return GeneralSizeRule{[q](std::uint64_t n) { return binomial_law(n, q); }};
  }
  throw UsageError("unknown variant '" + c.variant + "'");
}

McOptions parse_mc_options(const RunConfig& c) {
  McOptions o;
  if (!(c.confidence > 0.0 && c.confidence < 1.0)) throw UsageError("--confidence must lie in (0,1)");
  o.confidence = c.confidence;
  if (c.method == "wilson") {
    o.method = IntervalMethod::kWilson;
  } else if (c.method == "hoeffding") {
    o.method = IntervalMethod::kHoeffding;
  } else {
    throw UsageError("unknown interval method '" + c.method + "'");
  }
  o.jobs = c.jobs;
  const auto m = parse_mutant(c.mutant);
  if (!m) throw UsageError("unknown mutant '" + c.mutant + "'");
  o.mutant = *m;
  return o;
}

void validate_common(const RunConfig& c) {
  if (c.dimension < 1) throw UsageError("--dimension must be >= 1");
  if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (c.trials < 1) throw UsageError("--trials must be >= 1");
}

// Output sink: the --out file when given, else the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

// Metadata goes to --meta, else next to --out, else one line on `err`.
void write_meta(const RunConfig& c, json meta, std::ostream& err) {
  std::string path = c.meta;
  if (path.empty() && !c.out.empty()) path = c.out + ".meta.json";
  if (path.empty()) {
    err << meta.dump() << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open metadata file '" + path + "'");
  f << meta.dump(2) << "\n";
}

json base_meta(const RunConfig& c, double seconds) {
  json meta;
  meta["command"] = c.command;
  meta["seed"] = c.seed;
  meta["config"] = config_json(c);
  meta["wall_time_seconds"] = seconds;
  return meta;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const ExpansionParam p = parse_p(c);
  const auto initial = parse_initial(c);
  const auto start = Clock::now();
  Sink sink(c.out, out);
  std::ostream& os = sink.get();
  const RandomStream root(c.seed);

  if (c.dimension == 1) {
    const ContractionRule rule = parse_rule(c);
    os << "trial,t,left,right\n";
    for (std::uint64_t trial = 0; trial < c.runs; ++trial) {
      RandomStream stream = root.substream(trial);
      const auto path = simulate_path(initial[0], c.t, rule, p, stream);
      for (std::size_t s = 0; s < path.size(); ++s) {
        os << trial << "," << s << ",";
        if (path[s].is_empty()) {
          os << "EMPTY,EMPTY\n";
        } else {
          os << path[s].left() << "," << path[s].right() << "\n";
        }
      }
    }
  } else {
    if (c.variant != "uniform") throw UsageError("--variant applies to dimension 1 only");
    os << "trial,t";
    for (std::size_t i = 0; i < c.dimension; ++i) os << ",l" << i << ",r" << i;
    os << "\n";
    for (std::uint64_t trial = 0; trial < c.runs; ++trial) {
      RandomStream stream = root.substream(trial);
      const auto path = simulate_path_rect(HyperRect::box(initial), c.t, p, stream);
      for (std::size_t s = 0; s < path.size(); ++s) {
        os << trial << "," << s;
        for (std::size_t i = 0; i < c.dimension; ++i) {
          if (path[s].is_empty()) {
            os << ",EMPTY,EMPTY";
          } else {
            os << "," << path[s].axis(i).left() << "," << path[s].axis(i).right();
          }
        }
        os << "\n";
      }
    }
  }
  write_meta(c, base_meta(c, seconds_since(start)), err);
  return kExitOk;
}

template <class Mass>
void write_exact(const RunConfig& c, const StateDist<Mass>& dist, const std::vector<Site>& sites,
                 std::ostream& os, json& meta) {
  constexpr bool kExact = !std::is_same_v<Mass, double>;
  os << (kExact ? "x,lo,hi,lo_exact,hi_exact\n" : "x,lo,hi\n");
  for (Site x : sites) {
    const auto b = occupancy_bounds(dist, x);
    os << x << "," << fmt(to_double(b.lo)) << "," << fmt(to_double(b.hi));
    if constexpr (kExact) os << "," << b.lo.get_str() << "," << b.hi.get_str();
    os << "\n";
  }
  meta["lost"] = to_double(dist.lost());
  if constexpr (kExact) meta["lost_exact"] = dist.lost().get_str();
  meta["empty_mass"] = to_double(dist.empty_mass());
  meta["support_size"] = dist.support_size();
  if (!c.dist_out.empty()) {
    std::ofstream f(c.dist_out);
    if (!f) throw UsageError("cannot open distribution file '" + c.dist_out + "'");
    f << "left,right,mass\n";
    dist.for_each([&](const Interval& s, const Mass& m) {
      if (s.is_empty()) {
        f << "EMPTY,EMPTY," << fmt(to_double(m)) << "\n";
      } else {
        f << s.left() << "," << s.right() << "," << fmt(to_double(m)) << "\n";
      }
    });
  }
}

int cmd_exact(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate_common(c);
  if (c.dimension != 1) throw UsageError("exact supports dimension 1 only");
  const ExpansionParam p = parse_p(c);
  const ContractionRule rule = parse_rule(c);
  const Interval initial = parse_initial(c)[0];
  const std::vector<Site> sites = parse_sites(c.sites);
  const auto start = Clock::now();
  Sink sink(c.out, out);
  json meta;
  if (c.mode == "float") {
    write_exact(c, evolve<double>(initial, c.t, rule, p, {c.n_max}), sites, sink.get(), meta);
  } else if (c.mode == "rational") {
    write_exact(c, evolve<Rational>(initial, c.t, rule, p, {c.n_max}), sites, sink.get(), meta);
  } else {
    throw UsageError("unknown arithmetic mode '" + c.mode + "'");
  }
  json full = base_meta(c, seconds_since(start));
  full.update(meta);
  write_meta(c, full, err);
  return kExitOk;
}

int cmd_mc(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const ExpansionParam p = parse_p(c);
  const McOptions options = parse_mc_options(c);
  const auto initial = parse_initial(c);
  const auto start = Clock::now();
  std::vector<OccupancyEstimate> est;
  std::string header;
  if (c.dimension == 1) {
    const std::vector<Site> sites = parse_sites(c.sites);
    est = estimate_occupancy(initial[0], c.t, sites, c.trials, parse_rule(c), p, c.seed, options);
    header = "x";
  } else {
    if (c.variant != "uniform") throw UsageError("--variant applies to dimension 1 only");
    const auto sites = l1_ball(c.dimension, c.radius);
    est = estimate_occupancy_rect(HyperRect::box(initial), c.t, sites, c.trials, p, c.seed,
                                  options);
    const char* names[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < c.dimension; ++i) {
      if (i > 0) header += ",";
      header += c.dimension <= 3 ? std::string(names[i]) : "x" + std::to_string(i);
    }
  }
  Sink sink(c.out, out);
  std::ostream& os = sink.get();
  os << header << ",estimate,ci_lo,ci_hi,hits,trials\n";
  for (const auto& e : est) {
    for (std::size_t i = 0; i < e.site.size(); ++i) os << (i > 0 ? "," : "") << e.site[i];
    os << "," << fmt(e.estimate) << "," << fmt(e.ci_lo) << "," << fmt(e.ci_hi) << "," << e.hits
       << "," << e.trials << "\n";
  }
  write_meta(c, base_meta(c, seconds_since(start)), err);
  return kExitOk;
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"even",           "monotone-1d",
                                              "monotone-l1",    "coupling-marginals",
                                              "coupling-invariants", "reflection"};
  return names;
}

CheckReport run_suite(const std::string& name, const RunConfig& c, ExpansionParam p,
                      const McOptions& o) {
  if (name == "even") return check_even(c.t, p, 10, c.trials, c.seed, o);
  if (name == "monotone-1d") return check_monotone_1d(c.t, p, 10, c.trials, c.seed, o);
  if (name == "monotone-l1") {
    return check_monotone_l1(std::max<std::size_t>(2, c.dimension), c.t, p, c.radius, c.trials,
                             c.seed, o);
  }
  if (name == "coupling-marginals") return coupling_marginal_test(c.t, p, c.trials, c.seed, o);
  if (name == "coupling-invariants") {
    return coupling_invariants_check(c.trials, c.horizon, p, c.seed, o);
  }
  if (name == "reflection") return reflection_check(c.trials, c.horizon, p, c.seed, o);
  throw UsageError("unknown suite '" + name + "'");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate_common(c);
  const ExpansionParam p = parse_p(c);
  const McOptions options = parse_mc_options(c);
  std::vector<std::string> suites;
  for (const std::string& s : split(c.suites, ',')) {
    if (s == "all") {
      suites.insert(suites.end(), all_suites().begin(), all_suites().end());
    } else if (!s.empty()) {
      if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
        throw UsageError("unknown suite '" + s + "'");
      }
      suites.push_back(s);
    }
  }
  if (suites.empty()) throw UsageError("no suites selected");

  const auto start = Clock::now();
  std::vector<CheckReport> reports;
  for (const std::string& s : suites) reports.push_back(run_suite(s, c, p, options));

  Sink sink(c.out, out);
  std::ostream& os = sink.get();
  os << "claim,pass,worst_margin,worst_case,parameters\n";
  json report_json = json::array();
  bool all_pass = true;
  for (const CheckReport& r : reports) {
    std::string params;
    json pj;
    for (const auto& [k, v] : r.parameters) {
      params += (params.empty() ? "" : ";") + k + "=" + v;
      pj[k] = v;
    }
    os << r.claim << "," << (r.pass ? "PASS" : "FAIL") << "," << fmt(r.worst_margin) << ","
       << csv_quote(r.worst_case) << "," << csv_quote(params) << "\n";
    report_json.push_back({{"claim", r.claim},
                           {"pass", r.pass},
                           {"worst_margin", r.worst_margin},
                           {"worst_case", r.worst_case},
                           {"parameters", pj}});
    all_pass = all_pass && r.pass;
  }
  json meta = base_meta(c, seconds_since(start));
  meta["reports"] = report_json;
  meta["pass"] = all_pass;
  write_meta(c, meta, err);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--config", c.config, "JSON file of option values; flags override it");
  sub->add_option("--p", c.p, "Expansion parameter in (0,1), decimal or a/b")->capture_default_str();
  sub->add_option("--t", c.t, "Number of steps")->capture_default_str();
  sub->add_option("--dimension", c.dimension, "Lattice dimension")->capture_default_str();
  sub->add_option("--initial", c.initial, "Initial box: per-axis l:r, comma separated");
  sub->add_option("--seed", c.seed, "Root seed")->capture_default_str();
  sub->add_option("--out", c.out, "CSV output file (default stdout)");
  sub->add_option("--meta", c.meta, "JSON metadata file (default <out>.meta.json or stderr)");
}

void add_rule(CLI::App* sub, RunConfig& c) {
  sub->add_option("--variant", c.variant,
                  "Contraction: uniform, general-size, kill-then-uniform, endpoint-resample")
      ->capture_default_str();
  sub->add_option("--p-empty", c.p_empty, "kill-then-uniform: constant kill probability (default 1/(K+1))");
  sub->add_option("--size-q", c.size_q, "general-size: Binomial(n, q) size law")
      ->capture_default_str();
}

void add_mc(CLI::App* sub, RunConfig& c) {
  sub->add_option("--trials", c.trials, "Monte Carlo trials")->capture_default_str();
  sub->add_option("--confidence", c.confidence, "Confidence level")->capture_default_str();
  sub->add_option("--method", c.method, "Interval method: wilson or hoeffding")
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  sub->add_option("--mutant", c.mutant,
                  "none, skip-psi, unmirrored-reflection, one-sided-expansion")
      ->capture_default_str();
}

// Expands --config FILE into "--key value" tokens placed ahead of the
// explicit flags, so the explicit ones win under take-last.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "command" || key == "config" || value.is_null()) continue;
    tokens.push_back("--" + key);
    if (value.is_string()) {
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number() || value.is_boolean()) {
      tokens.push_back(value.dump());
    } else {
      throw UsageError("config key '" + key + "' must be a scalar");
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);  // program, subcommand
  out.insert(out.end(), tokens.begin(), tokens.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Randomly fluctuating intervals: simulation, exact laws, Monte Carlo checks"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CLI::App* simulate = app.add_subcommand("simulate", "Write sample trajectories as CSV");
  add_common(simulate, c);
  add_rule(simulate, c);
  simulate->add_option("--runs", c.runs, "Number of trajectories")->capture_default_str();

  CLI::App* exact = app.add_subcommand("exact", "Exact occupancy bounds in dimension 1");
  add_common(exact, c);
  add_rule(exact, c);
  exact->add_option("--sites", c.sites, "Sites: comma list of x or a:b")->capture_default_str();
  exact->add_option("--n-max", c.n_max, "Expansion truncation")->capture_default_str();
  exact->add_option("--mode", c.mode, "Arithmetic: float or rational")->capture_default_str();
  exact->add_option("--dist-out", c.dist_out, "Also write the state law as CSV");

  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo occupancy estimates");
  add_common(mc, c);
  add_rule(mc, c);
  add_mc(mc, c);
  mc->add_option("--sites", c.sites, "Sites (dimension 1)")->capture_default_str();
  mc->add_option("--radius", c.radius, "L1 radius of the site ball (dimension >= 2)")
      ->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify, c);
  add_mc(verify, c);
  verify->add_option("--suite", c.suites,
                     "Comma list of suites or 'all': even, monotone-1d, monotone-l1, "
                     "coupling-marginals, coupling-invariants, reflection")
      ->capture_default_str();
  verify->add_option("--radius", c.radius, "monotone-l1 radius")->capture_default_str();
  verify->add_option("--horizon", c.horizon, "Coupled run length")->capture_default_str();

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      c.command = "simulate";
      return cmd_simulate(c, out, err);
    }
    if (exact->parsed()) {
      c.command = "exact";
      return cmd_exact(c, out, err);
    }
    if (mc->parsed()) {
      c.command = "mc";
      return cmd_mc(c, out, err);
    }
    c.command = "verify";
    return cmd_verify(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace rfi::cli
