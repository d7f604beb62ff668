// Command-line front door: set generation, spectral reports, mixing times,
// heat flows, FKG searches, the verification suite, and family sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 bad configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monocube/bridge.hpp"
#include "monocube/censored_walk.hpp"
#include "monocube/cube_set.hpp"
#include "monocube/directed_laplacian.hpp"
#include "monocube/errors.hpp"
#include "monocube/fkg.hpp"
#include "monocube/heat_flow.hpp"
#include "monocube/monotone_projection.hpp"
#include "monocube/parallel.hpp"
#include "monocube/verify_suite.hpp"

using namespace monocube;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

json base_artifact(const std::string& command, const json& config) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"config", config}};
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(static_cast<bool>(out), Err::Format, "cannot open " + path);
  out << j.dump(2) << "\n";
}

struct GenOptions {
  std::string family;
  unsigned n = 4;
  unsigned m = 0;
  unsigned k = 0;
  std::vector<double> coeffs;
  double b = 0.0;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string xstar;
  std::string out;
};

CubeSet build_family(const GenOptions& g) {
  if (g.family == "full_cube") return full_cube(g.n).set();
  if (g.family == "two_subcubes") return two_subcubes(g.n, g.m).set();
  if (g.family == "weight_threshold") return weight_threshold(g.n, g.k).set();
  if (g.family == "halfspace") {
    require(g.coeffs.size() == g.n, Err::ParamOutOfRange,
            "halfspace needs --a with n comma-separated coefficients");
    return halfspace(g.n, g.coeffs, g.b).set();
  }
  if (g.family == "middle_slice_bridge") {
    std::optional<Vertex> star;
    if (!g.xstar.empty()) star = from_bitstring(g.xstar);
    return middle_slice_bridge(g.n, star);
  }
  if (g.family == "random") return random_monotone(g.n, g.p, g.seed).set();
  fail(Err::ParamOutOfRange, "unknown family " + g.family);
}

CubeSet load_set(const std::string& path) { return read_mset_file(path); }

std::vector<double> make_function(const CubeSet& a, const std::string& kind,
                                  std::uint64_t seed) {
  std::vector<double> f(a.size());
  if (kind == "random") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (auto& x : f) x = gauss(rng);
  } else if (kind == "weight") {
    const auto members = a.members();
    for (std::size_t i = 0; i < members.size(); ++i)
      f[i] = static_cast<double>(hamming_weight(members[i]));
  } else {
    fail(Err::ParamOutOfRange, "unknown function kind " + kind);
  }
  return f;
}

int cmd_gen(const GenOptions& g) {
  const CubeSet s = build_family(g);
  write_mset_file(g.out, s);
  std::printf("wrote %s: n=%u |A|=%llu mu=%.6f%s\n", g.out.c_str(), s.dim(),
              static_cast<unsigned long long>(s.size()), s.density(),
              MonotoneSet::try_validate(s) ? "" : " (tagged non-monotone)");
  return 0;
}

int cmd_gap(const std::string& set_path, const std::string& json_path) {
  const CubeSet s = load_set(set_path);
  const bool monotone = MonotoneSet::try_validate(s).has_value();
  const SpectralReport rep = spectral_gap_gamma(s);
  json j = base_artifact("gap", {{"set", set_path}});
  j.update(to_json(rep));
  j["monotone"] = monotone;
  if (!json_path.empty()) write_json_file(json_path, j);
  std::printf("n=%u |A|=%llu mu=%.6f gamma=%.12g bound=%.12g margin=%.3g pass=%s\n",
              rep.n, static_cast<unsigned long long>(s.size()), rep.mu, rep.gamma,
              rep.bound, rep.margin, rep.pass ? "true" : "false");
  if (!rep.connected) std::printf("induced subgraph disconnected; gamma reported as 0\n");
  if (!monotone) {
    std::printf("set is not monotone; the gap bound does not apply\n");
    return 0;
  }
  return rep.pass ? 0 : 1;
}

int cmd_mix(const std::string& set_path, double eps, const std::string& curve_path,
            const std::string& json_path) {
  const CubeSet s = load_set(set_path);
  const MixingResult mix = mixing_time_tv(s, eps);
  if (!curve_path.empty()) {
    std::ofstream out(curve_path);
    require(static_cast<bool>(out), Err::Format, "cannot open " + curve_path);
    out << "t,max_tv\n";
    char buf[64];
    for (const auto& [t, tv] : mix.tv_curve) {
      std::snprintf(buf, sizeof buf, "%lld,%.15g\n", static_cast<long long>(t), tv);
      out << buf;
    }
  }
  if (!json_path.empty()) {
    json j = base_artifact("mix", {{"set", set_path}, {"eps", eps}});
    j["t_mix"] = mix.t_mix;
    j["bound"] = mix.bound;
    j["pass"] = mix.pass;
    j["exact"] = mix.exact;
    write_json_file(json_path, j);
  }
  std::printf("t_mix=%lld bound=%.2f pass=%s%s\n", static_cast<long long>(mix.t_mix),
              mix.bound, mix.pass ? "true" : "false", mix.exact ? "" : " (approximate)");
  return 0;
}

int cmd_walk(const std::string& set_path, std::int64_t steps, std::uint64_t seed,
             const std::string& start_bits, const std::string& json_path) {
  const CubeSet s = load_set(set_path);
  Vertex start;
  if (start_bits.empty()) {
    // default: the all-ones vertex, a member of every nonempty monotone set
    start = static_cast<Vertex>(s.cube_size() - 1);
    if (!s.contains(start)) start = s.members().front();
  } else {
    start = from_bitstring(start_bits);
  }
  const WalkSummary sum = simulate_walk(s, start, steps, seed);
  std::printf("steps=%lld censored_fraction=%.6f final=%s\n",
              static_cast<long long>(steps), sum.censored_fraction,
              to_bitstring(sum.end, s.dim()).c_str());
  for (const auto& [t, tv] : sum.tv_checkpoints)
    std::printf("  t=%lld empirical_tv=%.6f\n", static_cast<long long>(t), tv);
  if (!json_path.empty()) {
    json j = base_artifact(
        "walk", {{"set", set_path}, {"steps", steps}, {"seed", seed}});
    j["censored_fraction"] = sum.censored_fraction;
    j["tv_checkpoints"] = sum.tv_checkpoints;
    j["visit_counts"] = sum.visit_counts;
    write_json_file(json_path, j);
  }
  return 0;
}

int cmd_flow(unsigned n, const std::string& fkind, std::uint64_t seed, double eps,
             double step, const std::string& trace_path, const std::string& graph_path) {
  WeightedDigraph g = graph_path.empty() ? WeightedDigraph::directed_hypercube(n)
                                         : read_digraph_file(graph_path);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> f0(static_cast<std::size_t>(g.vertex_count()));
  if (fkind == "random") {
    for (auto& x : f0) x = gauss(rng);
  } else if (fkind == "anti_dictator") {
    for (std::size_t i = 0; i < f0.size(); ++i) f0[i] = -static_cast<double>(i & 1u);
  } else {
    fail(Err::ParamOutOfRange, "unknown initial state kind " + fkind);
  }
  FlowOptions opt;
  opt.tol = eps;
  opt.step = step;
  const FlowResult res = heat_flow_solve(g, std::move(f0), opt);
  if (!trace_path.empty()) write_trace_csv_file(trace_path, res.trace);
  std::printf("steps=%lld t_end=%.4f converged=%s residual=%.3e energy_end=%.3e\n",
              static_cast<long long>(res.steps), res.t_end,
              res.converged ? "true" : "false", res.residual,
              res.trace.energy.back());
  return 0;
}

int cmd_fkg(const std::string& set_path, const std::string& example,
            const std::string& joint_path, int restarts, std::uint64_t seed,
            const std::string& json_path) {
  if (!example.empty() || !joint_path.empty()) {
    FiniteJoint j = example.empty() ? read_joint_csv_file(joint_path)
                                    : (require(example == "paper-2.5", Err::ParamOutOfRange,
                                               "unknown example " + example),
                                       FiniteJoint::builtin_example());
    const auto chk = fkg_theorem_check(j);
    const bool equality = std::abs(chk.cov - chk.bound) <= 1e-12;
    std::printf("best_c=%.12g cov=%.12g var_x=%.12g var_y=%.12g bound=%.12g\n", chk.c,
                chk.cov, chk.var_x, chk.var_y, chk.bound);
    std::printf("pass=%s equality=%s\n", chk.pass ? "true" : "false",
                equality ? "true" : "false");
    if (!json_path.empty()) {
      json a = base_artifact("fkg", {{"example", example}, {"joint", joint_path}});
      a.update(chk.report().to_json());
      a["equality"] = equality;
      write_json_file(json_path, a);
    }
    return chk.pass ? 0 : 1;
  }
  const CubeSet s = load_set(set_path);
  const auto a = MonotoneSet::try_validate(s);
  require(a.has_value(), Err::NotMonotone, "fkg search needs a monotone set");
  const CorrelationReport rep = delta_search(*a, restarts, 60, seed);
  std::printf("n=%u mu=%.6f delta_hat=%.9f bound=%.9f margin=%.3e restarts=%d pass=%s\n",
              rep.n, rep.mu, rep.delta_hat, rep.bound, rep.margin, rep.restarts,
              rep.pass ? "true" : "false");
  if (!json_path.empty()) {
    json j = base_artifact("fkg", {{"set", set_path}, {"restarts", restarts}, {"seed", seed}});
    j.update(to_json(rep));
    write_json_file(json_path, j);
  }
  return rep.pass ? 0 : 1;
}

int cmd_verify(unsigned n_max, int random_trials, bool quick, const std::string& json_path) {
  SuiteOptions opt;
  opt.n_max = n_max;
  opt.random_trials = random_trials;
  opt.quick = quick;
  bool all = true;
  json arr = json::array();
  for (int id = 1; id <= 12; ++id) {
    const CriterionResult c = run_criterion(id, opt);
    std::printf("[%s] criterion %d: %s (%s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    arr.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  std::printf("%s\n", arr.dump().c_str());
  std::printf("%s\n", all ? "PASS" : "FAIL");
  if (!json_path.empty()) {
    json j = base_artifact("verify", {{"n_max", n_max},
                                      {"random_trials", random_trials},
                                      {"quick", quick}});
    j["criteria"] = arr;
    j["pass"] = all;
    write_json_file(json_path, j);
  }
  return all ? 0 : 1;
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const unsigned n = static_cast<unsigned>(std::stoul(text));
    return {n, n};
  }
  return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
          static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
}

int cmd_sweep(const std::string& family, unsigned n_lo, unsigned n_hi, unsigned m,
              double p, std::uint64_t seed, const std::string& out_path) {
  std::ofstream out(out_path);
  require(static_cast<bool>(out), Err::Format, "cannot open " + out_path);
  out << "n,mu,gamma,bound,margin,connected\n";
  char buf[256];
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    GenOptions g;
    g.family = family;
    g.n = n;
    g.m = m > 0 ? m : std::max(1u, n / 2);
    g.k = std::max(1u, n / 2);
    g.p = p;
    g.seed = seed;
    if (family == "halfspace") {
      g.coeffs.assign(n, 1.0);
      g.b = n / 2.0;
    }
    const CubeSet s = build_family(g);
    if (s.size() < 2) continue;
    const SpectralReport rep = spectral_gap_gamma(s);
    std::snprintf(buf, sizeof buf, "%u,%.15g,%.15g,%.15g,%.15g,%d\n", n, rep.mu,
                  rep.gamma, rep.bound, rep.margin, rep.connected ? 1 : 0);
    out << buf;
    std::printf("n=%u gamma=%.6e\n", n, rep.gamma);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  par::init_threads_from_env();
  CLI::App app{"spectral gaps, censored walks, and FKG ratios on monotone hypercube sets"};
  app.require_subcommand(1);

  // gen
  GenOptions g;
  auto* gen = app.add_subcommand("gen", "generate a vertex set and write a .mset file");
  gen->add_option("--family", g.family,
                  "full_cube|two_subcubes|weight_threshold|halfspace|middle_slice_bridge|random")
      ->required();
  gen->add_option("--n", g.n, "dimension")->required();
  gen->add_option("--m", g.m, "subcube width (two_subcubes)");
  gen->add_option("--k", g.k, "weight threshold");
  gen->add_option("--a", g.coeffs, "halfspace coefficients")->delimiter(',');
  gen->add_option("--b", g.b, "halfspace threshold");
  gen->add_option("--p", g.p, "bias for random family");
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_option("--xstar", g.xstar, "bridge vertex as a bitstring");
  gen->add_option("--out", g.out, "output .mset path")->required();

  // gap
  std::string set_path, json_path;
  auto* gap = app.add_subcommand("gap", "spectral gap report for a set");
  gap->add_option("--set", set_path, ".mset file")->required();
  gap->add_option("--json", json_path, "write the report as JSON");

  // mix
  double eps = 0.25;
  std::string curve_path;
  auto* mix = app.add_subcommand("mix", "exact total-variation mixing time");
  mix->add_option("--set", set_path, ".mset file")->required();
  mix->add_option("--eps", eps, "TV threshold (default 0.25)");
  mix->add_option("--curve", curve_path, "write the (t, max_tv) curve as CSV");
  mix->add_option("--json", json_path, "write the result as JSON");

  // walk
  std::int64_t steps = 10000;
  std::uint64_t seed = 1;
  std::string start_bits;
  auto* walk = app.add_subcommand("walk", "simulate the censored walk");
  walk->add_option("--set", set_path, ".mset file")->required();
  walk->add_option("--steps", steps, "number of steps")->required();
  walk->add_option("--seed", seed, "random seed");
  walk->add_option("--start", start_bits, "start vertex as a bitstring");
  walk->add_option("--json", json_path, "write the summary as JSON");

  // flow
  unsigned flow_n = 4;
  std::string fkind = "random", trace_path, graph_path;
  double flow_eps = 1e-10, flow_step = 0.0;
  auto* flow = app.add_subcommand("flow", "directed heat flow to the monotone equilibrium");
  flow->add_option("--set-dim", flow_n, "hypercube dimension");
  flow->add_option("--graph", graph_path, "edge-list digraph file instead of a hypercube");
  flow->add_option("--f", fkind, "initial state: random|anti_dictator");
  flow->add_option("--seed", seed, "random seed");
  flow->add_option("--eps", flow_eps, "residual tolerance");
  flow->add_option("--step", flow_step, "RK4 step (default min(0.1/d_w, 0.01))");
  flow->add_option("--trace", trace_path, "write the trace CSV");

  // fkg
  std::string example, joint_path;
  int restarts = 32;
  auto* fkg = app.add_subcommand("fkg", "approximate FKG ratio search / joint checks");
  fkg->add_option("--set", set_path, ".mset file (monotone)");
  fkg->add_option("--example", example, "built-in joint example name (paper-2.5)");
  fkg->add_option("--joint", joint_path, "joint distribution CSV (x,y,p rows)");
  fkg->add_option("--restarts", restarts, "search restarts");
  fkg->add_option("--seed", seed, "random seed");
  fkg->add_option("--json", json_path, "write the report as JSON");

  // verify
  unsigned n_max = 4;
  int random_trials = 0;
  bool quick = false;
  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  verify->add_option("--n-max", n_max, "exhaustive enumeration bound, clamped to 4 (criteria are pinned there)");
  verify->add_option("--random-trials", random_trials,
                     "scale randomized counts (default: per-criterion values)");
  verify->add_flag("--quick", quick, "reduced counts for a fast smoke run");
  verify->add_option("--json", json_path, "write the reports as JSON");

  // sweep
  std::string sweep_family, sweep_out, sweep_range = "4..8";
  unsigned sweep_m = 0;
  double sweep_p = 0.5;
  auto* sweep = app.add_subcommand("sweep", "gamma across a family of sets");
  sweep->add_option("--family", sweep_family, "family name")->required();
  sweep->add_option("--n", sweep_range, "dimension range, e.g. 4..8")->required();
  sweep->add_option("--m", sweep_m, "subcube width (two_subcubes)");
  sweep->add_option("--p", sweep_p, "bias (random family)");
  sweep->add_option("--seed", seed, "random seed");
  sweep->add_option("--out", sweep_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(g);
    if (*gap) return cmd_gap(set_path, json_path);
    if (*mix) return cmd_mix(set_path, eps, curve_path, json_path);
    if (*walk) return cmd_walk(set_path, steps, seed, start_bits, json_path);
    if (*flow) return cmd_flow(flow_n, fkind, seed, flow_eps, flow_step, trace_path, graph_path);
    if (*fkg) return cmd_fkg(set_path, example, joint_path, restarts, seed, json_path);
    if (*verify) return cmd_verify(n_max, random_trials, quick, json_path);
    if (*sweep) {
      const auto [lo, hi] = parse_range(sweep_range);
      return cmd_sweep(sweep_family, lo, hi, sweep_m, sweep_p, seed, sweep_out);
    }
  } catch (const MonocubeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
