#include "rmenum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmenum/estimator.hpp"
#include "rmenum/exact.hpp"
#include "rmenum/gibbs.hpp"
#include "rmenum/manifest.hpp"
#include "rmenum/rm_code.hpp"
#include "rmenum/spectrum.hpp"

#ifndef RMENUM_VERSION
#define RMENUM_VERSION "0.0.0"
#endif

namespace rmenum::cli {

using nlohmann::json;

const char* tool_version() { return RMENUM_VERSION; }

std::vector<std::size_t> parse_range(const std::string& text) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad range '" + text + "': expected lo:hi or lo:hi:step");
    parts.push_back(std::stoull(item));
  }
  if (parts.size() < 2 || parts.size() > 3)
    throw std::invalid_argument("bad range '" + text + "': expected lo:hi or lo:hi:step");
  const std::size_t step = parts.size() == 3 ? parts[2] : 1;
  if (step == 0) throw std::invalid_argument("bad range '" + text + "': step must be positive");
  std::vector<std::size_t> values;
  for (std::size_t w = parts[0]; w <= parts[1]; w += step) values.push_back(w);
  return values;
}

namespace {

struct Options {
  int m = -1;
  int r = -1;
  std::vector<std::size_t> omega;
  std::string omega_range;
  std::uint64_t tau = 0;
  std::size_t t = 10;
  double delta = 0.001;
  double beta_star = 0.0;
  double schedule_step = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 32;
  unsigned threads = 1;
  std::size_t k_max = 26;
  bool full_range = false;
  bool self_dual_filter = false;
  std::string out;
  std::string manifest;
  std::size_t runs = 1;
  std::string stop_rule = "linear";
  std::size_t window = 3;
  std::size_t max_rounds = 0;
  bool warm_start = false;
  bool trace = false;
  std::string method = "auto";
  std::string in;
  std::size_t k = 0;
  std::string codeword;
  std::string c0;
  bool min_weight = false;
  std::string replay_path;
};

struct Sink {
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::map<std::string, std::string>* capture = nullptr;
  std::string out_path;
  std::string manifest_path;
  RunManifest manifest;

  void emit(const std::string& content) {
    const std::string path = out_path.empty() ? "-" : out_path;
    if (capture) {
      (*capture)[path] = content;
    } else if (out_path.empty()) {
      *out << content;
      out->flush();
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + out_path);
      f << content;
    }
    manifest.outputs.push_back({path, sha256_hex(content)});
  }

  void finish() {
    if (capture) return;
    const std::string text = manifest.to_json().dump(2) + "\n";
    std::string path = manifest_path;
    if (path.empty() && !out_path.empty()) path = out_path + ".manifest.json";
    if (path.empty()) {
      *err << manifest.to_json().dump() << "\n";
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }
};

std::vector<std::size_t> omega_list(const Options& o) {
  std::set<std::size_t> s(o.omega.begin(), o.omega.end());
  if (!o.omega_range.empty())
    for (std::size_t w : parse_range(o.omega_range)) s.insert(w);
  return {s.begin(), s.end()};
}

std::string fixed10(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", x);
  return buf;
}

json code_params(const Options& o) { return {{"m", o.m}, {"r", o.r}}; }

int cmd_estimate(const Options& o, CLI::App& sub, Sink& sink) {
  const RmCode code(o.m, o.r);
  const std::vector<std::size_t> omegas = omega_list(o);
  if (omegas.empty()) throw CLI::RequiredError("--omega or --omega-range");
  if (o.runs == 0) throw std::invalid_argument("--runs must be at least 1");
  const bool fixed = sub.count("--beta-star") > 0;
  StopRule rule;
  if (o.stop_rule == "linear") rule = StopRule::Linear;
  else if (o.stop_rule == "rate") rule = StopRule::Rate;
  else throw std::invalid_argument("--stop-rule must be 'linear' or 'rate'");

  json params = code_params(o);
  params["omega"] = omegas;
  params["tau"] = o.tau;
  params["t"] = o.t;
  params["schedule_step"] = o.schedule_step > 0 ? o.schedule_step : 1.0 / static_cast<double>(code.n());
  params["seed"] = o.seed;
  params["runs"] = o.runs;
  params["threads"] = o.threads;
  params["warm_start"] = o.warm_start;
  if (fixed) {
    params["beta_star"] = o.beta_star;
  } else {
    params["delta"] = o.delta;
    params["stop_rule"] = o.stop_rule;
    params["window"] = o.window;
    params["max_rounds"] = o.max_rounds;
  }
  sink.manifest.params = params;

  std::ostringstream csv;
  csv << "omega,rate,log2_Z,ell_used,converged\n";
  bool all_converged = true;
  const RngStream root(o.seed);
  for (std::size_t omega : omegas) {
    std::vector<LogEstimate> runs;
    for (std::size_t run = 0; run < o.runs; ++run) {
      RngStream rng = root.split({omega, run});
      SamplingOptions sampling;
      sampling.step = o.schedule_step;
      sampling.threads = o.threads;
      sampling.warm_start = o.warm_start;
      if (o.trace) {
        std::ostream* err = sink.err;
        sampling.trace = [err, omega, run](const RoundTrace& tr) {
          *err << "trace omega=" << omega << " run=" << run << " round=" << tr.round
               << " beta=" << tr.beta << " y=" << tr.y << " log2_z=" << tr.log2_z
               << " rate=" << tr.rate << "\n";
        };
      }
      if (fixed) {
        runs.push_back(estimate_fixed(code, omega, o.beta_star, o.t, o.tau, rng, sampling));
      } else {
        AdaptiveOptions adaptive;
        adaptive.sampling = sampling;
        adaptive.rule = rule;
        adaptive.window = o.window;
        adaptive.max_rounds = o.max_rounds;
        runs.push_back(estimate_adaptive(code, omega, o.t, o.tau, o.delta, rng, adaptive));
      }
    }
    const LogEstimate est = median_boost(runs);
    all_converged = all_converged && est.converged;
    csv << omega << ',' << fixed10(est.rate) << ',' << fixed10(est.log2_z) << ',' << est.ell_used
        << ',' << (est.converged ? "true" : "false") << '\n';
  }
  sink.emit(csv.str());
  return all_converged ? kExitOk : kExitUnconverged;
}

int cmd_spectrum(const Options& o, CLI::App& sub, Sink& sink) {
  const RmCode code(o.m, o.r);
  CandidateSet candidates{o.m, o.r, omega_list(o)};
  const bool explicit_candidates = !candidates.weights.empty();
  if (!explicit_candidates) candidates = candidate_weights(o.m, o.r, o.self_dual_filter, o.full_range);
  SpectrumParams sp;
  sp.beta_star = sub.count("--beta-star") ? o.beta_star : 50.0;
  sp.tau = sub.count("--tau") ? o.tau : 1'000'000;
  sp.trials = o.trials;
  sp.threads = o.threads;

  json params = code_params(o);
  params["candidates"] = candidates.weights;
  params["full_range"] = o.full_range;
  params["self_dual_filter"] = o.self_dual_filter;
  params["beta_star"] = sp.beta_star;
  params["tau"] = sp.tau;
  params["trials"] = sp.trials;
  params["seed"] = o.seed;
  params["threads"] = o.threads;
  sink.manifest.params = params;

  RngStream rng(o.seed);
  const SpectrumReport report = estimate_spectrum(code, candidates, sp, rng);
  sink.emit(report.to_json().dump(2) + "\n");
  return kExitOk;
}

int cmd_exact(const Options& o, Sink& sink) {
  const RmCode code(o.m, o.r);
  json params = code_params(o);
  params["k_max"] = o.k_max;
  params["threads"] = o.threads;

  BruteForceOptions bf{o.k_max, o.threads};
  RecursionBudget budget;
  budget.k_max = o.k_max;
  WeightDistribution wd;
  std::string method = o.method;
  if (method == "auto") {
    const std::size_t dual_k = code.n() - code.k();
    if (code.k() <= o.k_max) method = "brute";
    else if (dual_k <= o.k_max) method = "dual";
    else method = "recursion";
  }
  if (method == "brute") {
    wd = brute_force_distribution(code, bf);
  } else if (method == "dual") {
    const std::size_t dual_k = code.n() - code.k();
    if (dual_k > o.k_max)
      throw ResourceCapExceeded("exact: dual dimension " + std::to_string(dual_k) + " exceeds k_max");
    wd = o.r >= o.m ? full_space_distribution(code.n())
                    : macwilliams_transform(brute_force_distribution(RmCode(o.m, o.m - o.r - 1), bf), dual_k);
  } else if (method == "recursion") {
    wd = coset_recursion_distribution(o.m, o.r, budget);
  } else {
    throw std::invalid_argument("--method must be auto, brute, dual or recursion");
  }
  params["method"] = method;
  sink.manifest.params = params;
  sink.emit(to_json(wd).dump(2) + "\n");
  return kExitOk;
}

int cmd_macwilliams(const Options& o, CLI::App& sub, Sink& sink) {
  std::ifstream f(o.in, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + o.in);
  std::ostringstream buf;
  buf << f.rdbuf();
  const json input = json::parse(buf.str());
  const WeightDistribution wd = weight_distribution_from_json(input);
  std::size_t k = o.k;
  if (!sub.count("--k")) {
    if (!input.contains("k")) throw CLI::RequiredError("--k (input has no \"k\" field)");
    k = input.at("k").get<std::size_t>();
  }
  sink.manifest.params = {{"in", o.in}, {"in_sha256", sha256_hex(buf.str())}, {"k", k}};
  sink.emit(to_json(macwilliams_transform(wd, k)).dump(2) + "\n");
  return kExitOk;
}

int cmd_sample(const Options& o, CLI::App& sub, Sink& sink) {
  const RmCode code(o.m, o.r);
  RngStream rng(o.seed);
  json params = code_params(o);
  params["seed"] = o.seed;
  json result;
  if (o.min_weight) {
    params["min_weight"] = true;
    const BitVec c = sample_min_weight(code, rng);
    result = {{"codeword", c.to_hex()}, {"weight", c.weight()}};
  } else {
    if (o.omega.size() != 1) throw CLI::RequiredError("exactly one --omega (or --min-weight)");
    const std::uint64_t tau = sub.count("--tau") ? o.tau : 1000;
    const double beta = sub.count("--beta-star") ? o.beta_star : 0.0;
    const BitVec c0 = o.c0.empty() ? BitVec(code.n()) : BitVec::from_hex(o.c0, code.n());
    params["omega"] = o.omega[0];
    params["beta_star"] = beta;
    params["tau"] = tau;
    params["c0"] = c0.to_hex();
    const EnergyFn energy(o.omega[0]);
    const BitVec c = sample(code, c0, beta, energy, tau, rng);
    result = {{"codeword", c.to_hex()}, {"weight", c.weight()}, {"energy", energy(c)}};
  }
  sink.manifest.params = params;
  sink.emit(result.dump(2) + "\n");
  return kExitOk;
}

int cmd_recover(const Options& o, Sink& sink) {
  const RmCode code(o.m, o.r);
  const BitVec c = BitVec::from_hex(o.codeword, code.n());
  const BitVec u = recover_message(code, c);
  std::vector<std::size_t> support;
  for (std::size_t p : u.support()) support.push_back(p + 1);
  json params = code_params(o);
  params["codeword"] = o.codeword;
  sink.manifest.params = params;
  const json result = {{"weight", c.weight()}, {"message_support", support}, {"message_hex", u.to_hex()}};
  sink.emit(result.dump(2) + "\n");
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.replay_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + o.replay_path);
  const RunManifest recorded = RunManifest::from_json(json::parse(f));
  if (recorded.tool_version != tool_version())
    err << "replay: manifest written by version " << recorded.tool_version << ", running "
        << tool_version() << "\n";
  std::map<std::string, std::string> captured;
  const int code = run_captured(recorded.argv, captured, err);
  json report;
  report["exit_code"] = code;
  bool match = true;
  auto& outs = report["outputs"] = json::array();
  for (const auto& o_rec : recorded.outputs) {
    const auto it = captured.find(o_rec.path);
    const std::string got = it == captured.end() ? "" : sha256_hex(it->second);
    const bool same = it != captured.end() && got == o_rec.sha256;
    match = match && same;
    outs.push_back({{"path", o_rec.path}, {"expected", o_rec.sha256}, {"actual", got}, {"match", same}});
  }
  report["match"] = match;
  out << report.dump(2) << "\n";
  return match ? kExitOk : kExitReplayMismatch;
}

void add_code_options(CLI::App* sub, Options& o) {
  sub->add_option("--m", o.m, "Code order m (n = 2^m)")->required()->check(CLI::Range(1, kMaxRmOrder));
  sub->add_option("--r", o.r, "Code degree r")->required()->check(CLI::NonNegativeNumber);
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_option("--manifest", o.manifest, "Manifest path (default: <out>.manifest.json, or stderr)");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             std::map<std::string, std::string>* capture) {
  Options o;
  CLI::App app{"Monte Carlo and exact weight enumeration for Reed-Muller codes", "rmenum"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  auto* est = app.add_subcommand("estimate", "Estimate log2 A(omega) / n by simulated annealing");
  add_code_options(est, o);
  est->add_option("--omega", o.omega, "Target weight(s)");
  est->add_option("--omega-range", o.omega_range, "Target weights lo:hi[:step]");
  est->add_option("--tau", o.tau, "Metropolis steps per sample")->default_val(1'000'000);
  est->add_option("--t", o.t, "Samples per cooling step")->default_val(10);
  est->add_option("--delta", o.delta, "Stop-rule tolerance")->default_val(0.001);
  est->add_option("--beta-star", o.beta_star, "Fixed final beta (disables the adaptive stop rule)");
  est->add_option("--schedule-step", o.schedule_step, "Cooling step (default 1/n)");
  est->add_option("--seed", o.seed, "RNG seed")->default_val(0);
  est->add_option("--threads", o.threads, "Worker threads")->default_val(1);
  est->add_option("--runs", o.runs, "Independent runs per omega; the median is reported")->default_val(1);
  est->add_option("--stop-rule", o.stop_rule, "linear or rate")->default_val("linear");
  est->add_option("--window", o.window, "Consecutive rounds the stop rule must hold")->default_val(3);
  est->add_option("--max-rounds", o.max_rounds, "Round cap (default 16 n^3)")->default_val(0);
  est->add_flag("--warm-start", o.warm_start, "Start each round from the previous round's chains");
  est->add_flag("--trace", o.trace, "Log one line per cooling round to stderr");
  add_output_options(est, o);

  auto* spc = app.add_subcommand("spectrum", "Search for codewords of candidate weights");
  add_code_options(spc, o);
  spc->add_option("--omega", o.omega, "Explicit candidate weight(s)");
  spc->add_option("--omega-range", o.omega_range, "Explicit candidates lo:hi[:step]");
  spc->add_flag("--full-range", o.full_range, "Candidates from d instead of 2.5 d");
  spc->add_flag("--self-dual-filter", o.self_dual_filter, "Keep only multiples of 4");
  spc->add_option("--beta-star", o.beta_star, "Search temperature (default 50)");
  spc->add_option("--tau", o.tau, "Steps per trial (default 1e6)");
  spc->add_option("--trials", o.trials, "Restarts per weight")->default_val(32);
  spc->add_option("--seed", o.seed, "RNG seed")->default_val(0);
  spc->add_option("--threads", o.threads, "Worker threads")->default_val(1);
  add_output_options(spc, o);

  auto* ex = app.add_subcommand("exact", "Exact weight distribution");
  add_code_options(ex, o);
  ex->add_option("--k-max", o.k_max, "Brute-force cap on log2 of the codeword count")->default_val(26);
  ex->add_option("--method", o.method, "auto, brute, dual or recursion")->default_val("auto");
  ex->add_option("--threads", o.threads, "Worker threads")->default_val(1);
  add_output_options(ex, o);

  auto* mw = app.add_subcommand("macwilliams", "Dual weight distribution");
  mw->add_option("--in", o.in, "Weight distribution JSON")->required();
  mw->add_option("--k", o.k, "Dimension of the input code (default: the file's k)");
  add_output_options(mw, o);

  auto* smp = app.add_subcommand("sample", "Draw one codeword from the annealing chain");
  add_code_options(smp, o);
  smp->add_option("--omega", o.omega, "Target weight");
  smp->add_option("--beta,--beta-star", o.beta_star, "Inverse temperature (default 0)");
  smp->add_option("--tau", o.tau, "Metropolis steps (default 1000)");
  smp->add_option("--c0", o.c0, "Starting codeword, hex (default zero)");
  smp->add_flag("--min-weight", o.min_weight, "Draw a uniform minimum-weight codeword instead");
  smp->add_option("--seed", o.seed, "RNG seed")->default_val(0);
  add_output_options(smp, o);

  auto* rec = app.add_subcommand("recover", "Recover the message of a codeword");
  add_code_options(rec, o);
  rec->add_option("--codeword", o.codeword, "Codeword, hex")->required();
  add_output_options(rec, o);

  auto* rep = app.add_subcommand("replay", "Rerun a manifest and compare output hashes");
  rep->add_option("manifest", o.replay_path, "Manifest JSON")->required();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("rmenum");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (rep->parsed()) return cmd_replay(o, out, err);

  Sink sink;
  sink.out = &out;
  sink.err = &err;
  sink.capture = capture;
  sink.out_path = o.out;
  sink.manifest_path = o.manifest;
  sink.manifest.tool_version = tool_version();
  sink.manifest.argv = args;

  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  if (est->parsed()) {
    sink.manifest.command = "estimate";
    code = cmd_estimate(o, *est, sink);
  } else if (spc->parsed()) {
    sink.manifest.command = "spectrum";
    code = cmd_spectrum(o, *spc, sink);
  } else if (ex->parsed()) {
    sink.manifest.command = "exact";
    code = cmd_exact(o, sink);
  } else if (mw->parsed()) {
    sink.manifest.command = "macwilliams";
    code = cmd_macwilliams(o, *mw, sink);
  } else if (smp->parsed()) {
    sink.manifest.command = "sample";
    code = cmd_sample(o, *smp, sink);
  } else if (rec->parsed()) {
    sink.manifest.command = "recover";
    code = cmd_recover(o, sink);
  }
  sink.manifest.wallclock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  sink.finish();
  return code;
}

int guarded(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::map<std::string, std::string>* capture) {
  try {
    return dispatch(args, out, err, capture);
  } catch (const CLI::Error& e) {
    err << "rmenum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceCapExceeded& e) {
    err << "rmenum: resource cap exceeded: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "rmenum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "rmenum: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "rmenum: bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "rmenum: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return guarded(args, out, err, nullptr);
}

int run_captured(const std::vector<std::string>& args, std::map<std::string, std::string>& outputs,
                 std::ostream& err) {
  std::ostringstream discard;
  return guarded(args, discard, err, &outputs);
}

}  // namespace rmenum::cli
