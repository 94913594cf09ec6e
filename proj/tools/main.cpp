/*
 xormc -- hashing-based approximate model counting and almost-uniform sampling

 Copyright (c) 2026, the xormc authors. All rights reserved.

 Permission is hereby granted, free of charge, to any person obtaining a copy
 of this software and associated documentation files (the "Software"), to deal
 in the Software without restriction, including without limitation the rights
 to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
 copies of the Software, and to permit persons to whom the Software is
 furnished to do so, subject to the following conditions:

 The above copyright notice and this permission notice shall be included in
 all copies or substantial portions of the Software.

 THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
 IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
 FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
 AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
 LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
 OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
 THE SOFTWARE.
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "xormc/counter.h"
#include "xormc/dimacs.h"
#include "xormc/indsupport.h"
#include "xormc/oracle.h"
#include "xormc/sampler.h"
#include "xormc/solver.h"
#include "xormc/weighted.h"

using json = nlohmann::ordered_json;
using namespace xormc;

namespace {

// Exit codes: 0 success, 1 usage, 2 parse error, 3 resource or failure budget.
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_parse = 2;
constexpr int exit_resource = 3;

struct CommonOpts {
  std::string input;
  std::string format = "text";
  uint64_t seed = 0;
  bool seed_given = false;
  double epsilon = 0.0;
  double delta = 0.2;
  uint64_t samples = 1;
  std::string mode = "single";
  uint32_t workers = 1;
  bool use_mis = false;
  uint32_t precision = 8;
  uint32_t cap = default_oracle_cap;
};

uint64_t resolve_seed(CommonOpts& opts) {
  if (!opts.seed_given) {
    std::random_device rd;
    opts.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  return opts.seed;
}

CnfFormula load_formula(const std::string& path) {
  if (path == "-") return parse_dimacs(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'", 0);
  return parse_dimacs(in);
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("input", opts.input, "DIMACS CNF input file, or - for stdin")
      ->required();
  cmd->add_option("--format", opts.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", opts.seed, "Random seed (echoed; randomized when absent)")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
}

std::string witness_text(const ProjectedWitness& w) { return w.to_dimacs_string(); }

json witness_json(const ProjectedWitness& w) {
  json arr = json::array();
  for (const Lit l : w.lits) arr.push_back(l.to_dimacs());
  return arr;
}

void emit(const json& doc, const std::string& format, const std::string& text) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string ind_line(const std::vector<Var>& vars) {
  std::string out = "c ind";
  for (const Var v : vars) out += " " + std::to_string(v);
  out += " 0";
  return out;
}

std::vector<Var> effective_sampling_set(const CnfFormula& f, bool use_mis,
                                        std::vector<Var>* minimized_out) {
  std::vector<Var> s = f.sampling_or_support();
  if (use_mis) {
    s = minimize_support(f, s);
    if (minimized_out) *minimized_out = s;
  }
  return s;
}

int cmd_count(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  std::vector<Var> minimized;
  const std::vector<Var> s = effective_sampling_set(f, opts.use_mis, &minimized);
  Rng rng(seed);
  const CountEstimate est = approx_count(f, s, opts.epsilon, opts.delta, rng);

  json doc;
  doc["command"] = "count";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["epsilon"] = opts.epsilon;
  doc["delta"] = opts.delta;
  doc["pivot"] = est.params.pivot;
  doc["rounds_requested"] = est.params.rounds;
  doc["sampling_set_size"] = s.size();
  doc["use_mis"] = opts.use_mis;
  json rounds = json::array();
  for (const auto& r : est.round_outcomes) {
    if (r) {
      rounds.push_back(json{{"m", r->m}, {"cells", r->cell_count}});
    } else {
      rounds.push_back(nullptr);
    }
  }
  doc["rounds"] = rounds;
  doc["failed_rounds"] = est.failed_rounds();
  doc["exact"] = est.exact;
  doc["estimate"] = est.value.to_string();

  std::ostringstream text;
  text << "command: count\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "epsilon: " << opts.epsilon << "\n";
  text << "delta: " << opts.delta << "\n";
  text << "pivot: " << est.params.pivot << "\n";
  text << "rounds-requested: " << est.params.rounds << "\n";
  text << "sampling-set-size: " << s.size() << "\n";
  if (opts.use_mis) text << ind_line(minimized) << "\n";
  size_t i = 0;
  for (const auto& r : est.round_outcomes) {
    text << "round " << i++ << ": ";
    if (r) {
      text << "m=" << r->m << " cells=" << r->cell_count << "\n";
    } else {
      text << "fail\n";
    }
  }
  text << "failed-rounds: " << est.failed_rounds() << "\n";
  text << "exact: " << (est.exact ? "yes" : "no") << "\n";
  text << "estimate: " << est.value.to_string() << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_sample(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  std::vector<Var> minimized;
  const std::vector<Var> s = effective_sampling_set(f, opts.use_mis, &minimized);
  const SampleMode mode = opts.mode == "multi" ? SampleMode::multi : SampleMode::single;
  const SampleBatch batch =
      sample_parallel(f, s, opts.epsilon, opts.samples, opts.workers, seed, mode);

  json doc;
  doc["command"] = "sample";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["epsilon"] = opts.epsilon;
  doc["mode"] = opts.mode;
  doc["requested"] = batch.requested;
  doc["delivered"] = batch.witnesses.size();
  doc["exact_mode"] = batch.exact_mode;
  doc["failed_rounds"] = batch.failed_rounds;
  doc["sampling_set_size"] = batch.sampling_set.size();
  doc["use_mis"] = opts.use_mis;
  json window = json::array();
  for (const uint32_t m : batch.window) window.push_back(m);
  doc["window"] = window;
  json ws = json::array();
  for (const auto& w : batch.witnesses) ws.push_back(witness_json(w));
  doc["witnesses"] = ws;

  std::ostringstream text;
  text << "command: sample\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "epsilon: " << opts.epsilon << "\n";
  text << "mode: " << opts.mode << "\n";
  text << "requested: " << batch.requested << "\n";
  text << "delivered: " << batch.witnesses.size() << "\n";
  text << "exact-mode: " << (batch.exact_mode ? "yes" : "no") << "\n";
  text << "failed-rounds: " << batch.failed_rounds << "\n";
  text << "window:";
  for (const uint32_t m : batch.window) text << " " << m;
  text << "\n";
  if (opts.use_mis) text << ind_line(minimized) << "\n";
  for (const auto& w : batch.witnesses) text << witness_text(w) << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_mis(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  const std::vector<Var> start = f.sampling_or_support();
  const std::vector<Var> result = minimize_support(f, start);

  json doc;
  doc["command"] = "mis";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["original_size"] = start.size();
  doc["minimized_size"] = result.size();
  json vars = json::array();
  for (const Var v : result) vars.push_back(v);
  doc["support"] = vars;

  std::ostringstream text;
  text << "command: mis\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "original-size: " << start.size() << "\n";
  text << "minimized-size: " << result.size() << "\n";
  text << ind_line(result) << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_wcount(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  const WeightedCnf w = WeightedCnf::from_formula(f, opts.precision);
  std::vector<Var> base = f.sampling_or_support();
  std::vector<Var> minimized;
  if (opts.use_mis) {
    base = minimize_support(f, base);
    minimized = base;
  }
  Rng rng(seed);
  const WeightedEstimate est = weighted_count(w, opts.epsilon, opts.delta, rng, base);
  const TiltBound tilt = tilt_bound(w);

  json doc;
  doc["command"] = "wcount";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["epsilon"] = opts.epsilon;
  doc["delta"] = opts.delta;
  doc["precision"] = opts.precision;
  doc["scale_log2"] = est.scale_log2;
  doc["use_mis"] = opts.use_mis;
  doc["reduced_estimate"] = est.raw.value.to_string();
  doc["exact"] = est.raw.exact;
  doc["failed_rounds"] = est.raw.failed_rounds();
  doc["weighted_estimate"] = est.value.to_decimal_string();
  doc["tilt_bound"] = tilt.infinite ? json("inf") : json(tilt.to_double());
  json errs = json::array();
  for (const auto& [lit, err] : w.rounding_errors) {
    errs.push_back(json{{"literal", lit.to_dimacs()}, {"error", err}});
  }
  doc["rounding_errors"] = errs;

  std::ostringstream text;
  text << "command: wcount\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "epsilon: " << opts.epsilon << "\n";
  text << "delta: " << opts.delta << "\n";
  text << "precision: " << opts.precision << "\n";
  text << "scale-log2: " << est.scale_log2 << "\n";
  if (opts.use_mis) text << ind_line(minimized) << "\n";
  for (const auto& [lit, err] : w.rounding_errors) {
    text << "rounding-error: literal " << lit.to_dimacs() << " " << err << "\n";
  }
  text << "reduced-estimate: " << est.raw.value.to_string() << "\n";
  text << "exact: " << (est.raw.exact ? "yes" : "no") << "\n";
  text << "failed-rounds: " << est.raw.failed_rounds() << "\n";
  if (tilt.infinite) {
    text << "tilt-bound: inf\n";
  } else {
    text << "tilt-bound: " << tilt.to_double() << "\n";
  }
  text << "weighted-estimate: " << est.value.to_decimal_string() << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_wsample(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  const WeightedCnf w = WeightedCnf::from_formula(f, opts.precision);
  const SampleMode mode = opts.mode == "multi" ? SampleMode::multi : SampleMode::single;
  Rng rng(seed);
  const SampleBatch batch = weighted_sample(w, opts.epsilon, opts.samples, rng, mode);
  const ReductionResult red = reduce_wmc_to_umc(w);

  json doc;
  doc["command"] = "wsample";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["epsilon"] = opts.epsilon;
  doc["mode"] = opts.mode;
  doc["precision"] = opts.precision;
  doc["scale_log2"] = red.scale_log2;
  doc["requested"] = batch.requested;
  doc["delivered"] = batch.witnesses.size();
  doc["exact_mode"] = batch.exact_mode;
  doc["failed_rounds"] = batch.failed_rounds;
  json window = json::array();
  for (const uint32_t m : batch.window) window.push_back(m);
  doc["window"] = window;
  json ws = json::array();
  for (const auto& pw : batch.witnesses) ws.push_back(witness_json(pw));
  doc["witnesses"] = ws;

  std::ostringstream text;
  text << "command: wsample\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "epsilon: " << opts.epsilon << "\n";
  text << "mode: " << opts.mode << "\n";
  text << "precision: " << opts.precision << "\n";
  text << "scale-log2: " << red.scale_log2 << "\n";
  text << "requested: " << batch.requested << "\n";
  text << "delivered: " << batch.witnesses.size() << "\n";
  text << "exact-mode: " << (batch.exact_mode ? "yes" : "no") << "\n";
  text << "failed-rounds: " << batch.failed_rounds << "\n";
  text << "window:";
  for (const uint32_t m : batch.window) text << " " << m;
  text << "\n";
  for (const auto& pw : batch.witnesses) text << witness_text(pw) << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_exact(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  const std::vector<Var> s = f.sampling_or_support();
  const uint64_t count = exact_count(f, s, opts.cap);
  const WeightedCnf w = WeightedCnf::from_formula(f, opts.precision);
  const bool weighted = !w.weights.empty();

  json doc;
  doc["command"] = "exact";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["cap"] = opts.cap;
  doc["sampling_set_size"] = s.size();
  doc["count"] = count;

  std::ostringstream text;
  text << "command: exact\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "cap: " << opts.cap << "\n";
  text << "sampling-set-size: " << s.size() << "\n";
  text << "count: " << count << "\n";
  if (weighted) {
    const Dyadic wc = exact_weighted_count(w, opts.cap);
    doc["weighted_count"] = wc.to_decimal_string();
    text << "weighted-count: " << wc.to_decimal_string() << "\n";
  }
  emit(doc, opts.format, text.str());
  return exit_ok;
}

int cmd_validate(CommonOpts& opts) {
  const CnfFormula f = load_formula(opts.input);
  const uint64_t seed = resolve_seed(opts);
  const std::vector<Var> s = f.sampling_or_support();
  const SolutionSet reference = enumerate_projections(f, s, opts.cap);
  if (reference.empty()) throw UnsatisfiableError("formula is unsatisfiable");

  const uint64_t n_samples =
      opts.samples > 0 ? opts.samples : 100 * static_cast<uint64_t>(reference.size());
  const SampleMode mode = opts.mode == "multi" ? SampleMode::multi : SampleMode::single;

  Rng rng(seed);
  const SampleBatch batch = sample(f, s, opts.epsilon, n_samples, rng, mode);
  const UniformityReport sampler_rep = uniformity_report(batch.witnesses, reference);

  Rng us_rng(Rng::derive(seed, 0x75u));
  const auto us = exact_uniform_sample(f, s, us_rng, batch.witnesses.size(), opts.cap);
  const UniformityReport us_rep = uniformity_report(us, reference);
  const ChiSquare two = two_sample_chi_square(sampler_rep.histogram, us_rep.histogram);

  const double alpha = 0.01;
  const bool rejected = two.p_value <= alpha;

  json doc;
  doc["command"] = "validate";
  doc["input"] = opts.input;
  doc["seed"] = seed;
  doc["epsilon"] = opts.epsilon;
  doc["mode"] = opts.mode;
  doc["solutions"] = reference.size();
  doc["samples"] = batch.witnesses.size();
  doc["exact_mode"] = batch.exact_mode;
  doc["sampler_gof_p_value"] = sampler_rep.chi2.p_value;
  doc["uniform_gof_p_value"] = us_rep.chi2.p_value;
  doc["two_sample_statistic"] = two.statistic;
  doc["two_sample_dof"] = two.dof;
  doc["two_sample_p_value"] = two.p_value;
  doc["freq_ratio"] = sampler_rep.ratio_infinite ? json("inf") : json(sampler_rep.freq_ratio);
  doc["alpha"] = alpha;
  doc["verdict"] = rejected ? "rejected" : "not-rejected";

  std::ostringstream text;
  text << "command: validate\n";
  text << "input: " << opts.input << "\n";
  text << "seed: " << seed << "\n";
  text << "epsilon: " << opts.epsilon << "\n";
  text << "mode: " << opts.mode << "\n";
  text << "solutions: " << reference.size() << "\n";
  text << "samples: " << batch.witnesses.size() << "\n";
  text << "exact-mode: " << (batch.exact_mode ? "yes" : "no") << "\n";
  text << "sampler-gof-p-value: " << sampler_rep.chi2.p_value << "\n";
  text << "uniform-gof-p-value: " << us_rep.chi2.p_value << "\n";
  text << "two-sample-statistic: " << two.statistic << "\n";
  text << "two-sample-dof: " << two.dof << "\n";
  text << "two-sample-p-value: " << two.p_value << "\n";
  if (sampler_rep.ratio_infinite) {
    text << "freq-ratio: inf\n";
  } else {
    text << "freq-ratio: " << sampler_rep.freq_ratio << "\n";
  }
  text << "alpha: " << alpha << "\n";
  text << "verdict: " << (rejected ? "rejected" : "not-rejected") << "\n";
  emit(doc, opts.format, text.str());
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xormc: hashing-based approximate model counting and sampling"};
  app.require_subcommand(1);

  CommonOpts count_opts;
  count_opts.epsilon = 0.8;
  auto* count = app.add_subcommand("count", "Approximately count solutions");
  add_common(count, count_opts);
  count->add_option("--epsilon", count_opts.epsilon, "Tolerance (default 0.8)");
  count->add_option("--delta", count_opts.delta, "Confidence complement (default 0.2)");
  count->add_flag("--use-mis", count_opts.use_mis,
                  "Minimize the sampling set before hashing");

  CommonOpts sample_opts;
  sample_opts.epsilon = 16.0;
  auto* smp = app.add_subcommand("sample", "Sample solutions almost uniformly");
  add_common(smp, sample_opts);
  smp->add_option("--epsilon", sample_opts.epsilon, "Tolerance (default 16)");
  smp->add_option("--samples", sample_opts.samples, "Number of samples")->required();
  smp->add_option("--mode", sample_opts.mode, "single or multi (default single)")
      ->check(CLI::IsMember({"single", "multi"}));
  smp->add_option("--workers", sample_opts.workers, "Worker threads (default 1)");
  smp->add_flag("--use-mis", sample_opts.use_mis,
                "Minimize the sampling set before hashing");

  CommonOpts mis_opts;
  auto* mis = app.add_subcommand("mis", "Minimize an independent support");
  add_common(mis, mis_opts);

  CommonOpts wcount_opts;
  wcount_opts.epsilon = 0.8;
  auto* wc = app.add_subcommand("wcount", "Approximately count with literal weights");
  add_common(wc, wcount_opts);
  wc->add_option("--epsilon", wcount_opts.epsilon, "Tolerance (default 0.8)");
  wc->add_option("--delta", wcount_opts.delta, "Confidence complement (default 0.2)");
  wc->add_option("--precision", wcount_opts.precision, "Dyadic weight bits (default 8)");
  wc->add_flag("--use-mis", wcount_opts.use_mis,
               "Minimize the original support before hashing");

  CommonOpts wsample_opts;
  wsample_opts.epsilon = 16.0;
  auto* ws = app.add_subcommand("wsample", "Sample proportionally to literal weights");
  add_common(ws, wsample_opts);
  ws->add_option("--epsilon", wsample_opts.epsilon, "Tolerance (default 16)");
  ws->add_option("--samples", wsample_opts.samples, "Number of samples")->required();
  ws->add_option("--mode", wsample_opts.mode, "single or multi (default single)")
      ->check(CLI::IsMember({"single", "multi"}));
  ws->add_option("--precision", wsample_opts.precision, "Dyadic weight bits (default 8)");

  CommonOpts exact_opts;
  auto* ex = app.add_subcommand("exact", "Exact counts by enumeration (desk scale)");
  add_common(ex, exact_opts);
  ex->add_option("--cap", exact_opts.cap, "Enumeration variable cap (default 20)");
  ex->add_option("--precision", exact_opts.precision, "Dyadic weight bits (default 8)");

  CommonOpts validate_opts;
  validate_opts.epsilon = 16.0;
  validate_opts.samples = 0;  // sentinel: default 100 * |solutions|
  auto* val = app.add_subcommand("validate", "Compare the sampler against exact uniform");
  add_common(val, validate_opts);
  val->add_option("--epsilon", validate_opts.epsilon, "Tolerance (default 16)");
  val->add_option("--samples", validate_opts.samples,
                  "Sample count (default 100 per solution)");
  val->add_option("--mode", validate_opts.mode, "single or multi (default single)")
      ->check(CLI::IsMember({"single", "multi"}));
  val->add_option("--cap", validate_opts.cap, "Enumeration variable cap (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  const auto started = std::chrono::steady_clock::now();
  int rc = exit_ok;
  try {
    if (count->parsed()) rc = cmd_count(count_opts);
    if (smp->parsed()) rc = cmd_sample(sample_opts);
    if (mis->parsed()) rc = cmd_mis(mis_opts);
    if (wc->parsed()) rc = cmd_wcount(wcount_opts);
    if (ws->parsed()) rc = cmd_wsample(wsample_opts);
    if (ex->parsed()) rc = cmd_exact(exact_opts);
    if (val->parsed()) rc = cmd_validate(validate_opts);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const UnsatisfiableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const FailureBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const AllRoundsFailedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  }
  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::cerr << "elapsed: " << elapsed << " s\n";
  return rc;
}
