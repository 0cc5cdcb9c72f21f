// commlab: batch experiment runner for the protocol laboratory.
// Subcommands: verify, sumequal, simulate, ghse, l0, probe. Every run is
// reproducible from (argv, --seed); records embed the config and build id.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <fstream>
#include <sstream>

#include "commlab/core/disjointness.hpp"
#include "commlab/core/error_measure.hpp"
#include "commlab/io/json_io.hpp"
#include "commlab/l0stream/embedding.hpp"
#include "commlab/l0stream/l0_sketch.hpp"
#include "commlab/numeric/analytics.hpp"
#include "commlab/numeric/primes.hpp"
#include "commlab/simulate/automaton.hpp"
#include "commlab/simulate/k_from_two.hpp"
#include "commlab/sumequal/distributions.hpp"
#include "commlab/sumequal/protocols.hpp"
#include "commlab/sumequal/rectangle.hpp"

#ifndef COMMLAB_BUILD_ID
#define COMMLAB_BUILD_ID "unknown"
#endif

namespace {

using namespace commlab;
using io::Json;

struct Output {
  std::string path;
  std::string format = "json";
  bool timestamps = false;

  void emit(Json record, const std::string& command, std::uint64_t seed) {
    record["config"] = command;
    record["seed"] = seed;
    record["build"] = COMMLAB_BUILD_ID;
    if (timestamps)
      record["unix_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::system_clock::now().time_since_epoch())
              .count();
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
      file.open(path, std::ios::app);
      out = &file;
    }
    if (format == "csv") {
      // Flat key=value columns, header-free; nested values JSON-encoded.
      bool first = true;
      for (auto& [key, value] : record.items()) {
        if (!first) *out << ',';
        first = false;
        *out << key << '=' << value.dump();
      }
      *out << '\n';
    } else {
      *out << record.dump() << '\n';
    }
  }
};

std::string joined_argv(int argc, char** argv) {
  std::ostringstream s;
  for (int i = 0; i < argc; ++i) s << (i ? " " : "") << argv[i];
  return s.str();
}

int run_verify(std::uint64_t seed, Output& out, const std::string& cmd) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    Json j;
    j["check"] = name;
    j["status"] = ok ? "pass" : "fail";
    out.emit(j, cmd, seed);
    if (!ok) ++failures;
  };

  using namespace commlab::core;
  using namespace commlab::numeric;
  using namespace commlab::sumequal;

  // Engine: parity chain and replay determinism.
  {
    auto f = FunctionTable::builtin("parity", 3);
    auto protocols = simulate::optimal_cut_protocols(f);
    auto a = simulate::det_stream_from_two_party(f, protocols);
    bool ok = true;
    std::vector<Value> point;
    for (std::uint64_t i = 0; i < 8; ++i) {
      f.decode_point(i, point);
      ok = ok && simulate::run_automaton(a, point) == f.eval(point);
    }
    check("stream-simulation-parity", ok);
  }
  {
    auto exact = sumequal_exact_protocol(3, 5);
    auto f = FunctionTable::builtin("sum-equal-mod-m", 3, 5);
    MeasureOptions opt;
    opt.exhaustive = true;
    auto r = measure_error(exact, f, InputPartition::singleton(3), opt);
    check("exact-protocol-zero-error", r.error_estimate == 0.0);
  }
  {
    auto fp = sumequal_fingerprint_protocol(4, FingerprintMode::mod(5), 0.1);
    bool ok = true;
    auto part = InputPartition::singleton(4);
    for (std::uint64_t s = 0; s < 200 && ok; ++s) {
      std::vector<Value> in{1, 2, 0, 2};  // sums to 0 mod 5
      ok = run_protocol(fp.protocol, part, in, derive_seed(seed, "v", s))
               .output == 1;
    }
    check("fingerprint-one-sided", ok);
  }
  check("binomial-shift-closed-form",
        binomial_shift_sd(4) == rat(6, 16) &&
            binomial_shift_sd(100) <= rat(1, 10));
  check("majority-bias-163-256",
        reductions::majority_bias_exact(9) == rat(163, 256));
  check("amplifier-plan-57-115", [] {
    auto plan = simulate::AmplifierPlan::for_simulation(1.0 / 3.0, 4);
    return plan.t == 57 && plan.copies == 115;
  }());
  {
    auto d = ExactDist::from_exact(
        {{0, rat(1, 2)}, {1, rat(3, 10)}, {2, rat(1, 5)}});
    auto comps = two_point_decompose(d);
    check("two-point-decomposition", comps.size() <= 6);
  }
  {
    auto s = direct_sum_sample(50, 3, 2000, seed);
    bool ok = true;
    try {
      s.verify();
    } catch (const CommlabError&) {
      ok = false;
    }
    check("direct-sum-rows-match-coins", ok);
  }
  {
    auto r = core::disjointness_demo(5, 40, DisjointnessCase::disjoint, seed);
    check("disjointness-demo",
          r.output == 0 && r.cost.total_bits == 4 && r.instance.promise_holds());
  }
  {
    l0stream::TurnstileStream s;
    s.dimension = 100;
    s.magnitude = 5;
    s.updates = {{0, 2}, {1, 1}, {0, -2}};
    check("exact-l0", l0stream::exact_l0(s) == 1);
  }
  {
    l0stream::EmbeddingPlan plan{2, 100, 0.1};
    check("embedding-plan-identity", plan.coordinate_count() == 10100);
  }
  Json summary;
  summary["failures"] = failures;
  out.emit(summary, cmd, seed);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"communication-protocol laboratory"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  const std::string cmdline = joined_argv(argc, argv);

  std::uint64_t seed = 42;
  std::uint64_t trials = 100000;
  Output out;
  app.add_option("--seed", seed, "master seed (default 42)");
  app.add_option("--trials", trials, "trial count (default 100000)");
  app.add_option("--format", out.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out.path, "append records to this file");
  app.add_flag("--timestamps", out.timestamps, "include wall-clock timestamps");

  auto* verify = app.add_subcommand("verify", "run the property battery");

  // sumequal: protocol error/cost experiments.
  auto* sumeq = app.add_subcommand("sumequal", "Sum-Equal protocol experiments");
  int se_k = 4;
  std::int64_t se_mod = 5, se_bound = 0, se_target = 0;
  double se_delta = 0.1;
  std::string se_protocol = "fingerprint";
  sumeq->add_option("--k", se_k, "players / arity");
  sumeq->add_option("--modulus", se_mod, "modulus m (mod mode)");
  sumeq->add_option("--integer-bound", se_bound,
                    "magnitude bound (switches to integer mode)");
  sumeq->add_option("--target", se_target, "target sum (default 0)");
  sumeq->add_option("--delta", se_delta, "error budget");
  sumeq->add_option("--protocol", se_protocol, "exact | fingerprint")
      ->check(CLI::IsMember({"exact", "fingerprint"}));

  // simulate: stream / kfrom2 / amplify.
  auto* sim = app.add_subcommand("simulate", "protocol transformations");
  std::string sim_op = "kfrom2";
  int sim_k = 8, sim_m = 4;
  std::int64_t sim_p = 3;
  double sim_delta = 0.1, sim_epsilon = 0.0;
  sim->add_option("--op", sim_op, "stream | kfrom2 | amplify")
      ->check(CLI::IsMember({"stream", "kfrom2", "amplify"}));
  sim->add_option("--k", sim_k, "players");
  sim->add_option("--p", sim_p, "prime modulus");
  sim->add_option("--m", sim_m, "stream length (op=stream)");
  sim->add_option("--delta", sim_delta, "base error");
  sim->add_option("--epsilon", sim_epsilon,
                  "amplification target (op=amplify; 0 = simulation schedule)");

  // ghse: reduction pipeline.
  auto* ghse = app.add_subcommand("ghse", "gap-Hamming-of-Sum-Equal reduction");
  long gh_nprime = 8100, gh_ndprime = 9, gh_a = 2;
  int gh_k = 8;
  ghse->add_option("--nprime", gh_nprime, "n' (GHSE coordinates)");
  ghse->add_option("--ndprime", gh_ndprime, "n'' (Sum-Equal copies, odd)");
  ghse->add_option("--k", gh_k, "players");
  ghse->add_option("--a", gh_a, "magnitude bound");

  // l0: estimation and the embedding.
  auto* l0 = app.add_subcommand("l0", "strict-turnstile L0 operations");
  std::string l0_op = "estimate", l0_stream, l0_out_stream;
  double l0_eps = 0.1, l0_delta = 1.0 / 3.0;
  int l0_layers = 3;
  long long l0_n = 900;
  l0->add_option("--op", l0_op, "estimate | exact | embed")
      ->check(CLI::IsMember({"estimate", "exact", "embed"}));
  l0->add_option("--stream", l0_stream, "stream file (header 'N M strict')");
  l0->add_option("--epsilon", l0_eps, "relative accuracy");
  l0->add_option("--delta", l0_delta, "failure probability");
  l0->add_option("--layers", l0_layers, "embedding layers t");
  l0->add_option("--n", l0_n, "coordinates per layer");
  l0->add_option("--write-stream", l0_out_stream,
                 "op=embed: write the embedded stream here");

  // probe: numeric oracles.
  auto* probe = app.add_subcommand("probe", "numeric oracles");
  std::string probe_op = "binomial-shift";
  long pr_t = 100, pr_p = 5;
  probe->add_option("--op", probe_op,
                    "binomial-shift | smoothing | decompose | rectangle")
      ->check(CLI::IsMember(
          {"binomial-shift", "smoothing", "decompose", "rectangle"}));
  probe->add_option("--t", pr_t, "count parameter");
  probe->add_option("--p", pr_p, "prime modulus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    using namespace commlab::core;
    using namespace commlab::sumequal;

    if (*verify) return run_verify(seed, out, cmdline);

    if (*sumeq) {
      const bool integer = se_bound > 0;
      auto f = integer ? FunctionTable{} : FunctionTable::builtin(
                                               "sum-equal-mod-m", se_k, se_mod);
      Json j;
      if (se_protocol == "exact") {
        if (integer) throw ConfigError("exact protocol needs --modulus");
        auto p = sumequal_exact_protocol(se_k, se_mod, se_target);
        MeasureOptions opt;
        opt.exhaustive = true;
        opt.seed = seed;
        auto r = measure_error(p, f, InputPartition::singleton(
                                         static_cast<std::size_t>(se_k)),
                               opt);
        j["protocol"] = p.name;
        j["report"] = io::to_json(r);
      } else {
        auto mode = integer ? FingerprintMode::integers(se_bound)
                            : FingerprintMode::mod(se_mod);
        auto fp = sumequal_fingerprint_protocol(se_k, mode, se_delta, se_target);
        j["protocol"] = fp.protocol.name;
        j["primes_in_range"] = fp.family->primes().size();
        j["prime_range"] = {fp.family->lo(), fp.family->hi()};
        j["digest_bits"] = fp.digest_bits;
        if (!integer) {
          MeasureOptions opt;
          opt.trials = trials;
          opt.seed = seed;
          opt.threads = 2;
          auto r = measure_error(fp.protocol, f,
                                 InputPartition::singleton(
                                     static_cast<std::size_t>(se_k)),
                                 opt);
          j["report"] = io::to_json(r);
        }
      }
      out.emit(j, cmdline, seed);
      return 0;
    }

    if (*sim) {
      Json j;
      if (sim_op == "amplify") {
        auto plan = sim_epsilon > 0
                        ? simulate::AmplifierPlan::for_target(sim_delta,
                                                              sim_epsilon)
                        : simulate::AmplifierPlan::for_simulation(sim_delta,
                                                                  sim_k);
        j["plan"] = io::to_json(plan);
        j["exact_tail"] = numeric::to_double(simulate::majority_error_exact(
            plan.t, numeric::Rat(plan.delta)));
      } else if (sim_op == "stream") {
        auto f = FunctionTable::builtin("sum-equal-mod-m", sim_m,
                                        static_cast<Value>(sim_p));
        auto a = simulate::det_stream_from_two_party(
            f, simulate::optimal_cut_protocols(f));
        std::vector<Value> point;
        bool exact = true;
        for (std::uint64_t i = 0; i < f.domain_size(); ++i) {
          f.decode_point(i, point);
          exact = exact && simulate::run_automaton(a, point) == f.eval(point);
        }
        j["memory_bits"] = a.memory_bits;
        j["working_bits"] = a.working_bits;
        j["exact_on_domain"] = exact;
      } else {
        auto f = FunctionTable::builtin("sum-equal-mod-m", sim_k,
                                        static_cast<Value>(sim_p));
        auto fp = sumequal_fingerprint_protocol(
            sim_k, FingerprintMode::mod(static_cast<Value>(sim_p)), sim_delta,
            0, 2);
        auto mu = ProductDist::uniform_for(f);
        auto simr = simulate::k_from_two_simulation(fp.protocol, f, mu, sim_k,
                                                    sim_delta);
        MeasureOptions opt;
        opt.trials = trials;
        opt.seed = seed;
        opt.threads = 2;
        auto r = measure_error(simr.protocol, f,
                               InputPartition::singleton(
                                   static_cast<std::size_t>(sim_k)),
                               opt);
        j["plan"] = io::to_json(simr.plan);
        j["report"] = io::to_json(r);
        j["fallbacks"] = simr.stats->fallbacks.load();
        j["max_message_bound"] =
            simr.amplified.declared_max_message_bits +
            bits_for_count(static_cast<std::uint64_t>(sim_k));
      }
      out.emit(j, cmdline, seed);
      return 0;
    }

    if (*ghse) {
      const std::int64_t window =
          gh_k * gh_a + static_cast<std::int64_t>(numeric::lcm_upto_u64(gh_a));
      long correct_equal = 0, total_equal = 0;
      long correct_unequal = 0, total_unequal = 0;
      reductions::BiasReport report;
      const long gap = static_cast<long>(std::ceil(std::sqrt(
          static_cast<double>(gh_nprime))));
      for (std::uint64_t t = 0; t < trials; ++t) {
        auto s = aug_index_sample(gh_k, gh_ndprime, gh_a,
                                  derive_seed(seed, "sample", t));
        reductions::HashGrid grid{derive_seed(seed, "grid", t), -window,
                                  window};
        auto red = reductions::augindex_to_ghse(s, gh_nprime, grid);
        report = red.report;
        auto d = reductions::ghse_decide_from_reduction(red.m, red.m_prime,
                                                        gap);
        const bool equal = s.coin[static_cast<std::size_t>(s.queried)] == 0;
        const int want = equal ? 1 : 0;
        (equal ? total_equal : total_unequal)++;
        if (d.label == want) (equal ? correct_equal : correct_unequal)++;
      }
      Json j;
      j["bias_report"] = io::to_json(report);
      j["gap"] = gap;
      j["equal_rate"] = total_equal ? static_cast<double>(correct_equal) /
                                          static_cast<double>(total_equal)
                                    : 0.0;
      j["unequal_rate"] = total_unequal
                              ? static_cast<double>(correct_unequal) /
                                    static_cast<double>(total_unequal)
                              : 0.0;
      j["trials"] = trials;
      out.emit(j, cmdline, seed);
      return 0;
    }

    if (*l0) {
      Json j;
      if (l0_op == "embed") {
        l0stream::EmbeddingPlan plan{l0_layers, l0_n,
                                     1.0 / std::sqrt(static_cast<double>(l0_n))};
        plan.validate();
        SeedStream rng(derive_seed(seed, "layers"));
        std::vector<l0stream::LayerBits> layers;
        std::vector<long long> fvals;
        for (int i = 0; i < plan.layers; ++i) {
          auto s = aug_index_sample(8, 1, 2, rng.next_u64());
          reductions::HashGrid grid{rng.next_u64(), -20, 20};
          auto red = reductions::augindex_to_ghse(
              s, plan.n, grid, /*allow_outside_regime=*/plan.n < 900);
          layers.push_back(l0stream::layer_from_reduction(red));
          fvals.push_back(l0stream::layer_advantage(layers.back()));
        }
        j["plan_n_total"] = plan.coordinate_count();
        j["stream_dimension"] = plan.stream_dimension();
        j["layer_advantages"] = fvals;
        j["exact_l0"] = l0stream::embedded_exact_l0(layers, plan);
        if (!l0_out_stream.empty()) {
          auto stream = l0stream::embed_ghse_layers(layers, plan);
          stream.save_file(l0_out_stream);
          j["stream_file"] = l0_out_stream;
        }
      } else {
        if (l0_stream.empty()) throw ConfigError("--stream is required");
        auto s = l0stream::TurnstileStream::load_file(l0_stream);
        j["exact"] = l0stream::exact_l0(s);
        if (l0_op == "estimate") {
          auto e = l0stream::l0_estimate(s, l0_eps, l0_delta, seed);
          j["estimate"] = e.estimate;
          j["space_bits"] = e.space_bits;
          j["sketches"] = e.sketches;
        }
      }
      out.emit(j, cmdline, seed);
      return 0;
    }

    if (*probe) {
      Json j;
      if (probe_op == "binomial-shift") {
        auto sd = numeric::binomial_shift_sd(pr_t);
        j["t"] = pr_t;
        j["sd"] = numeric::rat_str(sd);
        j["sd_value"] = numeric::to_double(sd);
      } else if (probe_op == "smoothing") {
        auto sd = numeric::smoothing_check_sd(pr_t, {{0, 1}},
                                              static_cast<Value>(pr_p));
        j["t"] = pr_t;
        j["p"] = pr_p;
        j["sd_value"] = numeric::to_double(sd);
      } else if (probe_op == "decompose") {
        SeedStream rng(derive_seed(seed, "probe"));
        std::vector<std::pair<numeric::Value, numeric::Rat>> pmf;
        std::vector<long> w(8);
        long total = 0;
        for (auto& v : w) {
          v = 1 + static_cast<long>(rng.uniform_below(32));
          total += v;
        }
        for (auto& v : w)
          if (2 * v > total) v = total / 2;
        total = 0;
        for (long v : w) total += v;
        for (std::size_t i = 0; i < w.size(); ++i)
          pmf.emplace_back(static_cast<numeric::Value>(i),
                           numeric::rat(w[i], total));
        auto d = numeric::ExactDist::from_weights(std::move(pmf));
        auto comps = numeric::two_point_decompose(d);
        j["components"] = comps.size();
        j["support"] = 8;
      } else {
        auto rect = Rectangle::pin_value(3, 2, static_cast<Value>(pr_p), 0, 0,
                                         1);
        auto r = rectangle_conditional_probe(3, 2, static_cast<Value>(pr_p),
                                             rect, {0, 1});
        j["mass"] = numeric::rat_str(r.mass);
        Json sds = Json::array();
        for (auto& sd : r.prefix_sd) sds.push_back(numeric::to_double(sd));
        j["prefix_sd"] = sds;
      }
      out.emit(j, cmdline, seed);
      return 0;
    }
  } catch (const Refusal& e) {
    Json j;
    j["error"] = "refusal";
    j["reason"] = e.reason;
    j["message"] = e.what();
    std::cerr << j.dump() << '\n';
    return 3;
  } catch (const CommlabError& e) {
    Json j;
    j["error"] = "failure";
    j["message"] = e.what();
    std::cerr << j.dump() << '\n';
    return 1;
  }
  return 2;
}
