// Batch front door: replay update streams through any engine, evaluate
// oracles at checkpoints, diff engines against oracles, generate streams.
// Exit codes: 0 ok, 2 malformed stream, 3 precondition violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "densestream/directed_density.hpp"
#include "densestream/dynamic_density.hpp"
#include "densestream/dynamic_streaming.hpp"
#include "densestream/generators.hpp"
#include "densestream/oracles.hpp"
#include "densestream/streaming_oneshot.hpp"
#include "densestream/stream_io.hpp"

using nlohmann::json;
using namespace densestream;

namespace {

struct CliOptions {
  std::string mode = "full";
  std::string algo = "flow";
  double epsilon = 0.1;
  std::string alpha = "auto";
  double c = 8.0;
  double scale = 1.0;
  uint64_t seed = 1;
  std::string out;
  std::string input;
  int checkpoint_every = 0;
  int trials = 0;
  long long oracle_cap = 500;
};

Config make_config(const CliOptions& o) {
  Config cfg;
  cfg.epsilon = o.epsilon;
  cfg.alpha = o.alpha == "auto" ? 0 : std::stod(o.alpha);
  cfg.c = o.c;
  cfg.scale = o.scale;
  cfg.seed = o.seed;
  if (const char* env = std::getenv("DENSESTREAM_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);
  return cfg;
}

std::ostream& open_out(const CliOptions& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out);
  if (!file) throw std::runtime_error("cannot open output file: " + o.out);
  return file;
}

// Replays events, invoking `checkpoint(step)` at every '?' and every
// checkpoint_every-th update.
template <typename Apply, typename Checkpoint>
void replay(const StreamFile& s, int checkpoint_every, Apply&& apply,
            Checkpoint&& checkpoint) {
  long long step = 0;
  for (const auto& e : s.events) {
    if (e.kind == EventKind::Query) {
      checkpoint(step);
      continue;
    }
    apply(e);
    ++step;
    if (checkpoint_every > 0 && step % checkpoint_every == 0) checkpoint(step);
  }
}

int cmd_run(const CliOptions& opt) {
  StreamFile s = parse_stream_file(opt.input);
  if (s.directed && opt.mode != "directed")
    throw ParseError(1, "directed stream requires --mode directed");
  Config cfg = make_config(opt);
  std::ofstream file;
  std::ostream& out = open_out(opt, file);

  if (opt.mode == "full") {
    FullDynamicEngine eng(s.n, cfg);
    replay(
        s, opt.checkpoint_every, [&](const UpdateEvent& e) { eng.apply(e); },
        [&](long long step) {
          json rec{{"step", step},
                   {"m", eng.m()},
                   {"output", eng.query_value()},
                   {"k_prime", eng.k_prime()},
                   {"work_total", eng.ledger().total}};
          out << rec.dump() << "\n";
        });
  } else if (opt.mode == "oneshot") {
    OneshotEngine eng(s.n, cfg);
    long long step = 0;
    for (const auto& e : s.events) {
      if (e.kind == EventKind::Query) continue;  // output only at end
      eng.ingest(e);
      ++step;
    }
    auto res = eng.finalize();
    json rec{{"step", step}, {"m", eng.edge_count()}, {"output", res.estimate}};
    out << rec.dump() << "\n";
  } else if (opt.mode == "stream") {
    CombinedEngine eng(s.n, cfg);
    replay(
        s, opt.checkpoint_every, [&](const UpdateEvent& e) { eng.apply(e); },
        [&](long long step) {
          json rec{{"step", step},
                   {"regime",
                    eng.regime() == Regime::Dense ? "dense" : "sparse"},
                   {"m", eng.m()},
                   {"output", eng.query()},
                   {"work_total", eng.ledger_total()},
                   {"sampler_failures", eng.sampler_failures()}};
          out << rec.dump() << "\n";
        });
  } else if (opt.mode == "directed") {
    DirectedEngine eng(s.n, cfg);
    replay(
        s, opt.checkpoint_every, [&](const UpdateEvent& e) { eng.apply(e); },
        [&](long long step) {
          json rec{{"step", step}, {"m", eng.m()}, {"output", eng.query()}};
          out << rec.dump() << "\n";
        });
  } else {
    throw CLI::ValidationError("--mode", "unknown mode " + opt.mode);
  }
  return 0;
}

int cmd_oracle(const CliOptions& opt) {
  StreamFile s = parse_stream_file(opt.input);
  std::ofstream file;
  std::ostream& out = open_out(opt, file);

  if (opt.algo == "directed") {
    DirectedDynamicGraph g(s.n);
    replay(
        s, opt.checkpoint_every, [&](const UpdateEvent& e) { g.apply(e); },
        [&](long long step) {
          auto res = oracle::exact_directed(g);
          json rec{{"step", step},
                   {"m", g.m()},
                   {"density", res.density},
                   {"witness_x", res.witness_x.size()},
                   {"witness_y", res.witness_y.size()}};
          out << rec.dump() << "\n";
        });
    return 0;
  }

  DynamicGraph g(s.n);
  replay(
      s, opt.checkpoint_every, [&](const UpdateEvent& e) { g.apply(e); },
      [&](long long step) {
        oracle::ExactResult res;
        if (opt.algo == "flow")
          res = oracle::exact_undirected(g, static_cast<NodeId>(opt.oracle_cap));
        else if (opt.algo == "brute")
          res = oracle::exact_undirected_bruteforce(g);
        else if (opt.algo == "charikar")
          res = oracle::charikar_peel(g);
        else
          throw CLI::ValidationError("--algo", "unknown oracle " + opt.algo);
        json rec{{"step", step},
                 {"m", g.m()},
                 {"density", res.density.value()},
                 {"density_exact", res.density.str()},
                 {"witness_size", res.witness.size()}};
        out << rec.dump() << "\n";
      });
  return 0;
}

int cmd_compare(const CliOptions& opt) {
  StreamFile s = parse_stream_file(opt.input);
  Config cfg = make_config(opt);
  std::ofstream file;
  std::ostream& out = open_out(opt, file);

  if (opt.mode == "oneshot") {
    // Trial campaign: the estimate is randomized, the optimum is not.
    int trials = opt.trials > 0 ? opt.trials : 1;
    DynamicGraph g(s.n);
    for (const auto& e : s.events) g.apply(e);
    double optimum =
        oracle::exact_undirected(g, static_cast<NodeId>(opt.oracle_cap))
            .density.value();
    double alpha = cfg.resolved_alpha(Mode::Oneshot);
    double bound = 2 * alpha * std::pow(1 + cfg.epsilon, 3);
    int failures = 0;
    double max_ratio = 0;
    for (int t = 0; t < trials; ++t) {
      Config trial_cfg = cfg;
      trial_cfg.seed = mix64(cfg.seed, static_cast<uint64_t>(t));
      OneshotEngine eng(s.n, trial_cfg);
      for (const auto& e : s.events) eng.ingest(e);
      double est = eng.finalize_estimate();
      double ratio =
          est > 0 ? optimum / est
                  : (optimum > 0 ? std::numeric_limits<double>::infinity()
                                 : 1.0);
      bool ok = est <= optimum + 1e-9 && ratio <= bound + 1e-9;
      if (!ok) ++failures;
      max_ratio = std::max(max_ratio, ratio);
      json rec{{"trial", t},
               {"opt", optimum},
               {"output", est},
               {"ratio", ratio},
               {"pass", ok}};
      out << rec.dump() << "\n";
    }
    json summary{{"summary", true},
                 {"trials", trials},
                 {"failures", failures},
                 {"max_ratio", max_ratio},
                 {"bound", bound},
                 {"failure_budget", cfg.failure_budget},
                 {"within_budget",
                  failures <= cfg.failure_budget * trials}};
    out << summary.dump() << "\n";
    return 0;
  }

  DynamicGraph g(s.n);
  std::unique_ptr<FullDynamicEngine> full;
  std::unique_ptr<CombinedEngine> stream;
  if (opt.mode == "full")
    full = std::make_unique<FullDynamicEngine>(s.n, cfg);
  else if (opt.mode == "stream")
    stream = std::make_unique<CombinedEngine>(s.n, cfg);
  else
    throw CLI::ValidationError("--mode",
                               "compare supports full|stream|oneshot");

  double alpha = cfg.resolved_alpha(full ? Mode::Full : Mode::Stream);
  double bound = 2 * alpha * std::pow(1 + cfg.epsilon, 3);
  double max_ratio = 0;
  long long checkpoints = 0, failures = 0;
  replay(
      s, opt.checkpoint_every,
      [&](const UpdateEvent& e) {
        g.apply(e);
        if (full) full->apply(e);
        if (stream) stream->apply(e);
      },
      [&](long long step) {
        double output = full ? full->query_value() : stream->query();
        double optimum =
            oracle::exact_undirected(g, static_cast<NodeId>(opt.oracle_cap))
                .density.value();
        double ratio =
            output > 0 ? optimum / output
                       : (optimum > 0 ? std::numeric_limits<double>::infinity()
                                      : 1.0);
        bool ok = output <= optimum + 1e-9 && ratio <= bound + 1e-9;
        ++checkpoints;
        if (!ok) ++failures;
        max_ratio = std::max(max_ratio, ratio);
        json rec{{"step", step},
                 {"opt", optimum},
                 {"output", output},
                 {"ratio", ratio},
                 {"pass", ok}};
        out << rec.dump() << "\n";
      });
  if (checkpoints > 0) {
    json summary{{"summary", true},
                 {"checkpoints", checkpoints},
                 {"failures", failures},
                 {"max_ratio", max_ratio},
                 {"bound", bound},
                 {"failure_budget", cfg.failure_budget},
                 {"within_budget",
                  failures <= cfg.failure_budget * checkpoints}};
    out << summary.dump() << "\n";
  }
  return 0;
}

int cmd_gen(const std::string& kind, const gen::GenParams& params,
            const std::string& out_path) {
  StreamFile s = gen::generate(kind, params);
  if (out_path.empty()) {
    write_stream(std::cout, s);
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    write_stream(f, s);
  }
  return 0;
}

int cmd_dump(const CliOptions& opt, double alpha, double d, int L) {
  StreamFile s = parse_stream_file(opt.input);
  DynamicGraph g(s.n);
  for (const auto& e : s.events) g.apply(e);
  if (L <= 0) L = levels_undirected(s.n, opt.epsilon);
  auto dec = build_peeling(g, rational_from_double(alpha),
                           rational_from_double(d), L);
  std::ofstream file;
  std::ostream& out = open_out(opt, file);
  out << decomposition_to_json(dec) << "\n";
  return 0;
}

int cmd_diag(const CliOptions& opt, const std::string& what) {
  StreamFile s = parse_stream_file(opt.input);
  Config cfg = make_config(opt);
  std::ofstream file;
  std::ostream& out = open_out(opt, file);
  json rec;
  if (what == "sparse") {
    SparseRecoverer sr(s.n, sparse_params(s.n, cfg), cfg.seed, cfg.hash_mode,
                       cfg.sketch_subs);
    for (const auto& e : s.events) {
      if (e.kind == EventKind::Query) continue;
      sr.update(edge_key(e.u, e.v, s.n), e.kind == EventKind::Insert ? 1 : -1);
    }
    rec = json{{"what", "sparse"},
               {"buckets", sr.buckets()},
               {"reps", sr.reps()},
               {"recovered", sr.recovered_size()},
               {"failures", sr.fail_count()},
               {"occupancy", sr.occupancy_histogram()}};
  } else if (what == "dense") {
    double a = cfg.resolved_alpha(Mode::Stream);
    long long buckets = dense_buckets(1, s.n, cfg.epsilon, a, cfg);
    DenseSampler ds(s.n, buckets, cfg.seed, SamplerVariant::Sketch,
                    cfg.hash_mode, cfg.sketch_subs);
    for (const auto& e : s.events) {
      if (e.kind == EventKind::Query) continue;
      ds.update(edge_key(e.u, e.v, s.n), e.kind == EventKind::Insert ? 1 : -1);
    }
    rec = json{{"what", "dense"},
               {"buckets", ds.bucket_count()},
               {"sample_size", ds.sample_size()},
               {"failures", ds.fail_count()},
               {"occupancy", ds.occupancy_histogram()}};
  } else {
    throw CLI::ValidationError("--what", "expected sparse|dense");
  }
  out << rec.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "densestream: dynamic densest-subgraph estimation over update streams"};
  app.require_subcommand(1);

  CliOptions opt;
  gen::GenParams gp;
  std::string gen_kind = "churn";
  double dump_alpha = 1.0, dump_d = 1.0;
  int dump_L = 0;
  std::string diag_what = "sparse";

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    cmd->add_option("--epsilon", opt.epsilon, "approximation knob in (0,1)");
    cmd->add_option("--alpha", opt.alpha, "promotion slack, or 'auto'");
    cmd->add_option("--c", opt.c, "concentration constant");
    cmd->add_option("--scale", opt.scale, "desk-scale multiplier");
    cmd->add_option("--seed", opt.seed, "rng seed (env DENSESTREAM_SEED wins)");
    cmd->add_option("--out", opt.out, "output file (default stdout)");
    cmd->add_option("--checkpoint-every", opt.checkpoint_every,
                    "synthesize a '?' every N events");
    if (needs_input)
      cmd->add_option("stream", opt.input, "update-stream file")->required();
  };

  auto* run = app.add_subcommand("run", "replay a stream through an engine");
  run->add_option("--mode", opt.mode, "full|oneshot|stream|directed|oracle");
  run->add_option("--algo", opt.algo, "oracle algorithm (mode oracle)");
  add_common(run, true);

  auto* orc = app.add_subcommand("oracle", "evaluate an exact/greedy oracle");
  orc->add_option("--algo", opt.algo, "flow|brute|directed|charikar");
  orc->add_option("--cap", opt.oracle_cap, "node-count cap for exact oracles");
  add_common(orc, true);

  auto* cmp = app.add_subcommand("compare", "diff an engine against an oracle");
  cmp->add_option("--mode", opt.mode, "full|stream|oneshot");
  cmp->add_option("--trials", opt.trials, "seeded trials (mode oneshot)");
  cmp->add_option("--cap", opt.oracle_cap, "node-count cap for exact oracles");
  add_common(cmp, true);

  auto* gen_cmd = app.add_subcommand("gen", "generate a stream file");
  gen_cmd->add_option(
      "--kind", gen_kind,
      "erdos-renyi-dynamic|planted-clique|clique-buildup|churn");
  gen_cmd->add_option("--n", gp.n, "node count");
  gen_cmd->add_option("--k", gp.clique, "clique size");
  gen_cmd->add_option("--p", gp.p, "background edge probability");
  gen_cmd->add_option("--steps", gp.steps, "event count");
  gen_cmd->add_option("--target-m", gp.target_m, "steady-state edge count");
  gen_cmd->add_option("--checkpoint-every", gp.checkpoint_every,
                      "emit '?' every N events");
  gen_cmd->add_option("--seed", gp.seed, "rng seed");
  gen_cmd->add_option("--out", opt.out, "output file (default stdout)");

  auto* dump = app.add_subcommand("dump", "peel the final graph, emit JSON");
  dump->add_option("--alpha", dump_alpha, "promotion slack");
  dump->add_option("--d", dump_d, "density threshold");
  dump->add_option("--L", dump_L, "level count (default derived)");
  dump->add_option("--epsilon", opt.epsilon, "level-count knob");
  dump->add_option("--out", opt.out, "output file (default stdout)");
  dump->add_option("stream", opt.input, "update-stream file")->required();

  auto* diag = app.add_subcommand("diag", "sampler occupancy diagnostics");
  diag->add_option("--what", diag_what, "sparse|dense");
  add_common(diag, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (opt.mode == "oracle") return cmd_oracle(opt);
      return cmd_run(opt);
    }
    if (*orc) return cmd_oracle(opt);
    if (*cmp) return cmd_compare(opt);
    if (*gen_cmd) {
      if (const char* env = std::getenv("DENSESTREAM_SEED"))
        gp.seed = std::strtoull(env, nullptr, 10);
      return cmd_gen(gen_kind, gp, opt.out);
    }
    if (*dump) return cmd_dump(opt, dump_alpha, dump_d, dump_L);
    if (*diag) return cmd_diag(opt, diag_what);
  } catch (const ParseError& e) {
    std::cerr << "stream error: " << e.what() << "\n";
    return 2;
  } catch (const GraphError& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
