#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dkc/bench.hpp"
#include "dkc/trace.hpp"
#include "dkc/workload.hpp"

namespace {

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open '" + path + "' for writing");
    stream = file.get();
  }
};

void add_workload_options(CLI::App* cmd, dkc::GenSpec& spec, std::string& dist) {
  cmd->add_option("--dist", dist, "uniform-cube | gaussian-clusters | line | grid")
      ->capture_default_str();
  cmd->add_option("-n,--n", spec.n, "number of points")->capture_default_str();
  cmd->add_option("-D,--dim", spec.dim, "dimension")->capture_default_str();
  cmd->add_option("--seed", spec.seed, "random seed")->capture_default_str();
  cmd->add_option("--clusters", spec.clusters, "gaussian-clusters: cluster count")
      ->capture_default_str();
  cmd->add_option("--spread", spec.spread, "gaussian-clusters: per-coordinate std dev")
      ->capture_default_str();
  cmd->add_option("--separation", spec.separation, "gaussian-clusters: center spacing")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic navigating net with approximate furthest-neighbor and k-center solvers"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a point file or a random trace");
  dkc::GenSpec gen_spec;
  gen_spec.n = 100;
  std::string gen_dist = "uniform-cube";
  std::string gen_out;
  bool gen_trace = false;
  dkc::TraceSpec trace_spec;
  add_workload_options(gen, gen_spec, gen_dist);
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");
  gen->add_flag("--trace", gen_trace, "emit a random mixed trace instead of points");
  gen->add_option("--ops", trace_spec.ops, "--trace: number of ops")->capture_default_str();
  gen->add_option("--max-live", trace_spec.max_live, "--trace: live-set cap")
      ->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "replay a trace, one JSON object per op");
  std::string trace_path;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string run_out;
  bool check_oracle = false;
  run->add_option("trace", trace_path, "trace file ('-' for stdin)")->required();
  run->add_option("-c,--config", config_path, "key=value config file");
  run->add_option("--set", overrides, "extra key=value setting (repeatable)");
  run->add_flag("--check-oracle", check_oracle, "check every query against brute force");
  run->add_option("-o,--output", run_out, "output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "time a generated workload, CSV per op");
  dkc::BenchSpec bench_spec;
  bench_spec.workload.n = 1000;
  std::string bench_dist = "uniform-cube";
  std::string bench_out;
  bool no_header = false;
  add_workload_options(bench, bench_spec.workload, bench_dist);
  bench->add_option("--queries", bench_spec.queries, "afn queries")->capture_default_str();
  bench->add_option("--query-size", bench_spec.query_size, "|C| per query")
      ->capture_default_str();
  bench->add_option("--eps", bench_spec.eps, "afn eps")->capture_default_str();
  bench->add_option("--deletes", bench_spec.deletes, "deletions after the queries")
      ->capture_default_str();
  bench->add_option("--gamma", bench_spec.gamma, "navigation list constant")
      ->capture_default_str();
  bench->add_flag("--no-header", no_header, "omit the CSV header");
  bench->add_option("-o,--output", bench_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Output out(gen_out);
      if (gen_trace) {
        trace_spec.dim = gen_spec.dim;
        trace_spec.seed = gen_spec.seed;
        *out.stream << dkc::random_trace(trace_spec);
      } else {
        gen_spec.distribution = dkc::parse_distribution(gen_dist);
        dkc::write_points(*out.stream, gen_spec.dim, dkc::generate(gen_spec));
      }
      return 0;
    }

    if (*run) {
      dkc::RunConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
        config = dkc::parse_config(in);
      }
      for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--set expects key=value");
        dkc::apply_config_entry(config, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (check_oracle) config.check_oracle = true;

      std::ifstream file;
      std::istream* in = &std::cin;
      if (trace_path != "-") {
        file.open(trace_path);
        if (!file) throw std::runtime_error("cannot open trace '" + trace_path + "'");
        in = &file;
      }
      Output out(run_out);
      dkc::TraceRunner runner(config);
      return runner.run(*in, *out.stream);
    }

    if (*bench) {
      bench_spec.workload.distribution = dkc::parse_distribution(bench_dist);
      auto rows = dkc::run_bench(bench_spec);
      Output out(bench_out);
      if (!no_header) dkc::write_bench_header(*out.stream);
      dkc::write_bench_rows(*out.stream, rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
