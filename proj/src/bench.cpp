#include "dkc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dkc/afn.hpp"
#include "dkc/navigating_net.hpp"

namespace dkc {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  std::vector<BenchRow> rows;
  if (spec.workload.n == 0) return rows;
  if (spec.query_size < 1) throw std::invalid_argument("query size must be >= 1");
  if (spec.deletes > spec.workload.n) throw std::invalid_argument("more deletes than points");

  const auto points = generate(spec.workload);
  const Metric metric = Metric::euclidean(spec.workload.dim);
  double delta = std::numeric_limits<double>::quiet_NaN();
  if (points.size() >= 2 && points.size() <= kMaxDeltaScan) delta = aspect_ratio(metric, points);

  NetOptions opts;
  opts.gamma = spec.gamma;
  NavigatingNet net(metric, opts);
  auto row = [&](const char* op, std::int64_t ns) {
    BenchRow r;
    r.n = spec.workload.n;
    r.dim = spec.workload.dim;
    r.delta = delta;
    r.op = op;
    r.wall_time_ns = ns;
    r.scale_count = net.materialized_scale_count();
    return r;
  };

  for (const auto& p : points) {
    auto start = Clock::now();
    net.insert(p);
    rows.push_back(row("insert", elapsed_ns(start)));
  }

  std::mt19937_64 rng(spec.workload.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Location> queries(spec.query_size);
  for (std::size_t q = 0; q < spec.queries; ++q) {
    for (auto& c : queries) c = points[rng() % points.size()].location;
    auto start = Clock::now();
    auto res = afn(net, queries, spec.eps);
    auto r = row("afn", elapsed_ns(start));
    r.afn_iterations = res.stats.iterations;
    r.max_frontier = res.stats.max_frontier;
    rows.push_back(r);
  }

  std::vector<PointId> order;
  for (const auto& p : points) order.push_back(p.id);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < spec.deletes; ++i) {
    auto start = Clock::now();
    net.erase(order[i]);
    rows.push_back(row("delete", elapsed_ns(start)));
  }
  return rows;
}

void write_bench_header(std::ostream& out) {
  out << "n,D,delta,op-kind,wall-time-ns,afn-iterations,max-frontier,scale-count\n";
}

void write_bench_rows(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& r : rows) {
    buf << r.n << ',' << r.dim << ',';
    if (!std::isnan(r.delta)) buf << r.delta;
    buf << ',' << r.op << ',' << r.wall_time_ns << ',' << r.afn_iterations << ','
        << r.max_frontier << ',' << r.scale_count << '\n';
  }
  out << buf.str();
}

}  // namespace dkc
