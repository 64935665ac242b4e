#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dkc/workload.hpp"

namespace dkc {

struct BenchSpec {
  GenSpec workload;           // workload.n == 0 gives an empty run
  std::size_t queries = 100;  // afn queries after all inserts
  std::size_t query_size = 1;  // |C|, drawn from the workload points
  double eps = 0.1;
  std::size_t deletes = 0;     // deletions after the queries
  double gamma = 4.0;
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t dim = 0;
  double delta = 0.0;  // aspect ratio of the full workload, NaN if not computed
  std::string op;      // insert | afn | delete
  std::int64_t wall_time_ns = 0;
  std::size_t afn_iterations = 0;
  std::size_t max_frontier = 0;
  std::size_t scale_count = 0;  // materialized scales after the op
};

/// Inserts the workload, runs the afn queries, then deletes. One row per op.
/// The aspect ratio is computed for n <= kMaxDeltaScan only.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

inline constexpr std::size_t kMaxDeltaScan = 20000;

void write_bench_header(std::ostream& out);
void write_bench_rows(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace dkc
