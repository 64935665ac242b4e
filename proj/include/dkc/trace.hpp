#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dkc/kcenter.hpp"
#include "dkc/metric.hpp"
#include "dkc/navigating_net.hpp"

namespace dkc {

/// key=value settings for trace replay. Keys: gamma, metric (euclidean |
/// matrix), matrix_file, dim, check_oracle, kcenter_budget, rebuild_on_delete.
struct RunConfig {
  double gamma = 4.0;
  bool matrix = false;
  std::string matrix_file;
  std::optional<std::size_t> dim;
  bool check_oracle = false;
  std::uint64_t kcenter_budget = GuessEnumerator::kDefaultBudget;
  bool rebuild_on_delete = false;
};

/// Throws std::runtime_error naming the line on unknown keys or bad values.
RunConfig parse_config(std::istream& in);
void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value);

struct TraceOp {
  enum class Kind { insert, erase, afn, greedy, meb, kcenter, verify };

  Kind kind = Kind::verify;
  PointId id = 0;
  Location location;               // insert
  double eps = 0.0;                // afn, greedy, meb, kcenter
  std::size_t k = 0;               // greedy, kcenter
  std::vector<Location> queries;   // afn
};

/// Parses one trace line. Euclidean coordinates need `dim`; for the matrix
/// backend locations are row indices. Throws std::invalid_argument.
TraceOp parse_trace_op(std::string_view line, const Metric& metric);

/// Error raised while replaying; carries the 1-based trace line.
class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Sequential replay of a trace against one net, one JSON object per op.
class TraceRunner {
 public:
  /// `metric` is required for the matrix backend; for Euclidean traces it may
  /// be omitted and D is taken from the config or the first INSERT.
  explicit TraceRunner(RunConfig config, std::optional<Metric> metric = std::nullopt);

  /// Replays every line. Returns 0, or 1 if any VERIFY, coverage certificate
  /// or oracle check failed. Throws TraceError on malformed or invalid ops.
  int run(std::istream& trace, std::ostream& out);

  /// Executes one op and returns its JSON record. Sets `failed` on a failed
  /// check. Throws std::exception on invalid ops.
  std::string execute(const TraceOp& op, bool& failed);

  const NavigatingNet* net() const { return net_ ? &*net_ : nullptr; }

 private:
  void ensure_net(std::size_t dim);

  RunConfig config_;
  std::optional<Metric> metric_;
  std::optional<NavigatingNet> net_;
  std::set<PointId> used_ids_;
};

struct TraceSpec {
  std::size_t ops = 1000;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  std::size_t max_live = 40;  // keeps oracle checks in range
};

/// Random mixed trace of inserts, deletes, queries and verifies.
std::string random_trace(const TraceSpec& spec);

}  // namespace dkc
