#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "dkc/metric.hpp"
#include "dkc/navigating_net.hpp"

namespace dkc {

/// Instrumentation for one furthest-neighbor query.
struct QueryStats {
  std::size_t iterations = 0;  // scales visited, start - end + 1
  std::size_t max_frontier = 0;
  Scale start_scale;
  Scale end_scale;
  std::vector<std::size_t> frontier_sizes;  // one per visited scale, top-down
  std::size_t distance_evaluations = 0;     // point-to-set evaluations
};

/// Z_r: the candidate subset of Y_r kept alive at one scale, with cached
/// distances to the query set. Members are sorted by id.
struct Frontier {
  struct Entry {
    PointId id;
    double distance;
  };

  Scale scale;
  std::vector<Entry> members;

  /// max over members of d(z, C); 0 for an empty frontier.
  double max_distance() const;
};

struct AfnResult {
  PointId point = 0;
  double distance = 0.0;
  QueryStats stats;
};

/// Called with every frontier the query visits, top scale first.
using FrontierObserver = std::function<void(const Frontier&)>;

/// (1+eps)-approximate furthest neighbor in the net's point set to the query
/// set C: returns p with max_{p'} d(p', C) <= (1 + eps) d(p, C).
///
/// Descends from Z_{r_max} = Y_{r_max}, keeping at each scale r the points of
/// the next level reached through navigation lists whose distance to C is at
/// least (current frontier max) - r. Descent stops once r <= eps/2 * max, or
/// at the base scale below which every level is the whole point set. Ties in
/// the final argmax go to the smallest id.
///
/// Throws std::invalid_argument on an empty net, empty C, or eps <= 0.
AfnResult afn(const NavigatingNet& net, std::span<const Location> queries, double eps,
              const FrontierObserver& observer = {});

/// One descent step: Z_{r/2} from Z_r. `frontier.scale` must be above the
/// base scale's lower end, i.e. its members' lists at that scale exist.
Frontier next_frontier(const NavigatingNet& net, const Frontier& frontier,
                       std::span<const Location> queries);

/// Caches d(., C) for one query so each point is evaluated at most once.
class SetDistanceCache {
 public:
  SetDistanceCache(const NavigatingNet& net, std::span<const Location> queries)
      : net_(net), queries_(queries) {}

  double operator()(PointId id);
  std::size_t evaluations() const { return evaluations_; }
  void seed(PointId id, double distance) { cache_.emplace(id, distance); }

 private:
  const NavigatingNet& net_;
  std::span<const Location> queries_;
  std::unordered_map<PointId, double> cache_;
  std::size_t evaluations_ = 0;
};

Frontier next_frontier(const NavigatingNet& net, const Frontier& frontier,
                       SetDistanceCache& cache);

}  // namespace dkc
