#include "dkc/afn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dkc {

double Frontier::max_distance() const {
  double best = 0.0;
  for (const auto& e : members) best = std::max(best, e.distance);
  return best;
}

double SetDistanceCache::operator()(PointId id) {
  auto it = cache_.find(id);
  if (it != cache_.end()) return it->second;
  ++evaluations_;
  double d = dist_to_set(net_.metric(), net_.location(id), queries_);
  cache_.emplace(id, d);
  return d;
}

Frontier next_frontier(const NavigatingNet& net, const Frontier& frontier,
                       SetDistanceCache& cache) {
  const double threshold = frontier.max_distance() - frontier.scale.radius();
  Frontier out{frontier.scale.half(), {}};
  std::unordered_set<PointId> seen;
  for (const auto& z : frontier.members) {
    for (PointId y : net.list_view(z.id, frontier.scale.exponent)) {
      if (!seen.insert(y).second) continue;
      const double d = cache(y);
      if (d >= threshold) out.members.push_back({y, d});
    }
  }
  std::sort(out.members.begin(), out.members.end(),
            [](const Frontier::Entry& a, const Frontier::Entry& b) { return a.id < b.id; });
  return out;
}

Frontier next_frontier(const NavigatingNet& net, const Frontier& frontier,
                       std::span<const Location> queries) {
  if (queries.empty()) throw std::invalid_argument("query set must be non-empty");
  SetDistanceCache cache(net, queries);
  for (const auto& e : frontier.members) cache.seed(e.id, e.distance);
  return next_frontier(net, frontier, cache);
}

AfnResult afn(const NavigatingNet& net, std::span<const Location> queries, double eps,
              const FrontierObserver& observer) {
  if (net.empty()) throw std::invalid_argument("furthest-neighbor query on an empty net");
  if (queries.empty()) throw std::invalid_argument("query set must be non-empty");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be > 0");
  for (const auto& q : queries) net.metric().validate(q);

  SetDistanceCache cache(net, queries);
  const PointId root = net.root();
  Frontier z{net.r_max(), {{root, cache(root)}}};
  const double floor_radius = net.base_scale().radius();

  AfnResult result;
  QueryStats& stats = result.stats;
  stats.start_scale = z.scale;
  for (;;) {
    stats.frontier_sizes.push_back(z.members.size());
    stats.max_frontier = std::max(stats.max_frontier, z.members.size());
    if (observer) observer(z);
    const double limit = std::max(0.5 * eps * z.max_distance(), floor_radius);
    if (!(z.scale.radius() > limit)) break;
    z = next_frontier(net, z, cache);
  }
  stats.end_scale = z.scale;
  stats.iterations = static_cast<std::size_t>(stats.start_scale.exponent - z.scale.exponent) + 1;
  stats.distance_evaluations = cache.evaluations();

  // Members are id-sorted, so the first maximum has the smallest id.
  const Frontier::Entry* best = nullptr;
  for (const auto& e : z.members)
    if (best == nullptr || e.distance > best->distance) best = &e;
  if (best == nullptr) throw std::logic_error("furthest-neighbor frontier became empty");
  result.point = best->id;
  result.distance = best->distance;
  return result;
}

}  // namespace dkc
