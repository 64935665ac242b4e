#pragma once

// Brute-force references. Not tuned, never used on the production query path.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dkc/metric.hpp"

namespace dkc::oracle {

struct Ball {
  Coords center;
  double radius = 0.0;
};

struct Result {
  double value = 0.0;
  std::vector<PointId> center_ids;          // metric k-center witness
  std::vector<Coords> centers;              // Euclidean witnesses
  std::vector<std::vector<PointId>> groups;  // partition witness, if any
};

/// Exact furthest point of P from C by full scan; ties to the smallest id.
std::pair<PointId, double> fn_exact(const Metric& metric, std::span<const MetricPoint> points,
                                    std::span<const Location> queries);

/// Optimal discrete k-center (centers drawn from P) by subset enumeration.
/// Guard: |P| <= 40, k <= 3.
Result kcenter_exact_metric(const Metric& metric, std::span<const MetricPoint> points,
                            std::size_t k);

/// Exact minimum enclosing ball (Welzl's move-to-front recursion, exact
/// support-set arithmetic). Guard: D <= 3, |P| <= 500.
Ball meb_exact(std::span<const Coords> points);

/// Exact minimum enclosing ball by enumerating every support subset of size
/// <= D + 1 and keeping the smallest circumscribed ball that covers P.
/// Independent cross-check for `meb_exact`. Guard: D <= 3, |P| <= 500.
Ball meb_support_enumeration(std::span<const Coords> points);

/// Smallest ball with every point of `support` (1..D+1 points) on its
/// boundary, centered in their affine hull. Returns false on degeneracy.
bool circumscribed_ball(std::span<const Coords> support, Ball& out);

/// Optimal Euclidean k-center (free centers): minimum over all partitions of
/// P into <= k groups of the largest group MEB radius. Guard: |P| <= 20, k <= 3.
Result kcenter_exact_euclidean(std::span<const MetricPoint> points, std::size_t k);

/// max over points of the distance to the nearest of `centers`.
double covering_radius(const Metric& metric, std::span<const MetricPoint> points,
                       std::span<const Location> centers);

}  // namespace dkc::oracle
