#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "dkc/metric.hpp"
#include "dkc/navigating_net.hpp"

namespace dkc::test {

inline std::vector<MetricPoint> uniform_points(std::size_t n, std::size_t dim, std::mt19937_64& rng,
                                               PointId first_id = 0, double side = 1.0) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<MetricPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    Coords c(dim);
    for (auto& x : c) x = u(rng);
    out.push_back({first_id + i, std::move(c)});
  }
  return out;
}

// A few tight gaussian blobs spread over a box of side `side`.
inline std::vector<MetricPoint> clustered_points(std::size_t n, std::size_t dim, std::mt19937_64& rng,
                                                 std::size_t clusters = 3, double side = 10.0,
                                                 double spread = 0.05) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::normal_distribution<double> g(0.0, spread);
  std::vector<Coords> centers(clusters, Coords(dim));
  for (auto& c : centers)
    for (auto& x : c) x = u(rng);
  std::vector<MetricPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    Coords c = centers[i % clusters];
    for (auto& x : c) x += g(rng);
    out.push_back({i, std::move(c)});
  }
  return out;
}

inline std::vector<Location> locations(const std::vector<MetricPoint>& pts) {
  std::vector<Location> out;
  for (const auto& p : pts) out.push_back(p.location);
  return out;
}

inline std::vector<Coords> coords(const std::vector<MetricPoint>& pts) {
  std::vector<Coords> out;
  for (const auto& p : pts) out.push_back(coords_of(p.location));
  return out;
}

// Random finite metric: shortest paths over a random complete graph.
inline Metric random_matrix_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(1.0, 10.0);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return Metric::matrix(std::move(d), n);
}

inline std::vector<MetricPoint> matrix_points(std::size_t n) {
  std::vector<MetricPoint> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, MatrixRow{i}});
  return out;
}

}  // namespace dkc::test
