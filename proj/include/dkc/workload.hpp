#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dkc/metric.hpp"

namespace dkc {

enum class Distribution { uniform_cube, gaussian_clusters, line, grid };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution d);

struct GenSpec {
  Distribution distribution = Distribution::uniform_cube;
  std::size_t n = 0;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  // gaussian-clusters only
  std::size_t clusters = 2;
  double spread = 0.01;       // per-coordinate standard deviation
  double separation = 100.0;  // distance between consecutive cluster centers
};

/// Ids 0..n-1. Deterministic for a fixed spec.
///   uniform-cube       iid uniform in [0,1]^D
///   gaussian-clusters  centers at c * separation * e_1, c = 0..clusters-1,
///                      points assigned round-robin, N(0, spread^2) per coordinate
///   line               point i at i * e_1
///   grid               integer grid of side ceil(n^(1/D)), first n in row-major order
/// Throws std::invalid_argument on n < 1, D < 1, clusters < 1, spread <= 0 or
/// separation <= 0.
std::vector<MetricPoint> generate(const GenSpec& spec);

/// Points plus the backend they live in.
struct PointSet {
  Metric metric = Metric::euclidean(1);
  std::vector<MetricPoint> points;
};

/// `dim <D>` then `<id> <x1> ... <xD>` per line, 17 significant digits.
void write_points(std::ostream& out, std::size_t dim, const std::vector<MetricPoint>& points);

/// Reads either a Euclidean point file (`dim <D>` header) or a distance
/// matrix (`matrix <n>` header, n rows of n distances; point i is row i with
/// id i). Blank lines and lines starting with '#' are skipped. Throws
/// std::runtime_error with a line number on malformed input.
PointSet read_points(std::istream& in);

/// Reads a `matrix <n>` file into a matrix backend.
Metric read_matrix(std::istream& in);

}  // namespace dkc
