#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace dkc {

/// Stable identity of a point across dynamic updates.
using PointId = std::uint64_t;

using Coords = std::vector<double>;

/// Row index into an explicit distance matrix.
struct MatrixRow {
  std::size_t index = 0;
  friend bool operator==(const MatrixRow&, const MatrixRow&) = default;
};

/// A location in the metric space: coordinates for the Euclidean backend,
/// a row index for the explicit-matrix backend.
using Location = std::variant<Coords, MatrixRow>;

struct MetricPoint {
  PointId id = 0;
  Location location;
};

enum class MetricKind { euclidean, matrix };

/// The metric space (X, d). Immutable after construction, cheap to copy
/// (matrix storage is shared).
class Metric {
 public:
  /// Euclidean l2 metric over R^dim.
  static Metric euclidean(std::size_t dim);

  /// Explicit finite metric given as a row-major n x n table. The table must
  /// be symmetric, nonnegative and have a zero diagonal; the triangle
  /// inequality is not checked here (see `satisfies_triangle_inequality`).
  static Metric matrix(std::vector<double> table, std::size_t n);

  MetricKind kind() const { return kind_; }
  bool is_euclidean() const { return kind_ == MetricKind::euclidean; }

  /// Dimension for the Euclidean backend, number of rows for the matrix one.
  std::size_t dim() const { return dim_; }

  /// Throws std::invalid_argument if `loc` does not belong to this backend.
  void validate(const Location& loc) const;

  double distance(const Location& a, const Location& b) const;

  /// Table entry for the matrix backend.
  double entry(std::size_t i, std::size_t j) const;

  /// O(n^3) check, intended for small tables in tests.
  bool satisfies_triangle_inequality(double rel_tol = 1e-12) const;

 private:
  Metric(MetricKind kind, std::size_t dim, std::shared_ptr<const std::vector<double>> table)
      : kind_(kind), dim_(dim), table_(std::move(table)) {}

  MetricKind kind_;
  std::size_t dim_;
  std::shared_ptr<const std::vector<double>> table_;
};

/// d(q, C) = min over c in C of d(q, c). Throws on empty C.
double dist_to_set(const Metric& metric, const Location& q, std::span<const Location> set);

/// d_max / d_min over all pairs, by exhaustive scan. Throws when fewer than
/// two points are given or two points coincide.
double aspect_ratio(const Metric& metric, std::span<const MetricPoint> points);

const Coords& coords_of(const Location& loc);

}  // namespace dkc
