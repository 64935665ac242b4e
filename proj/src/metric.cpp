#include "dkc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dkc {

Metric Metric::euclidean(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("euclidean metric needs dimension >= 1");
  return Metric(MetricKind::euclidean, dim, nullptr);
}

Metric Metric::matrix(std::vector<double> table, std::size_t n) {
  if (n == 0) throw std::invalid_argument("distance matrix must have at least one row");
  if (table.size() != n * n)
    throw std::invalid_argument("distance matrix has " + std::to_string(table.size()) +
                                " entries, expected " + std::to_string(n * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i * n + i] != 0.0)
      throw std::invalid_argument("distance matrix diagonal must be zero (row " +
                                  std::to_string(i) + ")");
    for (std::size_t j = 0; j < n; ++j) {
      double v = table[i * n + j];
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("distance matrix entries must be finite and nonnegative");
      if (v != table[j * n + i]) throw std::invalid_argument("distance matrix is not symmetric");
    }
  }
  return Metric(MetricKind::matrix, n,
                std::make_shared<const std::vector<double>>(std::move(table)));
}

void Metric::validate(const Location& loc) const {
  if (kind_ == MetricKind::euclidean) {
    const auto* c = std::get_if<Coords>(&loc);
    if (c == nullptr) throw std::invalid_argument("expected coordinates for euclidean metric");
    if (c->size() != dim_)
      throw std::invalid_argument("dimension mismatch: got " + std::to_string(c->size()) +
                                  ", expected " + std::to_string(dim_));
    for (double x : *c)
      if (!std::isfinite(x)) throw std::invalid_argument("coordinates must be finite");
  } else {
    const auto* r = std::get_if<MatrixRow>(&loc);
    if (r == nullptr) throw std::invalid_argument("expected a matrix row for matrix metric");
    if (r->index >= dim_)
      throw std::out_of_range("matrix row " + std::to_string(r->index) + " out of range");
  }
}

double Metric::distance(const Location& a, const Location& b) const {
  if (kind_ == MetricKind::euclidean) {
    const auto* pa = std::get_if<Coords>(&a);
    const auto* pb = std::get_if<Coords>(&b);
    if (pa == nullptr || pb == nullptr)
      throw std::invalid_argument("expected coordinates for euclidean metric");
    if (pa->size() != dim_ || pb->size() != dim_)
      throw std::invalid_argument("dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      double diff = (*pa)[i] - (*pb)[i];
      sum += diff * diff;
    }
    return std::sqrt(sum);
  }
  const auto* ra = std::get_if<MatrixRow>(&a);
  const auto* rb = std::get_if<MatrixRow>(&b);
  if (ra == nullptr || rb == nullptr)
    throw std::invalid_argument("expected a matrix row for matrix metric");
  return entry(ra->index, rb->index);
}

double Metric::entry(std::size_t i, std::size_t j) const {
  if (kind_ != MetricKind::matrix) throw std::logic_error("entry() on a non-matrix metric");
  if (i >= dim_ || j >= dim_) throw std::out_of_range("matrix index out of range");
  return (*table_)[i * dim_ + j];
}

bool Metric::satisfies_triangle_inequality(double rel_tol) const {
  if (kind_ != MetricKind::matrix) return true;
  const std::size_t n = dim_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double lhs = entry(i, j);
        double rhs = entry(i, k) + entry(k, j);
        if (lhs > rhs * (1.0 + rel_tol)) return false;
      }
  return true;
}

double dist_to_set(const Metric& metric, const Location& q, std::span<const Location> set) {
  if (set.empty()) throw std::invalid_argument("distance to an empty set is undefined");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : set) best = std::min(best, metric.distance(q, c));
  return best;
}

double aspect_ratio(const Metric& metric, std::span<const MetricPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("aspect ratio needs at least two points");
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double d = metric.distance(points[i].location, points[j].location);
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  if (dmin == 0.0) throw std::invalid_argument("aspect ratio undefined: coincident points");
  return dmax / dmin;
}

const Coords& coords_of(const Location& loc) {
  const auto* c = std::get_if<Coords>(&loc);
  if (c == nullptr) throw std::invalid_argument("location has no coordinates");
  return *c;
}

}  // namespace dkc
