#include <doctest.h>

#include <cmath>
#include <random>

#include "dkc/metric.hpp"
#include "support.hpp"

using namespace dkc;

TEST_SUITE("metric") {

TEST_CASE("euclidean distance examples") {
  const Metric m = Metric::euclidean(2);
  CHECK(m.distance(Coords{0, 0}, Coords{3, 4}) == 5.0);
  CHECK(m.distance(Coords{1.5, -2}, Coords{1.5, -2}) == 0.0);
  CHECK_THROWS_AS(m.distance(Coords{0, 0}, Coords{1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(m.distance(Coords{0, 0}, MatrixRow{0}), std::invalid_argument);
}

TEST_CASE("matrix backend is a table lookup") {
  std::mt19937_64 rng(7);
  const Metric m = test::random_matrix_metric(8, rng);
  CHECK(m.distance(MatrixRow{2}, MatrixRow{5}) == m.entry(2, 5));
  CHECK(m.distance(MatrixRow{5}, MatrixRow{2}) == m.entry(2, 5));
  CHECK(m.distance(MatrixRow{3}, MatrixRow{3}) == 0.0);
  CHECK(m.satisfies_triangle_inequality());
  CHECK_THROWS_AS(m.distance(MatrixRow{0}, MatrixRow{8}), std::out_of_range);
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(Metric::matrix({0, 1, 2, 0}, 2), std::invalid_argument);   // asymmetric
  CHECK_THROWS_AS(Metric::matrix({1, 1, 1, 0}, 2), std::invalid_argument);   // diagonal
  CHECK_THROWS_AS(Metric::matrix({0, -1, -1, 0}, 2), std::invalid_argument); // negative
  CHECK_THROWS_AS(Metric::matrix({0, 1, 1}, 2), std::invalid_argument);      // size
  const Metric bad = Metric::matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, 3);
  CHECK_FALSE(bad.satisfies_triangle_inequality());
}

TEST_CASE("dist_to_set") {
  const Metric m = Metric::euclidean(2);
  std::vector<Location> c{Coords{1, 0}, Coords{5, 0}};
  CHECK(dist_to_set(m, Coords{0, 0}, c) == 1.0);
  CHECK(dist_to_set(m, Coords{5, 0}, c) == 0.0);
  CHECK_THROWS_AS(dist_to_set(m, Coords{0, 0}, {}), std::invalid_argument);

  std::mt19937_64 rng(11);
  auto pts = test::uniform_points(20, 2, rng);
  auto queries = test::locations(test::uniform_points(3, 2, rng));
  for (const auto& p : pts) {
    double naive = INFINITY;
    for (const auto& q : queries) naive = std::min(naive, m.distance(p.location, q));
    CHECK(dist_to_set(m, p.location, queries) == naive);
    for (const auto& q : queries) CHECK(dist_to_set(m, p.location, queries) <= m.distance(p.location, q));
  }
}

TEST_CASE("aspect ratio") {
  const Metric m = Metric::euclidean(1);
  std::vector<MetricPoint> line{{0, Coords{0}}, {1, Coords{1}}, {2, Coords{3}}};
  CHECK(aspect_ratio(m, line) == 3.0);
  std::vector<MetricPoint> pair{{0, Coords{0}}, {1, Coords{7}}};
  CHECK(aspect_ratio(m, pair) == 1.0);
  CHECK_THROWS_AS(aspect_ratio(m, std::span(pair.data(), 1)), std::invalid_argument);
  std::vector<MetricPoint> dup{{0, Coords{1}}, {1, Coords{1}}};
  CHECK_THROWS_AS(aspect_ratio(m, dup), std::invalid_argument);

  std::mt19937_64 rng(5);
  auto pts = test::uniform_points(50, 3, rng);
  const Metric m3 = Metric::euclidean(3);
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d = m3.distance(pts[i].location, pts[j].location);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  CHECK(aspect_ratio(m3, pts) == hi / lo);
}

TEST_CASE("symmetry, identity and accuracy against compensated summation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (std::size_t dim = 1; dim <= 16; ++dim) {
    const Metric m = Metric::euclidean(dim);
    for (int trial = 0; trial < 50; ++trial) {
      Coords a(dim), b(dim);
      for (auto& x : a) x = u(rng);
      for (auto& x : b) x = u(rng);
      const double d = m.distance(a, b);
      CHECK(d == m.distance(b, a));
      CHECK(m.distance(a, a) == 0.0);
      long double sum = 0, comp = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        long double t = static_cast<long double>(a[i]) - b[i];
        long double y = t * t - comp;
        long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
      }
      const double ref = static_cast<double>(std::sqrt(sum));
      CHECK(std::abs(d - ref) <= 1e-12 * ref);
    }
  }
}

}  // TEST_SUITE
