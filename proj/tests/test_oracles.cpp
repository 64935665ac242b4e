#include <doctest.h>

#include <cmath>
#include <random>

#include "dkc/afn.hpp"
#include "dkc/oracles.hpp"
#include "support.hpp"

using namespace dkc;

namespace {

double max_dist(const Coords& c, const std::vector<Coords>& pts) {
  const Metric m = Metric::euclidean(c.size());
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, m.distance(c, p));
  return r;
}

// Best discrete k-center via labelings of P into <= k groups, each group
// served by its best in-group center.
double kcenter_by_partitions(const Metric& m, const std::vector<MetricPoint>& pts, std::size_t k) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> label(n, 0);
  double best = INFINITY;
  for (;;) {
    double worst = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
      double group_best = INFINITY;
      bool any = false;
      for (std::size_t c = 0; c < n; ++c) {
        if (label[c] != g) continue;
        any = true;
        double r = 0.0;
        for (std::size_t p = 0; p < n; ++p)
          if (label[p] == g) r = std::max(r, m.distance(pts[c].location, pts[p].location));
        group_best = std::min(group_best, r);
      }
      if (any) worst = std::max(worst, group_best);
    }
    best = std::min(best, worst);
    std::size_t i = 0;
    while (i < n && ++label[i] == k) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

// Free-center k-center by full labeling enumeration without pruning.
double kcenter_euclidean_unpruned(const std::vector<MetricPoint>& pts, std::size_t k) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> label(n, 0);
  double best = INFINITY;
  for (;;) {
    std::vector<std::vector<Coords>> groups(k);
    for (std::size_t i = 0; i < n; ++i) groups[label[i]].push_back(coords_of(pts[i].location));
    double worst = 0.0;
    for (const auto& g : groups)
      if (!g.empty()) worst = std::max(worst, oracle::meb_support_enumeration(g).radius);
    best = std::min(best, worst);
    std::size_t i = 0;
    while (i < n && ++label[i] == k) label[i++] = 0;
    if (i == n) break;
  }
  return best;
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("fn_exact") {
  const Metric m = Metric::euclidean(1);
  std::vector<MetricPoint> p{{0, Coords{0}}, {1, Coords{10}}};
  std::vector<Location> c{Coords{0}};
  auto [id, d] = oracle::fn_exact(m, p, c);
  CHECK(id == 1);
  CHECK(d == 10.0);

  std::vector<Location> all{Coords{0}, Coords{10}};
  CHECK(oracle::fn_exact(m, p, all).second == 0.0);
  CHECK(oracle::fn_exact(m, p, all).first == 0);  // tie -> smallest id

  CHECK_THROWS_AS(oracle::fn_exact(m, {}, c), std::invalid_argument);
  CHECK_THROWS_AS(oracle::fn_exact(m, p, {}), std::invalid_argument);

  std::mt19937_64 rng(31);
  const Metric m2 = Metric::euclidean(2);
  auto pts = test::uniform_points(40, 2, rng);
  auto q = test::locations(test::uniform_points(4, 2, rng));
  double table_max = -1;
  for (const auto& x : pts) {
    double near = INFINITY;
    for (const auto& y : q) near = std::min(near, m2.distance(x.location, y));
    table_max = std::max(table_max, near);
  }
  CHECK(oracle::fn_exact(m2, pts, q).second == table_max);
}

TEST_CASE("fn_exact dominates afn") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    auto pts = test::uniform_points(80, 2, rng);
    auto net = NavigatingNet::build(Metric::euclidean(2), pts);
    auto c = test::locations(test::uniform_points(2, 2, rng));
    CHECK(oracle::fn_exact(net.metric(), pts, c).second >= afn(net, c, 0.3).distance);
  }
}

TEST_CASE("kcenter_exact_metric") {
  const Metric m = Metric::euclidean(1);
  std::vector<MetricPoint> p{{0, Coords{0}}, {1, Coords{0.1}}, {2, Coords{100}}, {3, Coords{100.1}}};
  auto res = oracle::kcenter_exact_metric(m, p, 2);
  CHECK(res.value == doctest::Approx(0.1).epsilon(1e-12));
  std::vector<Location> centers;
  for (PointId id : res.center_ids) centers.push_back(p[id].location);
  CHECK(oracle::covering_radius(m, p, centers) == res.value);

  std::vector<MetricPoint> two{{0, Coords{0}}, {1, Coords{5}}};
  CHECK(oracle::kcenter_exact_metric(m, two, 2).value == 0.0);
  CHECK(oracle::kcenter_exact_metric(m, two, 3).value == 0.0);

  CHECK_THROWS_AS(oracle::kcenter_exact_metric(m, p, 0), std::invalid_argument);
  CHECK_THROWS_AS(oracle::kcenter_exact_metric(m, p, 4), std::invalid_argument);
  CHECK_THROWS_AS(oracle::kcenter_exact_metric(m, {}, 1), std::invalid_argument);
  std::mt19937_64 rng(33);
  auto big = test::uniform_points(41, 1, rng);
  CHECK_THROWS_AS(oracle::kcenter_exact_metric(m, big, 2), std::invalid_argument);
}

TEST_CASE("kcenter_exact_metric agrees with partition enumeration") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = 1 + trial % 3;
    auto pts = test::uniform_points(trial < 8 ? 12 : 9, 2, rng);
    const Metric m = Metric::euclidean(2);
    auto res = oracle::kcenter_exact_metric(m, pts, k);
    CHECK(res.value == kcenter_by_partitions(m, pts, k));
    std::vector<Location> centers;
    for (PointId id : res.center_ids) centers.push_back(pts[id].location);
    CHECK(res.center_ids.size() <= k);
    CHECK(oracle::covering_radius(m, pts, centers) == res.value);
  }
  const Metric mm = test::random_matrix_metric(12, rng);
  auto rows = test::matrix_points(12);
  CHECK(oracle::kcenter_exact_metric(mm, rows, 2).value == kcenter_by_partitions(mm, rows, 2));
}

TEST_CASE("meb_exact examples") {
  auto two = oracle::meb_exact(std::vector<Coords>{{-1, 0}, {1, 0}});
  CHECK(two.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two.center[0] == doctest::Approx(0.0));
  CHECK(two.center[1] == doctest::Approx(0.0));

  std::vector<Coords> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto sq = oracle::meb_exact(square);
  CHECK(sq.radius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(sq.center[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq.center[1] == doctest::Approx(0.5).epsilon(1e-12));

  auto one = oracle::meb_exact(std::vector<Coords>{{3, 4, 5}});
  CHECK(one.radius == 0.0);

  // Collinear triple: the middle point is inside the diameter ball.
  auto line = oracle::meb_exact(std::vector<Coords>{{0, 0}, {1, 1}, {3, 3}});
  CHECK(line.radius == doctest::Approx(std::sqrt(18.0) / 2).epsilon(1e-12));

  // Obtuse triangle: the ball is the one on the long side.
  auto obtuse = oracle::meb_exact(std::vector<Coords>{{-2, 0}, {2, 0}, {0, 0.5}});
  CHECK(obtuse.radius == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(oracle::meb_exact(std::vector<Coords>{}), std::invalid_argument);
  CHECK_THROWS_AS(oracle::meb_exact(std::vector<Coords>{{0, 0, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(oracle::meb_exact(std::vector<Coords>(501, Coords{0.0})), std::invalid_argument);
}

TEST_CASE("meb_exact agrees with support enumeration and resists perturbation") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto pts = test::coords(trial % 2 ? test::uniform_points(trial < 10 ? 100 : 30, dim, rng)
                                      : test::clustered_points(30, dim, rng));
    auto fast = oracle::meb_exact(pts);
    auto slow = oracle::meb_support_enumeration(pts);
    CAPTURE(trial);
    CHECK(fast.radius == doctest::Approx(slow.radius).epsilon(1e-12));
    CHECK(max_dist(fast.center, pts) == fast.radius);

    // No nearby center covers with a smaller radius.
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      Coords c = fast.center;
      for (auto& x : c) x += 1e-6 * g(rng);
      CHECK(max_dist(c, pts) >= fast.radius * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("circumscribed ball") {
  oracle::Ball b;
  std::vector<Coords> tri{{0, 0}, {2, 0}, {0, 2}};
  REQUIRE(oracle::circumscribed_ball(tri, b));
  CHECK(b.center[0] == doctest::Approx(1.0));
  CHECK(b.center[1] == doctest::Approx(1.0));
  CHECK(b.radius == doctest::Approx(std::sqrt(2.0)));
  std::vector<Coords> collinear{{0, 0}, {1, 0}, {2, 0}};
  CHECK_FALSE(oracle::circumscribed_ball(collinear, b));
  std::vector<Coords> too_many{{0}, {1}, {2}};
  CHECK_FALSE(oracle::circumscribed_ball(too_many, b));
}

TEST_CASE("kcenter_exact_euclidean") {
  std::mt19937_64 rng(36);
  // k = 1 is the MEB, bit for bit.
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = test::uniform_points(15, 2, rng);
    CHECK(oracle::kcenter_exact_euclidean(pts, 1).value == oracle::meb_exact(test::coords(pts)).radius);
  }

  // Two tight clusters far apart.
  std::vector<MetricPoint> pts;
  std::normal_distribution<double> g(0.0, 0.05);
  std::vector<Coords> left, right;
  for (PointId i = 0; i < 10; ++i) {
    Coords c{g(rng) + (i < 5 ? 0.0 : 100.0), g(rng)};
    (i < 5 ? left : right).push_back(c);
    pts.push_back({i, c});
  }
  auto res = oracle::kcenter_exact_euclidean(pts, 2);
  const double expect = std::max(oracle::meb_exact(left).radius, oracle::meb_exact(right).radius);
  CHECK(res.value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(res.groups.size() == 2);
  std::vector<Location> centers(res.centers.begin(), res.centers.end());
  CHECK(oracle::covering_radius(Metric::euclidean(2), pts, centers) ==
        doctest::Approx(res.value).epsilon(1e-12));

  // Random n = 10: all 2^9 bipartitions, no pruning.
  for (int trial = 0; trial < 5; ++trial) {
    auto rnd = test::uniform_points(10, 2, rng);
    CHECK(oracle::kcenter_exact_euclidean(rnd, 2).value ==
          doctest::Approx(kcenter_euclidean_unpruned(rnd, 2)).epsilon(1e-12));
  }
  auto three = test::uniform_points(8, 3, rng);
  CHECK(oracle::kcenter_exact_euclidean(three, 3).value ==
        doctest::Approx(kcenter_euclidean_unpruned(three, 3)).epsilon(1e-12));

  CHECK(oracle::kcenter_exact_euclidean(test::uniform_points(2, 2, rng), 2).value == 0.0);
  CHECK_THROWS_AS(oracle::kcenter_exact_euclidean(test::uniform_points(21, 2, rng), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::kcenter_exact_euclidean(test::uniform_points(5, 2, rng), 4),
                  std::invalid_argument);
}

TEST_CASE("witnesses re-evaluate to the reported value") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = test::uniform_points(14, 2, rng);
    const Metric m = Metric::euclidean(2);
    auto res = oracle::kcenter_exact_euclidean(pts, 2);
    double worst = 0.0;
    for (std::size_t g = 0; g < res.groups.size(); ++g)
      for (PointId id : res.groups[g])
        worst = std::max(worst, m.distance(pts[id].location, res.centers[g]));
    CHECK(worst == doctest::Approx(res.value).epsilon(1e-12));
  }
}

}  // TEST_SUITE
