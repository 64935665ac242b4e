#include "dkc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace dkc::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoverSlack = 1e-12;

double euclid(const Coords& a, const Coords& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool inside(const Ball& ball, const Coords& p) {
  if (ball.radius < 0.0) return false;
  return euclid(ball.center, p) <= ball.radius * (1.0 + kCoverSlack) + 1e-300;
}

void check_meb_guard(std::span<const Coords> points) {
  if (points.empty()) throw std::invalid_argument("MEB of an empty set");
  const std::size_t dim = points.front().size();
  if (dim == 0 || dim > 3) throw std::invalid_argument("MEB oracle supports 1 <= D <= 3");
  if (points.size() > 500) throw std::invalid_argument("MEB oracle supports at most 500 points");
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("MEB oracle: dimension mismatch");
}

// Smallest ball with all of `support` on its boundary, falling back to the
// best covering ball over proper subsets when the support is degenerate.
Ball ball_through(std::span<const Coords> support) {
  Ball b;
  if (support.empty()) {
    b.radius = -1.0;
    return b;
  }
  if (circumscribed_ball(support, b)) return b;
  Ball best;
  best.radius = kInf;
  std::vector<Coords> subset;
  for (std::size_t skip = 0; skip < support.size(); ++skip) {
    subset.clear();
    for (std::size_t i = 0; i < support.size(); ++i)
      if (i != skip) subset.push_back(support[i]);
    Ball cand = ball_through(subset);
    bool covers = std::all_of(support.begin(), support.end(),
                              [&](const Coords& p) { return inside(cand, p); });
    if (covers && cand.radius < best.radius) best = cand;
  }
  return best;
}

Ball welzl(std::vector<Coords>& pts, std::size_t n, std::vector<Coords>& boundary,
           std::size_t dim) {
  if (n == 0 || boundary.size() == dim + 1) return ball_through(boundary);
  const Coords& p = pts[n - 1];
  Ball b = welzl(pts, n - 1, boundary, dim);
  if (inside(b, p)) return b;
  boundary.push_back(p);
  b = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return b;
}

template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k == 0 || k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    visit(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::pair<PointId, double> fn_exact(const Metric& metric, std::span<const MetricPoint> points,
                                    std::span<const Location> queries) {
  if (points.empty()) throw std::invalid_argument("fn_exact: empty point set");
  if (queries.empty()) throw std::invalid_argument("fn_exact: empty query set");
  PointId best_id = 0;
  double best = -1.0;
  for (const auto& p : points) {
    double d = dist_to_set(metric, p.location, queries);
    if (d > best || (d == best && p.id < best_id)) {
      best = d;
      best_id = p.id;
    }
  }
  return {best_id, best};
}

double covering_radius(const Metric& metric, std::span<const MetricPoint> points,
                       std::span<const Location> centers) {
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, dist_to_set(metric, p.location, centers));
  return worst;
}

Result kcenter_exact_metric(const Metric& metric, std::span<const MetricPoint> points,
                            std::size_t k) {
  if (points.empty()) throw std::invalid_argument("kcenter_exact_metric: empty point set");
  if (k == 0) throw std::invalid_argument("kcenter_exact_metric: k must be >= 1");
  if (points.size() > 40 || k > 3)
    throw std::invalid_argument("kcenter_exact_metric: guard is |P| <= 40, k <= 3");

  const std::size_t n = points.size();
  Result res;
  if (k >= n) {
    for (const auto& p : points) res.center_ids.push_back(p.id);
    res.value = 0.0;
    return res;
  }
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = metric.distance(points[i].location, points[j].location);

  double best = kInf;
  std::vector<std::size_t> best_idx;
  for_each_combination(n, k, [&](std::span<const std::size_t> c) {
    double worst = 0.0;
    for (std::size_t p = 0; p < n && worst < best; ++p) {
      double near = kInf;
      for (std::size_t ci : c) near = std::min(near, d[p * n + ci]);
      worst = std::max(worst, near);
    }
    if (worst < best) {
      best = worst;
      best_idx.assign(c.begin(), c.end());
    }
  });
  res.value = best;
  for (std::size_t i : best_idx) res.center_ids.push_back(points[i].id);
  return res;
}

bool circumscribed_ball(std::span<const Coords> support, Ball& out) {
  const std::size_t s = support.size();
  if (s == 0) return false;
  const Coords& p0 = support[0];
  const std::size_t dim = p0.size();
  if (s == 1) {
    out.center = p0;
    out.radius = 0.0;
    return true;
  }
  if (s > dim + 1) return false;
  const std::size_t m = s - 1;
  std::vector<Coords> v(m, Coords(dim));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < dim; ++c) v[i][c] = support[i + 1][c] - p0[c];

  // Gram system 2 <v_i, v_k> lambda_k = |v_i|^2, augmented.
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      double dot = 0.0;
      for (std::size_t c = 0; c < dim; ++c) dot += v[i][c] * v[k][c];
      a[i][k] = 2.0 * dot;
    }
    a[i][m] = 0.5 * a[i][i];
    scale = std::max(scale, std::abs(a[i][i]));
  }
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-12 * scale) return false;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  out.center = p0;
  for (std::size_t i = 0; i < m; ++i) {
    double lambda = a[i][m] / a[i][i];
    for (std::size_t c = 0; c < dim; ++c) out.center[c] += lambda * v[i][c];
  }
  out.radius = 0.0;
  for (const auto& p : support) out.radius = std::max(out.radius, euclid(out.center, p));
  return true;
}

Ball meb_exact(std::span<const Coords> points) {
  check_meb_guard(points);
  std::vector<Coords> pts(points.begin(), points.end());
  std::mt19937 rng(0x5eedu);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Coords> boundary;
  Ball b = welzl(pts, pts.size(), boundary, pts.front().size());
  // Final exact radius against the input, absorbing rounding in the support solve.
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, euclid(b.center, p));
  b.radius = r;
  return b;
}

Ball meb_support_enumeration(std::span<const Coords> points) {
  check_meb_guard(points);
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  Ball best;
  best.radius = kInf;
  std::vector<Coords> support;
  for (std::size_t s = 1; s <= std::min(dim + 1, n); ++s) {
    for_each_combination(n, s, [&](std::span<const std::size_t> idx) {
      support.clear();
      for (std::size_t i : idx) support.push_back(points[i]);
      Ball cand;
      if (!circumscribed_ball(support, cand) || cand.radius >= best.radius) return;
      for (const auto& p : points)
        if (!inside(cand, p)) return;
      best = std::move(cand);
    });
  }
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, euclid(best.center, p));
  best.radius = r;
  return best;
}

Result kcenter_exact_euclidean(std::span<const MetricPoint> points, std::size_t k) {
  if (points.empty()) throw std::invalid_argument("kcenter_exact_euclidean: empty point set");
  if (k == 0) throw std::invalid_argument("kcenter_exact_euclidean: k must be >= 1");
  if (points.size() > 20 || k > 3)
    throw std::invalid_argument("kcenter_exact_euclidean: guard is |P| <= 20, k <= 3");

  const std::size_t n = points.size();
  std::vector<Coords> pts;
  for (const auto& p : points) pts.push_back(coords_of(p.location));
  check_meb_guard(pts);

  Result res;
  if (k == 1) {
    Ball b = meb_exact(pts);
    res.value = b.radius;
    res.centers.push_back(b.center);
    std::vector<PointId> all;
    for (const auto& p : points) all.push_back(p.id);
    res.groups.push_back(std::move(all));
    return res;
  }

  // Branch and bound over canonical group labelings. A group's MEB only grows
  // as points join it, so a partial labeling whose group radius already
  // reaches the incumbent cannot improve on it.
  double best = kInf;
  std::vector<std::size_t> label(n, 0), best_label;
  std::vector<std::vector<Coords>> groups(k);

  auto evaluate = [&]() {
    double worst = 0.0;
    for (const auto& g : groups)
      if (!g.empty()) worst = std::max(worst, meb_exact(g).radius);
    return worst;
  };

  auto recurse = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      double v = evaluate();
      if (v < best) {
        best = v;
        best_label = label;
      }
      return;
    }
    const std::size_t limit = std::min(used + 1, k);
    for (std::size_t g = 0; g < limit; ++g) {
      groups[g].push_back(pts[i]);
      if (meb_exact(groups[g]).radius < best) {
        label[i] = g;
        self(self, i + 1, std::max(used, g + 1));
      }
      groups[g].pop_back();
    }
  };
  recurse(recurse, 0, 0);

  res.value = best;
  res.groups.assign(k, {});
  std::vector<std::vector<Coords>> final_groups(k);
  for (std::size_t i = 0; i < n; ++i) {
    res.groups[best_label[i]].push_back(points[i].id);
    final_groups[best_label[i]].push_back(pts[i]);
  }
  std::erase_if(res.groups, [](const auto& g) { return g.empty(); });
  for (const auto& g : final_groups)
    if (!g.empty()) res.centers.push_back(meb_exact(g).center);
  return res;
}

}  // namespace dkc::oracle
