#include "dkc/kcenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dkc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be > 0");
}

void check_euclidean(const NavigatingNet& net) {
  if (!net.metric().is_euclidean())
    throw std::invalid_argument("solver requires the Euclidean backend");
  if (net.empty()) throw std::invalid_argument("solver called on an empty net");
}

PointId smallest_id(const NavigatingNet& net) {
  auto ids = net.ids();
  return *std::min_element(ids.begin(), ids.end());
}

// m + (p - m) * t
Coords step_towards(const Coords& m, const Coords& p, double t) {
  Coords out(m.size());
  for (std::size_t c = 0; c < m.size(); ++c) out[c] = m[c] + (p[c] - m[c]) * t;
  return out;
}

}  // namespace

void SolverStats::add(const QueryStats& q) {
  ++afn_calls;
  total_iterations += q.iterations;
  max_iterations = std::max(max_iterations, q.iterations);
  max_frontier = std::max(max_frontier, q.max_frontier);
  distance_evaluations += q.distance_evaluations;
}

void certify(const NavigatingNet& net, CoverSolution& solution, double rel_tol) {
  if (solution.centers.empty()) throw std::invalid_argument("solution has no centers");
  double worst = 0.0;
  for (PointId id : net.ids())
    worst = std::max(worst, dist_to_set(net.metric(), net.location(id), solution.centers));
  solution.scanned_radius = worst;
  solution.certified = worst <= solution.radius * (1.0 + rel_tol);
}

CoverSolution greedy_kcenter(const NavigatingNet& net, std::size_t k, double eps) {
  if (net.empty()) throw std::invalid_argument("solver called on an empty net");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  check_eps(eps);
  const double sub_eps = eps / 5.0;

  CoverSolution sol;
  const PointId first = smallest_id(net);
  sol.center_ids.push_back(first);
  sol.centers.push_back(net.location(first));

  AfnResult last;
  bool have_last = false;
  while (sol.centers.size() < k) {
    last = afn(net, sol.centers, sub_eps);
    sol.stats.add(last.stats);
    have_last = true;
    if (last.distance == 0.0) break;
    sol.center_ids.push_back(last.point);
    sol.centers.push_back(net.location(last.point));
    have_last = false;
  }
  if (!have_last) {
    last = afn(net, sol.centers, sub_eps);
    sol.stats.add(last.stats);
  }
  sol.radius = (1.0 + sub_eps) * last.distance;
  certify(net, sol);
  return sol;
}

std::size_t meb_iteration_count(double eps) {
  check_eps(eps);
  const double q = std::floor(6.0 / eps * (1.0 + 1e-12));
  return q < 1.0 ? 1 : static_cast<std::size_t>(q);
}

double meb_step_fraction(double delta, double eps) {
  const double a = 1.0 + eps / 3.0;
  return (delta * delta + a * a - 1.0) / (2.0 * a * a);
}

double meb_next_delta(double delta, double eps) {
  const double a = 1.0 + eps / 3.0;
  const double x = (1.0 + a * a - delta * delta) / (2.0 * a);
  const double v = 1.0 - x * x;
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

CoverSolution meb(const NavigatingNet& net, double eps, MebTrace* trace) {
  check_euclidean(net);
  check_eps(eps);
  const double sub_eps = eps / 3.0;
  const std::size_t steps = meb_iteration_count(eps);

  CoverSolution sol;
  Coords m = coords_of(net.location(smallest_id(net)));
  double delta = 1.0;
  double best = kInf;
  Coords center;
  for (std::size_t i = 0; i < steps; ++i) {
    const Location query = m;
    AfnResult far = afn(net, std::span<const Location>(&query, 1), sub_eps);
    sol.stats.add(far.stats);
    ++sol.stats.loop_steps;
    const double r = (1.0 + sub_eps) * far.distance;
    if (trace != nullptr) {
      trace->centers.push_back(m);
      trace->deltas.push_back(delta);
      trace->radii.push_back(r);
    }
    if (r < best) {
      best = r;
      center = m;
    }
    const Coords& p = coords_of(net.location(far.point));
    m = step_towards(m, p, meb_step_fraction(delta, eps));
    delta = meb_next_delta(delta, eps);
  }
  sol.centers.push_back(std::move(center));
  sol.radius = best;
  certify(net, sol);
  return sol;
}

std::optional<std::uint64_t> guess_count(std::size_t k, std::size_t length,
                                         std::uint64_t cap) {
  if (k == 0) return std::nullopt;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (total > cap / k) return std::nullopt;
    total *= k;
  }
  if (total > cap) return std::nullopt;
  return total;
}

GuessEnumerator::GuessEnumerator(std::size_t k, double eps, std::uint64_t budget)
    : k_(k), length_(0), count_(0) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  length_ = k * meb_iteration_count(eps);
  auto total = guess_count(k, length_, budget);
  if (!total)
    throw std::length_error("guess family k^(k*floor(6/eps)) exceeds budget of " +
                            std::to_string(budget));
  count_ = *total;
  current_.assign(length_, 0);
}

std::optional<GuessFunction> GuessEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return current_;
  }
  std::size_t i = length_;
  while (i > 0) {
    --i;
    if (++current_[i] < k_) return current_;
    current_[i] = 0;
  }
  done_ = true;
  return std::nullopt;
}

CoverSolution euclidean_kcenter(const NavigatingNet& net, std::size_t k, double eps,
                                std::uint64_t budget) {
  check_euclidean(net);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  check_eps(eps);
  const double sub_eps = eps / 3.0;
  GuessEnumerator family(k, eps, budget);
  const Coords p1 = coords_of(net.location(smallest_id(net)));

  CoverSolution sol;
  double best = kInf;
  std::vector<std::optional<Coords>> slot(k);
  std::vector<double> delta(k);
  std::vector<Location> defined;
  std::vector<Location> guess_centers;

  while (auto f = family.next()) {
    ++sol.stats.guesses;
    std::fill(slot.begin(), slot.end(), std::nullopt);
    std::fill(delta.begin(), delta.end(), 1.0);
    slot[0] = p1;
    double r_guess = kInf;

    for (std::size_t i = 0; i < family.length(); ++i) {
      defined.clear();
      for (const auto& s : slot)
        if (s) defined.emplace_back(*s);
      AfnResult far = afn(net, defined, sub_eps);
      sol.stats.add(far.stats);
      ++sol.stats.loop_steps;
      const double r = (1.0 + sub_eps) * far.distance;
      if (r < r_guess) {
        r_guess = r;
        guess_centers = defined;
      }
      const std::size_t j = (*f)[i];
      const Coords& p = coords_of(net.location(far.point));
      if (slot[j]) {
        slot[j] = step_towards(*slot[j], p, meb_step_fraction(delta[j], eps));
        delta[j] = meb_next_delta(delta[j], eps);
      } else {
        slot[j] = p;
        delta[j] = 1.0;
      }
    }
    if (r_guess < best) {
      best = r_guess;
      sol.centers = guess_centers;
    }
  }
  sol.radius = best;
  certify(net, sol);
  return sol;
}

}  // namespace dkc
