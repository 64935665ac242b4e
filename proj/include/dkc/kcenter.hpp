#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dkc/afn.hpp"
#include "dkc/navigating_net.hpp"

namespace dkc {

/// Totals over every furthest-neighbor query a solver issued.
struct SolverStats {
  std::size_t afn_calls = 0;
  std::size_t total_iterations = 0;
  std::size_t max_iterations = 0;
  std::size_t max_frontier = 0;
  std::size_t distance_evaluations = 0;
  std::size_t loop_steps = 0;  // MEB or guessing steps, summed over guesses
  std::size_t guesses = 0;     // guess functions evaluated

  void add(const QueryStats& q);
};

/// At most k centers and a radius such that every live point lies within
/// `radius` of some center.
struct CoverSolution {
  std::vector<Location> centers;
  std::vector<PointId> center_ids;  // filled when centers are points of P
  double radius = 0.0;
  SolverStats stats;

  /// Exhaustive scan at return: max over live points of d(p, centers).
  double scanned_radius = 0.0;
  bool certified = false;
};

/// Recomputes the covering radius against every live point and records
/// whether it is within `radius` (relative slack `rel_tol`).
void certify(const NavigatingNet& net, CoverSolution& solution, double rel_tol = 1e-9);

/// Farthest-first traversal with (1+eps/5)-approximate furthest-neighbor
/// queries; (2+eps)-approximate metric k-center. Starts from the smallest
/// live id and stops adding centers once every point is a center.
CoverSolution greedy_kcenter(const NavigatingNet& net, std::size_t k, double eps);

/// Number of MEB iterations, floor(6/eps), at least 1.
std::size_t meb_iteration_count(double eps);

/// Fraction of the segment m -> p travelled by the MEB step for the current
/// distance bound `delta` (in units of the optimal radius).
double meb_step_fraction(double delta, double eps);

/// Next distance bound after one step. Clamped at 0 once delta <= eps/3.
double meb_next_delta(double delta, double eps);

/// Per-iteration record of the MEB loop, for tests.
struct MebTrace {
  std::vector<Coords> centers;  // m_i
  std::vector<double> deltas;   // delta_i
  std::vector<double> radii;    // r_i
};

/// (1+eps)-approximate minimum enclosing ball of the live points (Euclidean
/// backend only).
CoverSolution meb(const NavigatingNet& net, double eps, MebTrace* trace = nullptr);

/// One guess: f(1..k*floor(6/eps)) with values in {0..k-1} (slot indices).
using GuessFunction = std::vector<std::size_t>;

/// Enumerates every function {1..length} -> {0..k-1} exactly once in base-k
/// counting order (last position varies fastest).
class GuessEnumerator {
 public:
  /// Throws std::length_error if k^length exceeds `budget`.
  GuessEnumerator(std::size_t k, double eps, std::uint64_t budget = kDefaultBudget);

  static constexpr std::uint64_t kDefaultBudget = 1'000'000;

  std::size_t length() const { return length_; }
  std::uint64_t count() const { return count_; }

  /// Next function, or nullopt when exhausted.
  std::optional<GuessFunction> next();

 private:
  std::size_t k_;
  std::size_t length_;
  std::uint64_t count_;
  GuessFunction current_;
  bool started_ = false;
  bool done_ = false;
};

/// k^length, or nullopt on overflow past `cap`.
std::optional<std::uint64_t> guess_count(std::size_t k, std::size_t length,
                                         std::uint64_t cap);

/// (1+eps)-approximate Euclidean k-center by exhaustive guessing over which
/// tentative center each step refines. f(i) names the slot of the point found
/// at step i; p1 seeds slot 0 (slot labels are interchangeable). A slot's
/// first point is taken as-is with delta = 1.
CoverSolution euclidean_kcenter(const NavigatingNet& net, std::size_t k, double eps,
                                std::uint64_t budget = GuessEnumerator::kDefaultBudget);

}  // namespace dkc
