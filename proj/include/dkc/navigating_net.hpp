#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dkc/metric.hpp"

namespace dkc {

/// A scale r = 2^exponent. All scale arithmetic is done on the exponent.
struct Scale {
  int exponent = 0;

  double radius() const { return std::ldexp(1.0, exponent); }
  Scale half() const { return Scale{exponent - 1}; }
  Scale twice() const { return Scale{exponent + 1}; }

  friend auto operator<=>(const Scale&, const Scale&) = default;
};

struct InvariantReport {
  bool pass = true;
  std::string violation;  // first violation found, empty on pass

  explicit operator bool() const { return pass; }
};

struct NetOptions {
  double gamma = 4.0;
  /// Replace structural repair on deletion by a full rebuild. Differential
  /// testing only.
  bool rebuild_on_delete = false;
};

/// Hierarchy of nested r-nets Y_r (r = 2^i) over a dynamic point set, with
/// navigation lists L_{y,r} = { z in Y_{r/2} : d(z, y) <= gamma * r }.
///
/// Every live point p carries a top exponent t(p): p belongs to Y_{2^i} for
/// all i <= t(p). The root has an unbounded top and is the single member of
/// Y_{r_max}. The hierarchy is a valid sequence of nested nets iff
///
///   packing:  d(p, q) >= 2^min(t(p), t(q))            for all p != q
///   covering: some q with t(q) > t(p) has d(p, q) <= 2^(t(p)+1)   (p != root)
///
/// Navigation lists are stored only when they hold more than the owner; an
/// absent list is the singleton {owner}.
///
/// Updates are single-writer; any number of readers may query between them.
class NavigatingNet {
 public:
  static constexpr int kRootTop = std::numeric_limits<int>::max();

  using Options = NetOptions;

  explicit NavigatingNet(Metric metric) : NavigatingNet(std::move(metric), Options{}) {}
  NavigatingNet(Metric metric, Options options);

  /// Sequential insertion of `points`.
  static NavigatingNet build(Metric metric, std::span<const MetricPoint> points,
                             Options options = {});

  void insert(const MetricPoint& point);
  void erase(PointId id);

  bool contains(PointId id) const { return nodes_.contains(id); }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  const Metric& metric() const { return metric_; }
  double gamma() const { return options_.gamma; }
  const Options& options() const { return options_; }

  /// Live ids, ascending.
  std::vector<PointId> ids() const;
  std::vector<MetricPoint> points() const;
  const Location& location(PointId id) const;

  /// Throws std::logic_error on an empty net.
  PointId root() const;
  int top_exponent(PointId id) const;
  bool in_level(PointId id, Scale r) const { return top_exponent(id) >= r.exponent; }

  /// Smallest scale with |Y_r| = 1.
  Scale r_max() const;
  /// Largest scale at and below which every navigation list is a singleton.
  Scale r_min() const;
  /// Largest scale r with Y_r = P.
  Scale base_scale() const;

  /// Number of scales holding a non-singleton navigation list.
  std::size_t materialized_scale_count() const { return list_levels_.size(); }

  /// Y_r, ascending ids. O(n).
  std::vector<PointId> level(Scale r) const;

  /// L_{y,r}, ascending ids. Throws std::invalid_argument if y is not in Y_r.
  std::vector<PointId> navigation_list(PointId y, Scale r) const;

  /// Zero-copy view of L_{y,r}; the caller guarantees y is in Y_r. Valid
  /// until the next update.
  std::span<const PointId> list_view(PointId y, int exponent) const;

  /// Exhaustive O(n^2 log Delta) recomputation of every structural property.
  InvariantReport verify_invariants() const;

  /// One line per (scale, owner) over the materialized scales, scales
  /// descending, owners ascending:  `L <exponent> <owner> : <members...>`.
  std::string dump() const;

  std::size_t max_list_size() const;

 private:
  friend struct NetTestAccess;

  struct Node {
    PointId id = 0;
    Location location;
    int top = 0;
    std::map<int, std::vector<PointId>> lists;  // exponent -> sorted members incl. owner
  };

  struct Hit {
    PointId id;
    double distance;
  };

  /// hits[k] = members of Y_{2^(start - k)} within factor * 2^(start - k) of
  /// `loc`, found by descending navigation lists from the root. `seeds` are
  /// tested directly at every level (points whose covering link may be
  /// missing during repair). Stops after `lowest` or once a level is empty.
  struct Descent {
    int start = 0;
    std::vector<std::vector<Hit>> hits;

    const std::vector<Hit>* at(int exponent) const;
  };
  Descent descend(const Location& loc, double factor, int lowest,
                  const std::set<PointId>& seeds = {}) const;

  bool within_list_radius(double d, int exponent) const {
    return d <= options_.gamma * std::ldexp(1.0, exponent);
  }

  Node& node(PointId id);
  const Node& node(PointId id) const;

  void add_member(Node& owner, int exponent, PointId member);
  void remove_member(Node& owner, int exponent, PointId member);
  void set_list(Node& owner, int exponent, std::vector<PointId> members);
  void drop_lists(Node& owner);

  void set_top(Node& n, int top);
  void promote(PointId id, const std::set<PointId>& seeds);
  void repair_orphans(std::set<std::pair<int, PointId>> pending);
  void erase_structural(PointId id);

  int i_max() const;

  Metric metric_;
  Options options_;
  std::unordered_map<PointId, Node> nodes_;
  std::optional<PointId> root_;
  std::map<int, std::set<PointId>> by_top_;  // non-root points by top exponent
  std::map<int, std::size_t> list_levels_;   // exponent -> number of stored lists
};

}  // namespace dkc
