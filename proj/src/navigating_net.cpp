#include "dkc/navigating_net.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dkc {
namespace {

constexpr int kUnbounded = std::numeric_limits<int>::min();

double pow2(int exponent) { return std::ldexp(1.0, exponent); }

// floor(log2(d)) for d > 0, exact for normal doubles.
int floor_log2(double d) { return std::ilogb(d); }

void insert_sorted(std::vector<PointId>& v, PointId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

}  // namespace

NavigatingNet::NavigatingNet(Metric metric, Options options)
    : metric_(std::move(metric)), options_(options) {
  if (!(options_.gamma >= 4.0))
    throw std::invalid_argument("navigation list constant gamma must be >= 4");
}

NavigatingNet NavigatingNet::build(Metric metric, std::span<const MetricPoint> points,
                                   Options options) {
  NavigatingNet net(std::move(metric), options);
  for (const auto& p : points) net.insert(p);
  return net;
}

NavigatingNet::Node& NavigatingNet::node(PointId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown point id " + std::to_string(id));
  return it->second;
}

const NavigatingNet::Node& NavigatingNet::node(PointId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw std::out_of_range("unknown point id " + std::to_string(id));
  return it->second;
}

std::vector<PointId> NavigatingNet::ids() const {
  std::vector<PointId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MetricPoint> NavigatingNet::points() const {
  std::vector<MetricPoint> out;
  for (PointId id : ids()) out.push_back({id, node(id).location});
  return out;
}

const Location& NavigatingNet::location(PointId id) const { return node(id).location; }

PointId NavigatingNet::root() const {
  if (!root_) throw std::logic_error("empty navigating net has no root");
  return *root_;
}

int NavigatingNet::top_exponent(PointId id) const { return node(id).top; }

int NavigatingNet::i_max() const {
  if (by_top_.empty()) return 0;
  return by_top_.rbegin()->first + 1;
}

Scale NavigatingNet::r_max() const { return Scale{i_max()}; }

Scale NavigatingNet::r_min() const {
  if (list_levels_.empty()) return Scale{0};
  return Scale{list_levels_.begin()->first - 1};
}

Scale NavigatingNet::base_scale() const {
  if (by_top_.empty()) return Scale{0};
  return Scale{by_top_.begin()->first};
}

std::vector<PointId> NavigatingNet::level(Scale r) const {
  std::vector<PointId> out;
  for (const auto& [id, n] : nodes_)
    if (n.top >= r.exponent) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const PointId> NavigatingNet::list_view(PointId y, int exponent) const {
  const Node& n = node(y);
  auto it = n.lists.find(exponent);
  if (it == n.lists.end()) return {&n.id, 1};
  return it->second;
}

std::vector<PointId> NavigatingNet::navigation_list(PointId y, Scale r) const {
  if (!in_level(y, r))
    throw std::invalid_argument("point " + std::to_string(y) + " is not in Y_r at exponent " +
                                std::to_string(r.exponent));
  auto view = list_view(y, r.exponent);
  return {view.begin(), view.end()};
}

std::size_t NavigatingNet::max_list_size() const {
  std::size_t best = nodes_.empty() ? 0 : 1;
  for (const auto& [id, n] : nodes_)
    for (const auto& [j, members] : n.lists) best = std::max(best, members.size());
  return best;
}

// ---------------------------------------------------------------------------
// list bookkeeping

void NavigatingNet::add_member(Node& owner, int exponent, PointId member) {
  auto [it, fresh] = owner.lists.try_emplace(exponent);
  if (fresh) {
    it->second.push_back(owner.id);
    ++list_levels_[exponent];
  }
  insert_sorted(it->second, member);
}

void NavigatingNet::remove_member(Node& owner, int exponent, PointId member) {
  auto it = owner.lists.find(exponent);
  if (it == owner.lists.end()) return;
  auto& v = it->second;
  auto pos = std::lower_bound(v.begin(), v.end(), member);
  if (pos != v.end() && *pos == member) v.erase(pos);
  if (v.size() <= 1) {
    owner.lists.erase(it);
    auto lv = list_levels_.find(exponent);
    if (--lv->second == 0) list_levels_.erase(lv);
  }
}

void NavigatingNet::set_list(Node& owner, int exponent, std::vector<PointId> members) {
  insert_sorted(members, owner.id);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto it = owner.lists.find(exponent);
  if (members.size() <= 1) {
    if (it != owner.lists.end()) {
      owner.lists.erase(it);
      auto lv = list_levels_.find(exponent);
      if (--lv->second == 0) list_levels_.erase(lv);
    }
    return;
  }
  if (it == owner.lists.end()) {
    owner.lists.emplace(exponent, std::move(members));
    ++list_levels_[exponent];
  } else {
    it->second = std::move(members);
  }
}

void NavigatingNet::drop_lists(Node& owner) {
  for (const auto& [j, members] : owner.lists) {
    auto lv = list_levels_.find(j);
    if (--lv->second == 0) list_levels_.erase(lv);
  }
  owner.lists.clear();
}

void NavigatingNet::set_top(Node& n, int top) {
  if (n.top != kRootTop) {
    auto it = by_top_.find(n.top);
    if (it != by_top_.end()) {
      it->second.erase(n.id);
      if (it->second.empty()) by_top_.erase(it);
    }
  }
  n.top = top;
  if (top != kRootTop) by_top_[top].insert(n.id);
}

// ---------------------------------------------------------------------------
// search

const std::vector<NavigatingNet::Hit>* NavigatingNet::Descent::at(int exponent) const {
  long k = static_cast<long>(start) - exponent;
  if (k < 0 || k >= static_cast<long>(hits.size())) return nullptr;
  return &hits[static_cast<std::size_t>(k)];
}

NavigatingNet::Descent NavigatingNet::descend(const Location& loc, double factor, int lowest,
                                              const std::set<PointId>& seeds) const {
  Descent out;
  if (!root_) return out;
  const Node& root_node = node(*root_);
  const double droot = metric_.distance(loc, root_node.location);

  int start = i_max();
  if (droot > 0.0) start = std::max(start, floor_log2(droot) + 1);
  start = std::max(start, lowest);
  out.start = start;

  std::unordered_map<PointId, double> cache;
  cache.emplace(*root_, droot);
  auto dist = [&](PointId id) {
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    double d = metric_.distance(loc, node(id).location);
    cache.emplace(id, d);
    return d;
  };

  std::vector<Hit> current;
  if (droot <= factor * pow2(start)) current.push_back({*root_, droot});
  out.hits.push_back(current);

  std::unordered_set<PointId> seen;
  for (int j = start - 1; j >= lowest; --j) {
    if (current.empty() && seeds.empty()) break;
    const double radius = factor * pow2(j);
    std::vector<Hit> next;
    seen.clear();
    for (const Hit& z : current) {
      for (PointId y : list_view(z.id, j + 1)) {
        if (!seen.insert(y).second) continue;
        double d = dist(y);
        if (d <= radius) next.push_back({y, d});
      }
    }
    for (PointId s : seeds) {
      auto it = nodes_.find(s);
      if (it == nodes_.end() || it->second.top < j || seen.contains(s)) continue;
      seen.insert(s);
      double d = dist(s);
      if (d <= radius) next.push_back({s, d});
    }
    std::sort(next.begin(), next.end(), [](const Hit& a, const Hit& b) { return a.id < b.id; });
    current = std::move(next);
    out.hits.push_back(current);
    // Below this point every level would repeat the coincident point forever.
    if (lowest == kUnbounded) {
      for (const Hit& h : current)
        if (h.distance == 0.0)
          throw std::invalid_argument("duplicate location (coincides with point " +
                                      std::to_string(h.id) + ")");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// insertion

void NavigatingNet::insert(const MetricPoint& point) {
  metric_.validate(point.location);
  if (contains(point.id))
    throw std::invalid_argument("point id " + std::to_string(point.id) + " is already live");

  if (!root_) {
    Node n{point.id, point.location, kRootTop, {}};
    nodes_.emplace(point.id, std::move(n));
    root_ = point.id;
    return;
  }

  const double droot = metric_.distance(point.location, node(*root_).location);
  if (droot == 0.0)
    throw std::invalid_argument("duplicate location (coincides with point " +
                                std::to_string(*root_) + ")");

  const Descent found = descend(point.location, 2.0 * options_.gamma, kUnbounded);

  // Highest admissible top: below every point q that is closer than 2^t(q).
  int top = floor_log2(droot);
  for (std::size_t k = 0; k < found.hits.size(); ++k) {
    const int j = found.start - static_cast<int>(k);
    for (const Hit& h : found.hits[k]) {
      if (h.id == *root_) continue;
      if (node(h.id).top == j && h.distance < pow2(j)) top = std::min(top, floor_log2(h.distance));
    }
  }

  Node fresh{point.id, point.location, kRootTop, {}};
  Node& p = nodes_.emplace(point.id, std::move(fresh)).first->second;
  set_top(p, top);

  for (std::size_t k = 0; k < found.hits.size(); ++k) {
    const int j = found.start - static_cast<int>(k);
    const auto& hits = found.hits[k];
    // p joins Y_{j-1}: it enters L_{y,j} of nearby y in Y_j.
    if (j - 1 <= top) {
      for (const Hit& h : hits)
        if (within_list_radius(h.distance, j)) add_member(node(h.id), j, point.id);
    }
    // L_{p,j+1} is the level-j ball of radius gamma * 2^(j+1).
    if (j + 1 <= top) {
      std::vector<PointId> members;
      for (const Hit& h : hits)
        if (within_list_radius(h.distance, j + 1)) members.push_back(h.id);
      if (!members.empty()) set_list(p, j + 1, std::move(members));
    }
  }
}

// ---------------------------------------------------------------------------
// deletion

void NavigatingNet::erase(PointId id) {
  if (!contains(id)) throw std::out_of_range("unknown point id " + std::to_string(id));
  if (options_.rebuild_on_delete) {
    std::vector<MetricPoint> keep;
    for (auto& p : points())
      if (p.id != id) keep.push_back(std::move(p));
    NavigatingNet fresh(metric_, options_);
    for (const auto& p : keep) fresh.insert(p);
    *this = std::move(fresh);
    return;
  }
  erase_structural(id);
}

void NavigatingNet::erase_structural(PointId id) {
  Node& p = node(id);
  const int top = p.top;
  const bool was_root = (root_ && *root_ == id);

  // Points whose covering link may have gone through p.
  std::set<std::pair<int, PointId>> pending;
  for (const auto& [j, members] : p.lists) {
    for (PointId x : members) {
      if (x == id) continue;
      const Node& nx = node(x);
      if (nx.top == j - 1 && metric_.distance(nx.location, p.location) <= pow2(j))
        pending.insert({nx.top, x});
    }
  }

  // Unlink p. For j <= top membership is symmetric, so p's own lists name
  // every owner holding p; level top+1 needs a search.
  if (!was_root) {
    const Descent up = descend(p.location, options_.gamma, top + 1);
    if (const auto* hits = up.at(top + 1)) {
      for (const Hit& h : *hits)
        if (within_list_radius(h.distance, top + 1)) remove_member(node(h.id), top + 1, id);
    }
  }
  for (const auto& [j, members] : p.lists)
    for (PointId y : members)
      if (y != id && node(y).top >= j) remove_member(node(y), j, id);

  drop_lists(p);
  set_top(p, kRootTop);  // leaves by_top_
  nodes_.erase(id);

  if (was_root) {
    root_.reset();
    if (nodes_.empty()) return;
    auto highest = by_top_.rbegin();
    const int old_top = highest->first;
    const PointId next_root = *highest->second.begin();
    Node& nr = node(next_root);
    set_top(nr, kRootTop);
    root_ = next_root;
    pending.erase({old_top, next_root});

    std::set<PointId> seeds;
    for (const auto& [t, x] : pending) seeds.insert(x);
    const Descent down = descend(nr.location, 2.0 * options_.gamma, old_top, seeds);
    std::vector<PointId> members;
    if (const auto* hits = down.at(old_top)) {
      for (const Hit& h : *hits)
        if (within_list_radius(h.distance, old_top + 1)) members.push_back(h.id);
    }
    set_list(nr, old_top + 1, std::move(members));
  }

  repair_orphans(std::move(pending));
}

void NavigatingNet::repair_orphans(std::set<std::pair<int, PointId>> pending) {
  while (!pending.empty()) {
    const auto [t, x] = *pending.begin();
    pending.erase(pending.begin());
    auto it = nodes_.find(x);
    if (it == nodes_.end() || it->second.top != t) continue;

    std::set<PointId> seeds{x};
    for (const auto& [tt, y] : pending) seeds.insert(y);

    const Descent found = descend(it->second.location, 2.0, t + 1, seeds);
    bool covered = false;
    if (const auto* hits = found.at(t + 1)) {
      for (const Hit& h : *hits)
        if (h.id != x && h.distance <= pow2(t + 1)) covered = true;
    }
    if (covered) continue;

    promote(x, seeds);
    pending.insert({t + 1, x});
  }
}

// Raises the top of an uncovered point by one level. No point of the new
// level lies within 2^level, so packing is preserved.
void NavigatingNet::promote(PointId id, const std::set<PointId>& seeds) {
  Node& x = node(id);
  const int j = x.top + 1;
  const Descent found = descend(x.location, 2.0 * options_.gamma, j - 1, seeds);

  if (const auto* hits = found.at(j + 1)) {
    for (const Hit& h : *hits)
      if (h.id != id && within_list_radius(h.distance, j + 1)) add_member(node(h.id), j + 1, id);
  }
  std::vector<PointId> members;
  if (const auto* hits = found.at(j - 1)) {
    for (const Hit& h : *hits)
      if (within_list_radius(h.distance, j)) members.push_back(h.id);
  }
  set_list(x, j, std::move(members));
  set_top(x, j);
}

// ---------------------------------------------------------------------------
// verification

InvariantReport NavigatingNet::verify_invariants() const {
  InvariantReport report;
  auto fail = [&](const std::string& msg) {
    if (report.pass) {
      report.pass = false;
      report.violation = msg;
    }
  };
  auto name = [](PointId id) { return std::to_string(id); };

  if (nodes_.empty()) {
    if (root_ || !by_top_.empty() || !list_levels_.empty())
      fail("registry: empty net with leftover bookkeeping");
    return report;
  }

  // registry
  if (!root_ || !nodes_.contains(*root_)) {
    fail("registry: missing root");
    return report;
  }
  std::map<int, std::set<PointId>> expected_tops;
  std::map<int, std::size_t> expected_levels;
  for (const auto& [id, n] : nodes_) {
    if (n.id != id) fail("registry: node keyed under the wrong id " + name(id));
    if (id == *root_) {
      if (n.top != kRootTop) fail("registry: root " + name(id) + " has a finite top");
    } else {
      if (n.top == kRootTop) fail("registry: non-root " + name(id) + " has an unbounded top");
      expected_tops[n.top].insert(id);
    }
    for (const auto& [j, members] : n.lists) {
      ++expected_levels[j];
      if (j > n.top) fail("nesting: list of " + name(id) + " stored above its top level");
      if (members.size() < 2) fail("registry: stored singleton list for " + name(id));
      if (!std::is_sorted(members.begin(), members.end()) ||
          std::adjacent_find(members.begin(), members.end()) != members.end())
        fail("registry: list of " + name(id) + " is not sorted and unique");
    }
  }
  if (expected_tops != by_top_) fail("registry: top-exponent index out of sync");
  if (expected_levels != list_levels_) fail("registry: list-level index out of sync");
  if (!report.pass) return report;

  const std::vector<PointId> all = ids();
  const std::size_t n = all.size();
  const int imax = i_max();
  const int base = base_scale().exponent;

  // |Y_{r_max}| = 1
  std::size_t at_top = 0;
  for (PointId id : all)
    if (node(id).top >= imax) ++at_top;
  if (n >= 2 && at_top != 1)
    fail("r_max: Y_{r_max} holds " + std::to_string(at_top) + " points");
  if (n >= 2 && (list_levels_.empty() || list_levels_.rbegin()->first != imax))
    fail("r_max: highest non-trivial list level differs from r_max");

  std::vector<double> row(n);
  const int levels = n >= 2 ? imax - base + 1 : 0;
  std::vector<double> nearest_by_top(static_cast<std::size_t>(std::max(levels, 0)));

  for (std::size_t a = 0; a < n && report.pass; ++a) {
    const Node& na = node(all[a]);
    for (std::size_t b = 0; b < n; ++b)
      row[b] = metric_.distance(na.location, node(all[b]).location);

    bool covered = (na.top == kRootTop);
    std::map<int, std::vector<PointId>> expected;
    std::fill(nearest_by_top.begin(), nearest_by_top.end(),
              std::numeric_limits<double>::infinity());

    for (std::size_t b = 0; b < n; ++b) {
      const Node& nb = node(all[b]);
      const double d = row[b];
      if (levels > 0) {
        int e = std::min(nb.top, imax);
        auto& slot = nearest_by_top[static_cast<std::size_t>(e - base)];
        slot = std::min(slot, d);
      }
      if (b == a) continue;
      if (d == 0.0) {
        fail("registry: points " + name(na.id) + " and " + name(nb.id) + " coincide");
        break;
      }
      const int low_top = std::min(na.top, nb.top);
      if (b > a && d < pow2(low_top)) {
        std::ostringstream os;
        os << "packing: d(" << na.id << "," << nb.id << ")=" << d << " < 2^" << low_top;
        fail(os.str());
      }
      if (nb.top > na.top && d <= pow2(na.top + 1)) covered = true;

      // Levels j where nb belongs to L_{na,j}: j <= top(a), j - 1 <= top(b),
      // d <= gamma * 2^j.
      const int hi = std::min(na.top, nb.top == kRootTop ? kRootTop : nb.top + 1);
      int lo = floor_log2(d) - floor_log2(options_.gamma) - 2;
      while (!within_list_radius(d, lo)) ++lo;
      for (int j = lo; j <= hi && j <= imax; ++j) expected[j].push_back(nb.id);
    }
    if (!report.pass) break;
    if (!covered) {
      fail("covering: point " + name(na.id) + " at top " + std::to_string(na.top) +
           " has no parent within 2^" + std::to_string(na.top + 1));
      break;
    }

    // d(z, Y_r) < 2r at every represented scale.
    double best = std::numeric_limits<double>::infinity();
    for (int j = imax; j >= base && levels > 0; --j) {
      best = std::min(best, nearest_by_top[static_cast<std::size_t>(j - base)]);
      if (!(best < 2.0 * pow2(j))) {
        fail("covering: d(" + name(na.id) + ", Y_r) >= 2r at exponent " + std::to_string(j));
        break;
      }
    }

    for (auto& [j, members] : expected) {
      members.push_back(na.id);
      std::sort(members.begin(), members.end());
      auto it = na.lists.find(j);
      if (it == na.lists.end() || it->second != members) {
        std::ostringstream os;
        os << "navigation-list: L(" << na.id << ", 2^" << j << ") should be {";
        for (PointId m : members) os << ' ' << m;
        os << " } but holds {";
        for (PointId m : list_view(na.id, j)) os << ' ' << m;
        os << " }";
        fail(os.str());
        break;
      }
    }
    for (const auto& [j, members] : na.lists)
      if (!expected.contains(j))
        fail("navigation-list: L(" + name(na.id) + ", 2^" + std::to_string(j) +
             ") holds points that do not qualify");
  }
  return report;
}

std::string NavigatingNet::dump() const {
  std::ostringstream os;
  if (list_levels_.empty()) return os.str();
  const int lo = r_min().exponent + 1;
  const int hi = r_max().exponent;
  for (int j = hi; j >= lo; --j) {
    for (PointId y : level(Scale{j})) {
      os << "L " << j << ' ' << y << " :";
      for (PointId m : list_view(y, j)) os << ' ' << m;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace dkc
