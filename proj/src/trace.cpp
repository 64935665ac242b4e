#include "dkc/trace.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dkc/afn.hpp"
#include "dkc/oracles.hpp"
#include "dkc/workload.hpp"

namespace dkc {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kRelTol = 1e-9;
constexpr std::size_t kGreedyOracleMax = 40;
constexpr std::size_t kMebOracleMax = 500;
constexpr std::size_t kKCenterOracleMax = 20;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + std::string(s) + "'");
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Location read_location(const Metric& metric, const std::vector<std::string_view>& tok,
                       std::size_t& at) {
  if (metric.is_euclidean()) {
    Coords c(metric.dim());
    for (auto& x : c) {
      if (at >= tok.size()) throw std::invalid_argument("too few coordinates");
      x = to_double(tok[at++]);
    }
    return c;
  }
  if (at >= tok.size()) throw std::invalid_argument("missing matrix row index");
  Location loc = MatrixRow{static_cast<std::size_t>(to_uint(tok[at++]))};
  metric.validate(loc);
  return loc;
}

double parse_eps(std::string_view s) {
  double eps = to_double(s);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  return eps;
}

std::size_t parse_k(std::string_view s) {
  auto k = to_uint(s);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return static_cast<std::size_t>(k);
}

Json stats_json(const QueryStats& s) {
  Json j;
  j["iterations"] = s.iterations;
  j["max_frontier"] = s.max_frontier;
  j["start_scale"] = s.start_scale.exponent;
  j["end_scale"] = s.end_scale.exponent;
  j["frontier_sizes"] = s.frontier_sizes;
  j["distance_evaluations"] = s.distance_evaluations;
  return j;
}

Json stats_json(const SolverStats& s) {
  Json j;
  j["afn_calls"] = s.afn_calls;
  j["total_iterations"] = s.total_iterations;
  j["max_iterations"] = s.max_iterations;
  j["max_frontier"] = s.max_frontier;
  j["distance_evaluations"] = s.distance_evaluations;
  j["loop_steps"] = s.loop_steps;
  if (s.guesses > 0) j["guesses"] = s.guesses;
  return j;
}

Json location_json(const Location& loc) {
  if (const auto* c = std::get_if<Coords>(&loc)) return Json(*c);
  return Json(std::get<MatrixRow>(loc).index);
}

Json oracle_json(double value, double bound, double radius) {
  Json j;
  j["value"] = value;
  j["bound"] = bound;
  j["pass"] = radius <= bound * (1.0 + kRelTol);
  return j;
}

std::vector<Coords> all_coords(const std::vector<MetricPoint>& pts) {
  std::vector<Coords> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(coords_of(p.location));
  return out;
}

}  // namespace

void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value) {
  if (key == "gamma") {
    config.gamma = to_double(value);
  } else if (key == "metric") {
    if (value == "euclidean") config.matrix = false;
    else if (value == "matrix") config.matrix = true;
    else throw std::invalid_argument("metric must be 'euclidean' or 'matrix'");
  } else if (key == "matrix_file") {
    config.matrix_file = std::string(value);
  } else if (key == "dim") {
    auto d = to_uint(value);
    if (d < 1) throw std::invalid_argument("dim must be >= 1");
    config.dim = static_cast<std::size_t>(d);
  } else if (key == "check_oracle") {
    config.check_oracle = to_bool(value);
  } else if (key == "kcenter_budget") {
    config.kcenter_budget = to_uint(value);
  } else if (key == "rebuild_on_delete") {
    config.rebuild_on_delete = to_bool(value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    try {
      if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value");
      apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

TraceOp parse_trace_op(std::string_view line, const Metric& metric) {
  auto tok = split(line);
  if (tok.empty()) throw std::invalid_argument("empty trace line");
  TraceOp op;
  const std::string_view verb = tok[0];
  std::size_t at = 1;
  auto expect_args = [&](std::size_t n) {
    if (tok.size() != n + 1)
      throw std::invalid_argument(std::string(verb) + " takes " + std::to_string(n) +
                                  " argument(s), got " + std::to_string(tok.size() - 1));
  };

  if (verb == "INSERT") {
    op.kind = TraceOp::Kind::insert;
    if (tok.size() < 2) throw std::invalid_argument("INSERT needs an id");
    op.id = to_uint(tok[at++]);
    op.location = read_location(metric, tok, at);
  } else if (verb == "DELETE") {
    expect_args(1);
    op.kind = TraceOp::Kind::erase;
    op.id = to_uint(tok[at++]);
  } else if (verb == "AFN") {
    op.kind = TraceOp::Kind::afn;
    if (tok.size() < 3) throw std::invalid_argument("AFN needs <eps> <m> and m locations");
    op.eps = parse_eps(tok[at++]);
    auto m = to_uint(tok[at++]);
    if (m < 1) throw std::invalid_argument("AFN query set must be non-empty");
    const std::size_t width = metric.is_euclidean() ? metric.dim() : 1;
    if (tok.size() - at != m * width)
      throw std::invalid_argument("AFN expects " + std::to_string(m * width) +
                                  " location values, got " + std::to_string(tok.size() - at));
    for (std::uint64_t i = 0; i < m; ++i) op.queries.push_back(read_location(metric, tok, at));
  } else if (verb == "GREEDY" || verb == "KCENTER") {
    expect_args(2);
    op.kind = verb == "GREEDY" ? TraceOp::Kind::greedy : TraceOp::Kind::kcenter;
    op.k = parse_k(tok[at++]);
    op.eps = parse_eps(tok[at++]);
  } else if (verb == "MEB") {
    expect_args(1);
    op.kind = TraceOp::Kind::meb;
    op.eps = parse_eps(tok[at++]);
  } else if (verb == "VERIFY") {
    expect_args(0);
    op.kind = TraceOp::Kind::verify;
  } else {
    throw std::invalid_argument("unknown op '" + std::string(verb) + "'");
  }
  if (at != tok.size()) throw std::invalid_argument("trailing tokens");
  return op;
}

TraceRunner::TraceRunner(RunConfig config, std::optional<Metric> metric)
    : config_(std::move(config)), metric_(std::move(metric)) {
  if (config_.gamma < 4.0) throw std::invalid_argument("gamma must be >= 4");
  if (config_.matrix && !metric_) {
    if (config_.matrix_file.empty())
      throw std::invalid_argument("matrix backend needs matrix_file");
    std::ifstream in(config_.matrix_file);
    if (!in) throw std::runtime_error("cannot open matrix file '" + config_.matrix_file + "'");
    metric_ = read_matrix(in);
  }
  if (!metric_ && config_.dim) metric_ = Metric::euclidean(*config_.dim);
  if (metric_) ensure_net(metric_->is_euclidean() ? metric_->dim() : 0);
}

void TraceRunner::ensure_net(std::size_t dim) {
  if (net_) return;
  if (!metric_) metric_ = Metric::euclidean(dim);
  NetOptions opts;
  opts.gamma = config_.gamma;
  opts.rebuild_on_delete = config_.rebuild_on_delete;
  net_.emplace(*metric_, opts);
}

std::string TraceRunner::execute(const TraceOp& op, bool& failed) {
  Json j;
  NavigatingNet& net = *net_;
  switch (op.kind) {
    case TraceOp::Kind::insert: {
      if (used_ids_.contains(op.id))
        throw std::invalid_argument("point id " + std::to_string(op.id) + " was already used");
      net.insert({op.id, op.location});
      used_ids_.insert(op.id);
      j["op"] = "insert";
      j["id"] = op.id;
      break;
    }
    case TraceOp::Kind::erase: {
      net.erase(op.id);
      j["op"] = "delete";
      j["id"] = op.id;
      break;
    }
    case TraceOp::Kind::afn: {
      auto res = afn(net, op.queries, op.eps);
      j["op"] = "afn";
      j["eps"] = op.eps;
      j["point"] = res.point;
      j["distance"] = res.distance;
      j["stats"] = stats_json(res.stats);
      if (config_.check_oracle) {
        auto pts = net.points();
        auto [best, far] = oracle::fn_exact(net.metric(), pts, op.queries);
        Json o;
        o["value"] = far;
        o["point"] = best;
        o["pass"] = far <= (1.0 + op.eps) * res.distance * (1.0 + kRelTol);
        if (!o["pass"].get<bool>()) failed = true;
        j["oracle"] = o;
      }
      break;
    }
    case TraceOp::Kind::greedy:
    case TraceOp::Kind::meb:
    case TraceOp::Kind::kcenter: {
      CoverSolution sol;
      if (op.kind == TraceOp::Kind::greedy) {
        sol = greedy_kcenter(net, op.k, op.eps);
        j["op"] = "greedy";
        j["k"] = op.k;
      } else if (op.kind == TraceOp::Kind::meb) {
        sol = meb(net, op.eps);
        j["op"] = "meb";
      } else {
        sol = euclidean_kcenter(net, op.k, op.eps, config_.kcenter_budget);
        j["op"] = "kcenter";
        j["k"] = op.k;
      }
      j["eps"] = op.eps;
      Json centers = Json::array();
      if (op.kind == TraceOp::Kind::greedy) {
        for (PointId id : sol.center_ids) centers.push_back(id);
      } else {
        for (const auto& c : sol.centers) centers.push_back(location_json(c));
      }
      j["centers"] = centers;
      j["radius"] = sol.radius;
      j["certified"] = sol.certified;
      if (!sol.certified) failed = true;
      j["stats"] = stats_json(sol.stats);
      if (config_.check_oracle) {
        auto pts = net.points();
        Json o = "skipped";
        if (op.kind == TraceOp::Kind::greedy && pts.size() <= kGreedyOracleMax && op.k <= 3) {
          double opt = oracle::kcenter_exact_metric(net.metric(), pts, op.k).value;
          o = oracle_json(opt, (2.0 + op.eps) * opt, sol.radius);
        } else if (op.kind == TraceOp::Kind::meb && op.eps <= 1.0 &&
                   pts.size() <= kMebOracleMax && net.metric().dim() <= 3) {
          double opt = oracle::meb_exact(all_coords(pts)).radius;
          o = oracle_json(opt, (1.0 + op.eps) * opt, sol.radius);
        } else if (op.kind == TraceOp::Kind::kcenter && op.eps <= 1.0 &&
                   pts.size() <= kKCenterOracleMax && op.k <= 3 && net.metric().dim() <= 3) {
          double opt = oracle::kcenter_exact_euclidean(pts, op.k).value;
          o = oracle_json(opt, (1.0 + op.eps) * opt, sol.radius);
        }
        if (o.is_object() && !o["pass"].get<bool>()) failed = true;
        j["oracle"] = o;
      }
      break;
    }
    case TraceOp::Kind::verify: {
      auto report = net.verify_invariants();
      j["op"] = "verify";
      j["pass"] = report.pass;
      if (!report.pass) {
        j["violation"] = report.violation;
        failed = true;
      }
      break;
    }
  }
  return j.dump();
}

int TraceRunner::run(std::istream& trace, std::ostream& out) {
  std::string raw;
  std::size_t number = 0;
  bool failed = false;
  while (std::getline(trace, raw)) {
    ++number;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      if (!net_) {
        auto tok = split(line);
        if (tok[0] != "INSERT")
          throw std::invalid_argument("first op on a Euclidean trace without 'dim' must be INSERT");
        if (tok.size() < 3) throw std::invalid_argument("INSERT needs an id and coordinates");
        ensure_net(tok.size() - 2);
      }
      TraceOp op = parse_trace_op(line, *metric_);
      out << execute(op, failed) << '\n';
    } catch (const std::exception& e) {
      out.flush();
      throw TraceError(number, e.what());
    }
  }
  return failed ? 1 : 0;
}

std::string random_trace(const TraceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::ostringstream out;
  out << std::setprecision(17);
  std::vector<PointId> live;
  PointId next_id = 0;

  auto coords = [&]() {
    for (std::size_t d = 0; d < spec.dim; ++d) out << ' ' << unit(rng);
  };
  const double eps_choices[] = {0.1, 0.5, 1.0};

  for (std::size_t i = 0; i < spec.ops; ++i) {
    const double u = unit(rng);
    if (live.size() < 2 || (u < 0.45 && live.size() < spec.max_live)) {
      out << "INSERT " << next_id;
      coords();
      out << '\n';
      live.push_back(next_id++);
    } else if (u < 0.70) {
      std::size_t at = static_cast<std::size_t>(rng() % live.size());
      out << "DELETE " << live[at] << '\n';
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(at));
    } else if (u < 0.82) {
      std::size_t m = 1 + rng() % 3;
      out << "AFN " << eps_choices[rng() % 3] << ' ' << m;
      for (std::size_t q = 0; q < m; ++q) coords();
      out << '\n';
    } else if (u < 0.88) {
      out << "GREEDY " << 1 + rng() % 3 << ' ' << eps_choices[rng() % 3] << '\n';
    } else if (u < 0.92) {
      out << "MEB " << eps_choices[1 + rng() % 2] << '\n';
    } else if (u < 0.93) {
      out << "KCENTER " << 1 + rng() % 2 << " 1\n";
    } else {
      out << "VERIFY\n";
    }
  }
  out << "VERIFY\n";
  return out.str();
}

}  // namespace dkc
