#include "dkc/workload.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dkc {
namespace {

struct LineReader {
  std::istream& in;
  std::size_t number = 0;

  // Next non-blank, non-comment line.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++number;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("line " + std::to_string(number) + ": " + what);
  }
};

bool at_end(std::istringstream& ss) {
  ss >> std::ws;
  return ss.eof();
}

std::size_t grid_side(std::size_t n, std::size_t dim) {
  std::size_t side = 1;
  for (;;) {
    long double cells = 1;
    for (std::size_t i = 0; i < dim && cells < static_cast<long double>(n); ++i) cells *= side;
    if (cells >= static_cast<long double>(n)) return side;
    ++side;
  }
}

std::vector<double> read_row(LineReader& reader, std::size_t n) {
  std::string line;
  if (!reader.next(line)) reader.fail("expected a matrix row, found end of file");
  std::istringstream ss(line);
  std::vector<double> row(n);
  for (auto& v : row)
    if (!(ss >> v)) reader.fail("expected " + std::to_string(n) + " distances");
  if (!at_end(ss)) reader.fail("trailing content in matrix row");
  return row;
}

Metric read_matrix_body(LineReader& reader, std::size_t n) {
  std::vector<double> table;
  table.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = read_row(reader, n);
    table.insert(table.end(), row.begin(), row.end());
  }
  try {
    return Metric::matrix(std::move(table), n);
  } catch (const std::invalid_argument& e) {
    reader.fail(e.what());
  }
}

}  // namespace

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform-cube") return Distribution::uniform_cube;
  if (name == "gaussian-clusters") return Distribution::gaussian_clusters;
  if (name == "line") return Distribution::line;
  if (name == "grid") return Distribution::grid;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

std::string_view to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform_cube: return "uniform-cube";
    case Distribution::gaussian_clusters: return "gaussian-clusters";
    case Distribution::line: return "line";
    case Distribution::grid: return "grid";
  }
  return "?";
}

std::vector<MetricPoint> generate(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("n must be >= 1");
  if (spec.dim < 1) throw std::invalid_argument("D must be >= 1");
  std::vector<MetricPoint> out;
  out.reserve(spec.n);
  std::mt19937_64 rng(spec.seed);

  switch (spec.distribution) {
    case Distribution::uniform_cube: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t i = 0; i < spec.n; ++i) {
        Coords c(spec.dim);
        for (auto& x : c) x = u(rng);
        out.push_back({i, std::move(c)});
      }
      break;
    }
    case Distribution::gaussian_clusters: {
      if (spec.clusters < 1) throw std::invalid_argument("clusters must be >= 1");
      if (!(spec.spread > 0.0)) throw std::invalid_argument("spread must be > 0");
      if (!(spec.separation > 0.0)) throw std::invalid_argument("separation must be > 0");
      std::normal_distribution<double> g(0.0, spec.spread);
      for (std::size_t i = 0; i < spec.n; ++i) {
        Coords c(spec.dim);
        for (auto& x : c) x = g(rng);
        c[0] += static_cast<double>(i % spec.clusters) * spec.separation;
        out.push_back({i, std::move(c)});
      }
      break;
    }
    case Distribution::line: {
      for (std::size_t i = 0; i < spec.n; ++i) {
        Coords c(spec.dim, 0.0);
        c[0] = static_cast<double>(i);
        out.push_back({i, std::move(c)});
      }
      break;
    }
    case Distribution::grid: {
      const std::size_t side = grid_side(spec.n, spec.dim);
      for (std::size_t i = 0; i < spec.n; ++i) {
        Coords c(spec.dim);
        std::size_t rest = i;
        for (std::size_t d = spec.dim; d-- > 0;) {
          c[d] = static_cast<double>(rest % side);
          rest /= side;
        }
        out.push_back({i, std::move(c)});
      }
      break;
    }
  }
  return out;
}

void write_points(std::ostream& out, std::size_t dim, const std::vector<MetricPoint>& points) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "dim " << dim << '\n';
  for (const auto& p : points) {
    buf << p.id;
    for (double x : coords_of(p.location)) buf << ' ' << x;
    buf << '\n';
  }
  out << buf.str();
}

Metric read_matrix(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) reader.fail("empty matrix file");
  std::istringstream ss(line);
  std::string tag;
  long long n = 0;
  if (!(ss >> tag >> n) || tag != "matrix" || n < 1 || !at_end(ss))
    reader.fail("expected header 'matrix <n>'");
  return read_matrix_body(reader, static_cast<std::size_t>(n));
}

PointSet read_points(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) reader.fail("empty point file");
  std::istringstream header(line);
  std::string tag;
  long long count = 0;
  if (!(header >> tag >> count) || count < 1 || !at_end(header) ||
      (tag != "dim" && tag != "matrix"))
    reader.fail("expected header 'dim <D>' or 'matrix <n>'");

  PointSet set;
  const auto size = static_cast<std::size_t>(count);
  if (tag == "matrix") {
    set.metric = read_matrix_body(reader, size);
    for (std::size_t i = 0; i < size; ++i) set.points.push_back({i, MatrixRow{i}});
    if (reader.next(line)) reader.fail("trailing content after matrix");
    return set;
  }
  set.metric = Metric::euclidean(size);
  while (reader.next(line)) {
    std::istringstream ss(line);
    long long id = -1;
    if (!(ss >> id) || id < 0) reader.fail("expected a non-negative point id");
    Coords c(size);
    for (auto& x : c)
      if (!(ss >> x) || !std::isfinite(x)) reader.fail("expected " + std::to_string(size) + " coordinates");
    if (!at_end(ss)) reader.fail("trailing content after coordinates");
    set.points.push_back({static_cast<PointId>(id), std::move(c)});
  }
  return set;
}

}  // namespace dkc
