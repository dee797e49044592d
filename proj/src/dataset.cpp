#include "tsp/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tsp {

Dataset::Dataset(std::vector<double> points, Index n, int p, int q)
    : points_(std::move(points)), n_(n), p_(p), q_(q), d_(p + q) {
  if (n_ < 1) throw std::invalid_argument("Dataset: need n >= 1");
  if (p_ < 1 || q_ < 1) throw std::invalid_argument("Dataset: need p >= 1 and q >= 1");
  if (points_.size() != static_cast<std::size_t>(n_) * d_)
    throw std::invalid_argument("Dataset: points size does not match n*(p+q)");
  for (double v : points_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite coordinate");
  }
}

Dataset Dataset::prefix(Index m) const {
  if (m < 1 || m > n_) throw std::invalid_argument("Dataset::prefix: bad length");
  std::vector<double> head(points_.begin(), points_.begin() + static_cast<std::size_t>(m) * d_);
  return Dataset(std::move(head), m, p_, q_);
}

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(cell, &pos);
    } catch (const std::exception&) {
      return false;
    }
    // allow trailing spaces only
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size()) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

Dataset read_csv(std::istream& in, int p, int q) {
  const int d = p + q;
  std::vector<double> points;
  std::vector<double> row;
  std::string line;
  Index n = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!parse_row(line, row)) {
      if (first) {
        first = false;  // header line
        continue;
      }
      throw std::runtime_error("CSV parse error at data row " + std::to_string(n + 1));
    }
    first = false;
    if (static_cast<int>(row.size()) != d)
      throw std::runtime_error("CSV row " + std::to_string(n + 1) + " has " +
                               std::to_string(row.size()) + " columns, expected " +
                               std::to_string(d));
    points.insert(points.end(), row.begin(), row.end());
    ++n;
  }
  if (n == 0) throw std::runtime_error("CSV contains no data rows");
  return Dataset(std::move(points), n, p, q);
}

Dataset read_csv_file(const std::string& path, int p, int q) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in, p, q);
}

void write_csv(std::ostream& out, const Dataset& data) {
  char buf[64];
  for (Index i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.d(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.value(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(out, data);
}

}  // namespace tsp
