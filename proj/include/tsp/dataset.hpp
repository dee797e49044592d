#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsp {

using Index = std::int64_t;

// n points in R^d with a declared split d = p + q: columns [0,p) form the
// X block, columns [p,d) the Y block. Row-major storage.
class Dataset {
 public:
  Dataset(std::vector<double> points, Index n, int p, int q);

  Index n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int d() const { return p_ + q_; }

  double value(Index row, int col) const { return points_[static_cast<std::size_t>(row) * d_ + col]; }
  const double* row(Index r) const { return points_.data() + static_cast<std::size_t>(r) * d_; }

  // First m rows; sampling harnesses evaluate one growing stream at nested sizes.
  Dataset prefix(Index m) const;

 private:
  std::vector<double> points_;
  Index n_;
  int p_, q_, d_;
};

// CSV: one row per sample, d columns, optional header line; p and q are
// supplied out-of-band.
Dataset read_csv(std::istream& in, int p, int q);
Dataset read_csv_file(const std::string& path, int p, int q);
void write_csv(std::ostream& out, const Dataset& data);
void write_csv_file(const std::string& path, const Dataset& data);

}  // namespace tsp
