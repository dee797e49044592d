#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsp/harness.hpp"
#include "tsp/measures.hpp"
#include "tsp/pruning.hpp"

namespace tsp {

// FNV-1a 64-bit, hex-encoded; used as the run-manifest hash embedded in
// every output file.
std::string fnv1a_hex(const std::string& bytes);

// Write-temp-then-rename so partially written outputs are never observed.
void atomic_write_file(const std::string& path, const std::string& content);

std::string format_double(double v);  // deterministic %.12g

// One line per record: trial, seed, hypothesis, decisions packed as a 0/1
// string, T_tilde, censored.
std::string records_csv(std::span<const DetectionRecord> records, Hypothesis hypothesis,
                        const std::string& manifest_hash);

// Empirical pmf of T_tilde over {0} + grid + {censored}; masses sum to 1.
std::string pmf_csv(std::span<const DetectionRecord> records, const SizeGrid& grid,
                    const std::string& manifest_hash);

struct CurveRow {
  std::string method;
  double model_param = 0.0;  // sigma or theta of the H1 scenario
  double param = 0.0;        // alpha or C
  ComplexityResult m0;
  ComplexityResult m1;
  double eps = 0.05;
};

std::string curves_csv(std::span<const CurveRow> rows, const std::string& manifest_hash);

// (k, divergence_nats, penalty, objective) for a pruning family.
std::string family_csv(const EmbeddedFamily& family, Index n, double b, int d, double delta,
                       double alpha, const std::string& manifest_hash);

// Debug export of per-cell measures: cell id, count, joint, product.
std::string measures_csv(const CellMeasures& m, const std::string& manifest_hash);

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Minimal log-log line plot; no external plotting dependencies, no
// timestamps, byte-stable for fixed input.
std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, std::span<const SvgSeries> series,
                     const std::string& manifest_hash = "");

}  // namespace tsp
