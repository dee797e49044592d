#include "tsp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "tsp/penalty.hpp"

namespace tsp {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string header_line(const std::string& schema, const std::string& manifest_hash) {
  return "# schema=" + schema + " manifest=" + manifest_hash + "\n";
}

std::string complexity_field(const ComplexityResult& r) {
  return r.censored ? "censored" : std::to_string(r.value);
}

}  // namespace

std::string records_csv(std::span<const DetectionRecord> records, Hypothesis hypothesis,
                        const std::string& manifest_hash) {
  std::string out = header_line("tspindep.records.v1", manifest_hash);
  out += "trial,seed,hypothesis,decisions,t_tilde,censored\n";
  const char* hyp = hypothesis == Hypothesis::H0 ? "H0" : "H1";
  for (std::size_t t = 0; t < records.size(); ++t) {
    const auto& r = records[t];
    out += std::to_string(t) + ',' + std::to_string(r.seed) + ',' + hyp + ',';
    for (auto d : r.decisions) out += d ? '1' : '0';
    out += ',' + std::to_string(r.t_tilde) + ',' + (r.censored ? "1" : "0") + '\n';
  }
  return out;
}

std::string pmf_csv(std::span<const DetectionRecord> records, const SizeGrid& grid,
                    const std::string& manifest_hash) {
  std::string out = header_line("tspindep.pmf.v1", manifest_hash);
  out += "t_value,mass\n";
  const double total = static_cast<double>(records.size());
  auto mass_row = [&](const std::string& label, std::size_t count) {
    out += label + ',' + format_double(static_cast<double>(count) / total) + '\n';
  };
  std::size_t zero = 0, censored = 0;
  for (const auto& r : records) {
    if (r.censored)
      ++censored;
    else if (r.t_tilde == 0)
      ++zero;
  }
  mass_row("0", zero);
  for (Index m : grid.sizes) {
    if (m == grid.n_max()) break;  // t_tilde = n_max is exactly the censored bucket
    std::size_t count = 0;
    for (const auto& r : records)
      if (!r.censored && r.t_tilde == m) ++count;
    mass_row(std::to_string(m), count);
  }
  mass_row("censored", censored);
  return out;
}

std::string curves_csv(std::span<const CurveRow> rows, const std::string& manifest_hash) {
  std::string out = header_line("tspindep.curves.v1", manifest_hash);
  out += "method,model_param,alpha,M0,M1,epsilon\n";
  for (const auto& row : rows) {
    out += row.method + ',' + format_double(row.model_param) + ',' + format_double(row.param) +
           ',' + complexity_field(row.m0) + ',' + complexity_field(row.m1) + ',' +
           format_double(row.eps) + '\n';
  }
  return out;
}

std::string family_csv(const EmbeddedFamily& family, Index n, double b, int d, double delta,
                       double alpha, const std::string& manifest_hash) {
  std::string out = header_line("tspindep.family.v1", manifest_hash);
  out += "k,divergence_nats,penalty,objective\n";
  for (const auto& member : family.members) {
    const Index k = static_cast<Index>(member.size());
    const double pen = penalty_r(n, b, d, delta, k);
    out += std::to_string(k) + ',' + format_double(member.divergence) + ',' +
           format_double(pen) + ',' + format_double(member.divergence - alpha * pen) + '\n';
  }
  return out;
}

std::string measures_csv(const CellMeasures& m, const std::string& manifest_hash) {
  std::string out = header_line("tspindep.measures.v1", manifest_hash);
  out += "cell,count,joint,product\n";
  for (std::size_t c = 0; c < m.joint.size(); ++c) {
    out += std::to_string(c) + ',' + std::to_string(m.counts[c]) + ',' +
           format_double(m.joint[c]) + ',' + format_double(m.product[c]) + '\n';
  }
  return out;
}

namespace {

struct PlotRange {
  double lo = 0.0, hi = 1.0;
};

PlotRange log_range(double lo, double hi) {
  if (!(lo > 0.0)) lo = 1.0;
  if (!(hi > lo)) hi = lo * 10.0;
  return PlotRange{std::floor(std::log10(lo)), std::ceil(std::log10(hi))};
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::string& y_label, std::span<const SvgSeries> series,
                     const std::string& manifest_hash) {
  constexpr double kWidth = 640, kHeight = 480;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (x > 0) { x_min = std::min(x_min, x); x_max = std::max(x_max, x); }
      if (y > 0) { y_min = std::min(y_min, y); y_max = std::max(y_max, y); }
    }
  }
  const PlotRange xr = log_range(x_min, x_max);
  const PlotRange yr = log_range(y_min, y_max);

  const auto map_x = [&](double x) {
    return kLeft + (std::log10(x) - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight);
  };
  const auto map_y = [&](double y) {
    return kHeight - kBottom -
           (std::log10(y) - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom);
  };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  char buf[256];
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  if (!manifest_hash.empty()) out += "<!-- manifest=" + manifest_hash + " -->\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
                title.c_str());
  out += buf;

  // axes box and decade ticks
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  out += buf;
  for (int e = static_cast<int>(xr.lo); e <= static_cast<int>(xr.hi); ++e) {
    const double px = map_x(std::pow(10.0, e));
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"11\">1e%d"
                  "</text>\n",
                  px, kTop, px, kHeight - kBottom, px, kHeight - kBottom + 16, e);
    out += buf;
  }
  for (int e = static_cast<int>(yr.lo); e <= static_cast<int>(yr.hi); ++e) {
    const double py = map_y(std::pow(10.0, e));
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\">1e%d"
                  "</text>\n",
                  kLeft, py, kWidth - kRight, py, kLeft - 6, py + 4, e);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"13\">%s</text>\n",
                kLeft + (kWidth - kLeft - kRight) / 2, kHeight - 12, x_label.c_str());
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"13\" "
                "transform=\"rotate(-90 16 %.1f)\">%s</text>\n",
                kTop + (kHeight - kTop - kBottom) / 2, kTop + (kHeight - kTop - kBottom) / 2,
                y_label.c_str());
  out += buf;

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % (sizeof(kColors) / sizeof(kColors[0]))];
    std::string pts;
    for (const auto& [x, y] : series[s].points) {
      if (!(x > 0) || !(y > 0)) continue;
      std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", map_x(x), map_y(y));
      pts += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                  pts.c_str(), color);
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                  kWidth - kRight - 150.0, kTop + 16.0 + 14.0 * static_cast<double>(s), color,
                  series[s].label.c_str());
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tsp
