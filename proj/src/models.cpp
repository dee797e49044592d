#include "tsp/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tsp/measures.hpp"
#include "tsp/rng.hpp"

namespace tsp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMixtureSd = 0.22360679774997896;  // sqrt(0.05)
}  // namespace

void ModelConfig::validate() const {
  if (!(std::abs(sigma) < 1.0)) throw std::invalid_argument("model: need |sigma| < 1");
  if (pairs < 1) throw std::invalid_argument("model: need pairs >= 1");
  if (dof < 1) throw std::invalid_argument("model: need dof >= 1");
  if (!(theta >= 0.0 && theta <= kPi / 4.0))
    throw std::invalid_argument("model: need theta in [0, pi/4]");
  if (kind == ModelKind::gaussian && pairs != 1)
    throw std::invalid_argument("model: scalar gaussian has pairs = 1; use gaussian_multi");
  if (kind == ModelKind::rotated_mixture && pairs != 1)
    throw std::invalid_argument("model: rotated_mixture is bivariate");
}

int ModelConfig::x_dims() const { return kind == ModelKind::rotated_mixture ? 1 : pairs; }
int ModelConfig::y_dims() const { return x_dims(); }

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::gaussian: return "gaussian";
    case ModelKind::gaussian_multi: return "gaussian_multi";
    case ModelKind::student_t: return "student_t";
    case ModelKind::rotated_mixture: return "rotated_mixture";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "gaussian") return ModelKind::gaussian;
  if (name == "gaussian_multi") return ModelKind::gaussian_multi;
  if (name == "student_t") return ModelKind::student_t;
  if (name == "rotated_mixture") return ModelKind::rotated_mixture;
  throw std::invalid_argument("unknown model kind: " + name);
}

ModelConfig null_version(const ModelConfig& m) {
  ModelConfig h0 = m;
  h0.sigma = 0.0;
  h0.theta = 0.0;
  return h0;
}

Dataset sample(const ModelConfig& model, Index n, std::uint64_t seed) {
  model.validate();
  if (n < 1) throw std::invalid_argument("sample: need n >= 1");
  const int p = model.x_dims();
  const int d = 2 * p;
  const double sigma = model.sigma;
  const double comp = std::sqrt(1.0 - sigma * sigma);

  Rng rng(seed);
  std::vector<double> points(static_cast<std::size_t>(n) * d);

  for (Index i = 0; i < n; ++i) {
    double* row = points.data() + static_cast<std::size_t>(i) * d;
    switch (model.kind) {
      case ModelKind::gaussian:
      case ModelKind::gaussian_multi: {
        for (int j = 0; j < p; ++j) {
          const double g1 = rng.gaussian();
          const double g2 = rng.gaussian();
          row[j] = g1;
          row[p + j] = sigma * g1 + comp * g2;
        }
        break;
      }
      case ModelKind::student_t: {
        // elliptical construction: correlated gaussian vector scaled by
        // sqrt(dof / chi2_dof)
        for (int j = 0; j < p; ++j) {
          const double g1 = rng.gaussian();
          const double g2 = rng.gaussian();
          row[j] = g1;
          row[p + j] = sigma * g1 + comp * g2;
        }
        double chi2 = 0.0;
        for (int j = 0; j < model.dof; ++j) {
          const double g = rng.gaussian();
          chi2 += g * g;
        }
        const double scale = std::sqrt(static_cast<double>(model.dof) / chi2);
        for (int j = 0; j < d; ++j) row[j] *= scale;
        break;
      }
      case ModelKind::rotated_mixture: {
        const double u = rng.uniform();
        const int c = std::min(3, static_cast<int>(u * 4.0));
        const double mx = (c & 2) ? -1.0 : 1.0;
        const double my = (c & 1) ? -1.0 : 1.0;
        const double x = mx + kMixtureSd * rng.gaussian();
        const double y = my + kMixtureSd * rng.gaussian();
        const double ct = std::cos(model.theta);
        const double st = std::sin(model.theta);
        row[0] = ct * x - st * y;
        row[1] = st * x + ct * y;
        break;
      }
    }
  }
  return Dataset(std::move(points), n, p, p);
}

double gaussian_mi(double sigma, int pairs) {
  if (!(std::abs(sigma) < 1.0)) throw std::invalid_argument("gaussian_mi: need |sigma| < 1");
  if (pairs < 1) throw std::invalid_argument("gaussian_mi: need pairs >= 1");
  return static_cast<double>(pairs) * (-0.5 * std::log2(1.0 - sigma * sigma));
}

double sigma_for_target_mi(double target_bits, int pairs) {
  if (target_bits < 0.0) throw std::invalid_argument("sigma_for_target_mi: need target >= 0");
  if (pairs < 1) throw std::invalid_argument("sigma_for_target_mi: need pairs >= 1");
  const double per_pair = target_bits / static_cast<double>(pairs);
  return std::sqrt(1.0 - std::exp2(-2.0 * per_pair));
}

double analytic_mi_nats(const ModelConfig& m) {
  if (m.kind != ModelKind::gaussian && m.kind != ModelKind::gaussian_multi)
    throw std::invalid_argument("analytic_mi_nats: gaussian kinds only");
  return static_cast<double>(m.pairs) * (-0.5 * std::log(1.0 - m.sigma * m.sigma));
}

double oracle_statistic(const Dataset& data, const ModelConfig& model) {
  if (model.kind != ModelKind::gaussian && model.kind != ModelKind::gaussian_multi)
    throw std::invalid_argument("oracle_statistic: gaussian kinds only");
  model.validate();
  const int p = model.x_dims();
  if (data.p() != p || data.q() != p)
    throw std::invalid_argument("oracle_statistic: dataset/model dimension mismatch");
  const double sigma = model.sigma;
  const double one_minus = 1.0 - sigma * sigma;
  const double log_det = -0.5 * std::log(one_minus);

  double sum = 0.0;
  for (Index i = 0; i < data.n(); ++i) {
    const double* z = data.row(i);
    for (int j = 0; j < p; ++j) {
      const double x = z[j];
      const double y = z[p + j];
      sum += log_det - sigma * (sigma * (x * x + y * y) - 2.0 * x * y) / (2.0 * one_minus);
    }
  }
  return sum / static_cast<double>(data.n());
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double normal_pdf(double x) { return 0.3989422804014326779 * std::exp(-0.5 * x * x); }

struct Simpson {
  double tol;
  int max_depth;
  const AxisCell* cell;  // for error reporting
  std::size_t cell_index;

  template <typename F>
  double run(const F& f, double a, double b) const {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(f, a, b, fa, fb, fm, whole, 0);
  }

  template <typename F>
  double recurse(const F& f, double a, double b, double fa, double fb, double fm, double whole,
                 int depth) const {
    if (depth > max_depth)
      throw std::runtime_error("regret_report: quadrature failed to converge on cell " +
                               std::to_string(cell_index));
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (std::abs(left + right - whole) <= 15.0 * tol)
      return left + right + (left + right - whole) / 15.0;
    return recurse(f, a, m, fa, fm, flm, left, depth + 1) +
           recurse(f, m, b, fm, fb, frm, right, depth + 1);
  }
};

// P(A) for the bivariate standard normal with correlation sigma, via a 1-D
// integral of the conditional CDF. Unbounded sides are clipped at +-10 sd.
double gaussian_cell_probability(const AxisCell& cell, double sigma, std::size_t cell_index) {
  const double s = std::sqrt(1.0 - sigma * sigma);
  const double lx = std::max(cell.bounds[0].lo, -10.0);
  const double hx = std::min(cell.bounds[0].hi, 10.0);
  if (!(hx > lx)) return 0.0;
  const double ly = cell.bounds[1].lo;
  const double hy = cell.bounds[1].hi;
  const auto f = [&](double x) {
    const double upper = std::isinf(hy) ? 1.0 : normal_cdf((hy - sigma * x) / s);
    const double lower = std::isinf(ly) ? 0.0 : normal_cdf((ly - sigma * x) / s);
    return normal_pdf(x) * (upper - lower);
  };
  const Simpson quad{1e-12, 40, &cell, cell_index};
  return quad.run(f, lx, hx);
}

double standard_box_probability(const Interval& iv) {
  const double hi = std::isinf(iv.hi) ? 1.0 : normal_cdf(iv.hi);
  const double lo = std::isinf(iv.lo) ? 0.0 : normal_cdf(iv.lo);
  return hi - lo;
}

}  // namespace

RegretReport regret_report(const Dataset& data, std::span<const AxisCell> cells,
                           const ModelConfig& model) {
  if (model.kind != ModelKind::gaussian)
    throw std::invalid_argument("regret_report: scalar gaussian model only");
  model.validate();
  if (data.d() != 2) throw std::invalid_argument("regret_report: need d = 2 data");

  double d_true = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].bounds.size() != 2)
      throw std::invalid_argument("regret_report: cells must be bivariate");
    const double pa = gaussian_cell_probability(cells[c], model.sigma, c);
    if (pa <= 0.0) continue;
    const double qa = standard_box_probability(cells[c].bounds[0]) *
                      standard_box_probability(cells[c].bounds[1]);
    if (qa <= 0.0)
      throw std::runtime_error("regret_report: P > 0 with Q = 0 on cell " + std::to_string(c));
    d_true += pa * std::log(pa / qa);
  }

  RegretReport rep;
  rep.true_restricted_nats = d_true;
  rep.oracle_nats = oracle_statistic(data, model);
  rep.analytic_nats = analytic_mi_nats(model);
  rep.statistic_nats = restricted_divergence(cell_measures(data, cells));
  rep.term_i = rep.oracle_nats - rep.analytic_nats;
  rep.term_ii = rep.analytic_nats - d_true;
  rep.term_iii = d_true - rep.statistic_nats;
  return rep;
}

}  // namespace tsp
