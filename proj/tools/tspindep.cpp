// tspindep: tree-structured-partition independence testing toolbox.
//
// Subcommands: mi, test, sweep, detect, grow, baseline-grid. Experiment
// commands require --seed; every output embeds the run-manifest hash.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tsp/baselines.hpp"
#include "tsp/harness.hpp"
#include "tsp/independence.hpp"
#include "tsp/measures.hpp"
#include "tsp/models.hpp"
#include "tsp/penalty.hpp"
#include "tsp/report.hpp"
#include "tsp/rng.hpp"
#include "tsp/tree.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tsp;

namespace {

constexpr const char* kVersion = "tspindep 0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_jobs() {
  if (const char* env = std::getenv("TSP_INDEP_JOBS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// shared option bundles

struct DataOptions {
  std::string data_path;
  int p = 0;
  int q = 0;
  std::string model_name;
  double sigma = 0.0;
  int pairs = 1;
  int dof = 2;
  double theta = 0.0;
  Index n = 0;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", data_path, "CSV dataset (one row per sample, d columns)");
    cmd->add_option("--p", p, "X-block dimension of the CSV data");
    cmd->add_option("--q", q, "Y-block dimension of the CSV data");
    cmd->add_option("--model", model_name,
                    "synthetic model: gaussian|gaussian_multi|student_t|rotated_mixture");
    cmd->add_option("--sigma", sigma, "model correlation");
    cmd->add_option("--pairs", pairs, "correlated (X_i,Y_i) pairs for multivariate models");
    cmd->add_option("--dof", dof, "student-t degrees of freedom");
    cmd->add_option("--theta", theta, "mixture rotation angle");
    cmd->add_option("--n", n, "sample count for synthetic models");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [this](const std::uint64_t& v) { seed = v; }, "master RNG seed");
  }

  bool uses_model() const { return !model_name.empty(); }

  ModelConfig model() const {
    ModelConfig m;
    m.kind = model_kind_from_name(model_name);
    m.sigma = sigma;
    m.pairs = pairs;
    m.dof = dof;
    m.theta = theta;
    m.validate();
    return m;
  }

  Dataset load() const {
    if (uses_model()) {
      if (n < 1) throw UsageError("--model requires --n");
      if (!seed) throw UsageError("--model requires --seed (experiment commands never "
                                  "run without an explicit seed)");
      return sample(model(), n, *seed);
    }
    if (data_path.empty()) throw UsageError("need either --data or --model");
    if (p < 1) throw UsageError("--data requires --p");
    if (q < 1) throw UsageError("--data requires --q");
    return read_csv_file(data_path, p, q);
  }

  json to_json() const {
    json j;
    if (uses_model()) {
      j["model"] = model_name;
      j["sigma"] = sigma;
      j["pairs"] = pairs;
      j["dof"] = dof;
      j["theta"] = theta;
      j["n"] = n;
      if (seed) j["seed"] = *seed;
    } else {
      j["data"] = data_path;
      j["p"] = p;
      j["q"] = q;
    }
    return j;
  }
};

struct ScheduleOptions {
  double w = 0.1;
  double l = 0.001;
  double alpha = 1.0;
  double base = 2.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--w", w, "probability-floor scale: b_n = w * n^-l");
    cmd->add_option("--l", l, "probability-floor exponent, in (0, 1/3)");
    cmd->add_option("--alpha", alpha, "penalty multiplier in the pruning objective");
    cmd->add_option("--base", base, "log base for reported MI (default 2)");
  }

  Schedule schedule() const {
    Schedule s;
    s.w = w;
    s.l = l;
    s.alpha = alpha;
    s.report_base = base;
    return s;
  }

  json to_json() const {
    return json{{"w", w}, {"l", l}, {"alpha", alpha}, {"base", base},
                {"delta_rule", "exp(-n^(1/3))"}, {"a_rule", "0.5/n"}};
  }
};

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad numeric list for ") + what + ": " + csv);
    }
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + what);
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  atomic_write_file(path, content);
}

std::string manifest_hash_of(const json& command_config) { return fnv1a_hex(command_config.dump()); }

json make_manifest(const std::string& command, const json& config) {
  json manifest;
  manifest["schema"] = "tspindep.manifest.v1";
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["generator"] = kGeneratorId;
  manifest["version"] = kVersion;
  manifest["manifest_hash"] = manifest_hash_of(json{{"command", command}, {"config", config}});
  return manifest;
}

json decision_record(const Dataset& data, const ScheduleOptions& sched, const TestDecision& dec,
                     const DataOptions& input, const std::string& hash) {
  json j;
  j["schema"] = "tspindep.decision.v1";
  j["method"] = "tsp";
  j["n"] = data.n();
  j["p"] = data.p();
  j["q"] = data.q();
  j["w"] = sched.w;
  j["l"] = sched.l;
  j["alpha"] = sched.alpha;
  j["b_n"] = dec.b;
  j["delta_n"] = dec.delta;
  j["a_n"] = dec.threshold;
  j["statistic_nats"] = dec.statistic_nats;
  j["mi_reported"] = dec.mi_reported;
  j["report_base"] = sched.base;
  j["leaf_count"] = dec.leaf_count;
  j["decision"] = dec.decision;
  if (input.seed) j["seed"] = *input.seed;
  j["generator"] = kGeneratorId;
  j["manifest"] = hash;
  return j;
}

// ---------------------------------------------------------------------------
// subcommands

struct MiCmd {
  DataOptions input;
  ScheduleOptions sched;
  std::string out = "-";
  std::string family_out;

  int run() {
    const json config{{"input", input.to_json()}, {"schedule", sched.to_json()}};
    const std::string hash = manifest_hash_of(json{{"command", "mi"}, {"config", config}});
    const Dataset data = input.load();
    const TestDecision dec = decide_independence(data, sched.schedule());
    emit(out, decision_record(data, sched, dec, input, hash).dump(2) + "\n");
    if (!family_out.empty()) {
      const ScheduleValues sv = schedule_at(sched.schedule(), data.n());
      const TspTree tree = grow_full_tree(data, sv.b);
      const EmbeddedFamily family = embedded_family(data, tree);
      atomic_write_file(family_out, family_csv(family, data.n(), sv.b, data.d(), sv.delta,
                                               sched.alpha, hash));
    }
    return 0;
  }
};

struct TestCmd {
  DataOptions input;
  ScheduleOptions sched;
  std::string method = "tsp";
  double p_exp = 0.2;
  double C = 1.0;
  bool equal_width = false;
  std::string out = "-";

  int run() {
    json config{{"input", input.to_json()}, {"method", method}};
    if (method == "tsp") {
      config["schedule"] = sched.to_json();
    } else {
      config["p_exp"] = p_exp;
      config["C"] = C;
      config["equal_width"] = equal_width;
    }
    const std::string hash = manifest_hash_of(json{{"command", "test"}, {"config", config}});
    const Dataset data = input.load();

    if (method == "tsp") {
      const TestDecision dec = decide_independence(data, sched.schedule());
      emit(out, decision_record(data, sched, dec, input, hash).dump(2) + "\n");
      return 0;
    }

    BaselineKind kind;
    if (method == "l1") kind = BaselineKind::l1;
    else if (method == "loglik") kind = BaselineKind::loglik;
    else if (method == "chi2") kind = BaselineKind::chi2;
    else throw UsageError("unknown --method: " + method);

    GridSpec spec;
    spec.p_exp = p_exp;
    spec.C = C;
    spec.binning = equal_width ? BinningMode::equal_width : BinningMode::quantile;
    const BaselineDecision dec = baseline_decide(data, spec, kind);

    json j;
    j["schema"] = "tspindep.decision.v1";
    j["method"] = method;
    j["n"] = data.n();
    j["p"] = data.p();
    j["q"] = data.q();
    j["p_exp"] = p_exp;
    j["C"] = C;
    j["m"] = dec.m;
    j["statistic"] = dec.statistic;
    j["threshold"] = dec.threshold;
    j["decision"] = dec.decision;
    if (input.seed) j["seed"] = *input.seed;
    j["generator"] = kGeneratorId;
    j["manifest"] = hash;
    emit(out, j.dump(2) + "\n");
    return 0;
  }
};

struct SweepCmd {
  std::string method = "tsp";
  std::string model_name = "gaussian";
  std::string sigma_list = "0.5";
  std::string theta_list;
  std::string alphas = "1e-5,5e-5,1e-4,2e-4,4e-4";
  std::string c_list = "0.05,0.1,0.15,0.2,0.3";
  double p_exp = 0.2;
  bool equal_width = false;
  double w = 0.1;
  double l = 0.001;
  int trials = 200;
  double eps = 0.05;
  Index n_min = 10;
  Index n_max = 100000;
  int per_decade = 30;
  std::optional<std::uint64_t> seed;
  int jobs = default_jobs();
  std::string out_dir;
  bool plot = false;

  json config() const {
    json j;
    j["method"] = method;
    j["model"] = model_name;
    j["sigma_list"] = sigma_list;
    j["theta_list"] = theta_list;
    if (method == "tsp") {
      j["alphas"] = alphas;
      j["w"] = w;
      j["l"] = l;
    } else {
      j["C_list"] = c_list;
      j["p_exp"] = p_exp;
      j["equal_width"] = equal_width;
    }
    j["trials"] = trials;
    j["eps"] = eps;
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["per_decade"] = per_decade;
    j["seed"] = seed ? json(*seed) : json();
    return j;
  }

  int run() {
    if (!seed) throw UsageError("sweep requires --seed");
    if (out_dir.empty()) throw UsageError("sweep requires --out-dir");
    fs::create_directories(out_dir);

    const json cfg = config();
    const std::string hash = manifest_hash_of(json{{"command", "sweep"}, {"config", cfg}});
    const SizeGrid grid = SizeGrid::log_grid(per_decade, n_min, n_max);

    const ModelKind kind = model_kind_from_name(model_name);
    const bool by_theta = kind == ModelKind::rotated_mixture;
    const std::vector<double> model_params =
        by_theta ? parse_list(theta_list.empty() ? "0.196349540849362" : theta_list, "--theta-list")
                 : parse_list(sigma_list, "--sigma-list");

    std::vector<CurveRow> rows;
    std::vector<SvgSeries> series;
    for (double mp : model_params) {
      ModelConfig h1;
      h1.kind = kind;
      if (by_theta)
        h1.theta = mp;
      else
        h1.sigma = mp;
      h1.validate();

      TradeoffCurve curve;
      if (method == "tsp") {
        Schedule s;
        s.w = w;
        s.l = l;
        const auto alpha_values = parse_list(alphas, "--alphas");
        curve = tradeoff_sweep(h1, s, alpha_values, eps, trials, *seed, grid, jobs);
      } else {
        BaselineKind bk;
        if (method == "l1") bk = BaselineKind::l1;
        else if (method == "loglik") bk = BaselineKind::loglik;
        else if (method == "chi2") bk = BaselineKind::chi2;
        else throw UsageError("unknown --method: " + method);
        const auto c_values = parse_list(c_list, "--C-list");
        curve = baseline_tradeoff_sweep(h1, p_exp, bk, c_values, eps, trials, *seed, grid, jobs,
                                        equal_width ? BinningMode::equal_width
                                                    : BinningMode::quantile);
      }

      SvgSeries line;
      line.label = (by_theta ? "theta=" : "sigma=") + format_double(mp);
      for (const auto& pt : curve.points) {
        rows.push_back(CurveRow{method, mp, pt.param, pt.m0, pt.m1, eps});
        if (!pt.m0.censored && !pt.m1.censored)
          line.points.emplace_back(static_cast<double>(pt.m0.value),
                                   static_cast<double>(pt.m1.value));
      }
      series.push_back(std::move(line));
    }

    atomic_write_file((fs::path(out_dir) / "curves.csv").string(), curves_csv(rows, hash));
    atomic_write_file((fs::path(out_dir) / "manifest.json").string(),
                      make_manifest("sweep", cfg).dump(2) + "\n");
    if (plot) {
      atomic_write_file((fs::path(out_dir) / "curves.svg").string(),
                        svg_plot("detection trade-off (" + method + ")", "M0(eps)", "M1(eps)",
                                 series, hash));
    }
    return 0;
  }
};

struct DetectCmd {
  std::string model_name = "gaussian";
  double sigma = 0.0;
  double theta = 0.0;
  std::string hypothesis = "h0";
  std::string alphas = "2e-4";
  double w = 0.1;
  double l = 0.001;
  int trials = 200;
  Index n_min = 10;
  Index n_max = 100000;
  int per_decade = 30;
  std::optional<std::uint64_t> seed;
  int jobs = default_jobs();
  std::string out_dir;
  std::string fixture;

  json config() const {
    json j;
    j["model"] = model_name;
    j["sigma"] = sigma;
    j["theta"] = theta;
    j["hypothesis"] = hypothesis;
    j["alphas"] = alphas;
    j["w"] = w;
    j["l"] = l;
    j["trials"] = trials;
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["per_decade"] = per_decade;
    j["seed"] = seed ? json(*seed) : json();
    j["fixture"] = fixture;
    return j;
  }

  int run() {
    if (out_dir.empty()) throw UsageError("detect requires --out-dir");
    const bool fixture_mode = !fixture.empty();
    if (!fixture_mode && !seed) throw UsageError("detect requires --seed");
    fs::create_directories(out_dir);

    const json cfg = config();
    const std::string hash = manifest_hash_of(json{{"command", "detect"}, {"config", cfg}});
    const SizeGrid grid = SizeGrid::log_grid(per_decade, n_min, n_max);
    Hypothesis hyp;
    if (hypothesis == "h0" || hypothesis == "H0") hyp = Hypothesis::H0;
    else if (hypothesis == "h1" || hypothesis == "H1") hyp = Hypothesis::H1;
    else throw UsageError("--hypothesis must be h0 or h1");

    if (fixture_mode) {
      // forced decision strings, for deterministic golden-file tests
      std::vector<DetectionRecord> records;
      std::stringstream ss(fixture);
      std::string bits;
      while (std::getline(ss, bits, ',')) {
        if (bits.size() != grid.sizes.size())
          throw UsageError("fixture string length must equal the grid size");
        DetectionRecord rec;
        rec.seed = 0;
        const char wrong = hyp == Hypothesis::H0 ? '1' : '0';
        for (std::size_t g = 0; g < bits.size(); ++g) {
          if (bits[g] != '0' && bits[g] != '1') throw UsageError("fixture strings are 0/1 only");
          rec.decisions.push_back(bits[g] == '1');
          if (bits[g] == wrong) rec.t_tilde = grid.sizes[g];
        }
        rec.censored = bits.back() == wrong;
        records.push_back(std::move(rec));
      }
      if (records.empty()) throw UsageError("empty fixture");
      atomic_write_file((fs::path(out_dir) / "records.csv").string(),
                        records_csv(records, hyp, hash));
      atomic_write_file((fs::path(out_dir) / "pmf.csv").string(), pmf_csv(records, grid, hash));
      atomic_write_file((fs::path(out_dir) / "manifest.json").string(),
                        make_manifest("detect", cfg).dump(2) + "\n");
      return 0;
    }

    ModelConfig model;
    model.kind = model_kind_from_name(model_name);
    model.sigma = sigma;
    model.theta = theta;
    model.validate();

    const auto alpha_values = parse_list(alphas, "--alphas");
    for (std::size_t a = 0; a < alpha_values.size(); ++a) {
      Schedule s;
      s.w = w;
      s.l = l;
      s.alpha = alpha_values[a];
      const auto records = detection_times(model, s, grid, trials, *seed, hyp, jobs);
      const std::string tag = "_alpha" + std::to_string(a);
      atomic_write_file((fs::path(out_dir) / ("records" + tag + ".csv")).string(),
                        records_csv(records, hyp, hash));
      atomic_write_file((fs::path(out_dir) / ("pmf" + tag + ".csv")).string(),
                        pmf_csv(records, grid, hash));
    }
    atomic_write_file((fs::path(out_dir) / "manifest.json").string(),
                      make_manifest("detect", cfg).dump(2) + "\n");
    return 0;
  }
};

struct GrowCmd {
  DataOptions input;
  double b = 0.0;
  double w = 0.0;
  double l = 0.001;
  std::string out = "-";

  int run() {
    const json config{{"input", input.to_json()}, {"b", b}, {"w", w}, {"l", l}};
    const std::string hash = manifest_hash_of(json{{"command", "grow"}, {"config", config}});
    const Dataset data = input.load();
    double floor = b;
    if (floor <= 0.0) {
      if (w <= 0.0) throw UsageError("grow needs --b or --w/--l");
      Schedule s;
      s.w = w;
      s.l = l;
      floor = schedule_at(s, data.n()).b;
    }
    emit(out, tree_to_json(grow_full_tree(data, floor), hash));
    return 0;
  }
};

struct BaselineGridCmd {
  DataOptions input;
  int m = 0;
  double p_exp = 0.2;
  bool equal_width = false;
  std::string out = "-";
  std::string measures_out;

  int run() {
    const json cfg{{"input", input.to_json()}, {"m", m}, {"p_exp", p_exp}};
    const std::string hash = manifest_hash_of(json{{"command", "baseline-grid"}, {"config", cfg}});
    const Dataset data = input.load();
    const int bins = m > 0 ? m : bins_per_dimension(data.n(), p_exp);
    const auto grid = product_grid(data, bins,
                                   equal_width ? BinningMode::equal_width : BinningMode::quantile);
    json j;
    j["schema"] = "tspindep.grid.v1";
    j["m"] = bins;
    j["x_cells"] = grid.x_cells();
    j["y_cells"] = grid.y_cells();
    j["edges"] = grid.edges;
    j["manifest"] = hash;
    emit(out, j.dump(2) + "\n");
    if (!measures_out.empty()) {
      const auto cells = grid_cells(grid);
      atomic_write_file(measures_out, measures_csv(cell_measures(data, cells), hash));
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree-structured partition independence test and MI estimator"};
  app.require_subcommand(1);

  MiCmd mi;
  auto* mi_cmd = app.add_subcommand("mi", "estimate mutual information");
  mi.input.attach(mi_cmd);
  mi.sched.attach(mi_cmd);
  mi_cmd->add_option("--out", mi.out, "output path (- for stdout)");
  mi_cmd->add_option("--family-csv", mi.family_out,
                     "also write the pruning family table (k, divergence, penalty, objective)");

  TestCmd test;
  auto* test_cmd = app.add_subcommand("test", "run an independence test");
  test.input.attach(test_cmd);
  test.sched.attach(test_cmd);
  test_cmd->add_option("--method", test.method, "tsp|l1|loglik|chi2");
  test_cmd->add_option("--p-exp", test.p_exp, "baseline bins exponent m(n) = n^p");
  test_cmd->add_option("--C", test.C, "baseline threshold multiplier");
  test_cmd->add_flag("--equal-width", test.equal_width, "equal-width bins instead of quantile");
  test_cmd->add_option("--out", test.out, "output path (- for stdout)");

  SweepCmd sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "trade-off curves over alpha or C");
  sweep_cmd->add_option("--method", sweep.method, "tsp|l1|loglik|chi2");
  sweep_cmd->add_option("--model", sweep.model_name, "H1 model kind");
  sweep_cmd->add_option("--sigma-list", sweep.sigma_list, "comma-separated H1 correlations");
  sweep_cmd->add_option("--theta-list", sweep.theta_list, "comma-separated mixture rotations");
  sweep_cmd->add_option("--alphas", sweep.alphas, "comma-separated alpha values (tsp)");
  sweep_cmd->add_option("--C-list", sweep.c_list, "comma-separated C values (baselines)");
  sweep_cmd->add_option("--p-exp", sweep.p_exp, "baseline bins exponent");
  sweep_cmd->add_flag("--equal-width", sweep.equal_width, "equal-width baseline bins");
  sweep_cmd->add_option("--w", sweep.w, "TSP probability-floor scale");
  sweep_cmd->add_option("--l", sweep.l, "TSP probability-floor exponent");
  sweep_cmd->add_option("--trials", sweep.trials, "Monte-Carlo trials per hypothesis");
  sweep_cmd->add_option("--eps", sweep.eps, "confidence level for M(eps)");
  sweep_cmd->add_option("--n-min", sweep.n_min, "smallest grid size");
  sweep_cmd->add_option("--n-max", sweep.n_max, "largest grid size");
  sweep_cmd->add_option("--per-decade", sweep.per_decade, "grid points per decade");
  sweep_cmd->add_option_function<std::uint64_t>(
      "--seed", [&sweep](const std::uint64_t& v) { sweep.seed = v; }, "master seed");
  sweep_cmd->add_option("--jobs", sweep.jobs, "parallel trial workers");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "output directory");
  sweep_cmd->add_flag("--plot", sweep.plot, "also write curves.svg");

  DetectCmd detect;
  auto* detect_cmd = app.add_subcommand("detect", "detection-time records and pmfs");
  detect_cmd->add_option("--model", detect.model_name, "model kind");
  detect_cmd->add_option("--sigma", detect.sigma, "model correlation");
  detect_cmd->add_option("--theta", detect.theta, "mixture rotation");
  detect_cmd->add_option("--hypothesis", detect.hypothesis, "h0|h1");
  detect_cmd->add_option("--alphas", detect.alphas, "comma-separated alpha values");
  detect_cmd->add_option("--w", detect.w, "TSP probability-floor scale");
  detect_cmd->add_option("--l", detect.l, "TSP probability-floor exponent");
  detect_cmd->add_option("--trials", detect.trials, "Monte-Carlo trials");
  detect_cmd->add_option("--n-min", detect.n_min, "smallest grid size");
  detect_cmd->add_option("--n-max", detect.n_max, "largest grid size");
  detect_cmd->add_option("--per-decade", detect.per_decade, "grid points per decade");
  detect_cmd->add_option_function<std::uint64_t>(
      "--seed", [&detect](const std::uint64_t& v) { detect.seed = v; }, "master seed");
  detect_cmd->add_option("--jobs", detect.jobs, "parallel trial workers");
  detect_cmd->add_option("--out-dir", detect.out_dir, "output directory");
  detect_cmd->add_option("--fixture", detect.fixture,
                         "forced decision strings (debug/golden-file mode)");

  GrowCmd grow;
  auto* grow_cmd = app.add_subcommand("grow", "dump a full tree as JSON (debug)");
  grow.input.attach(grow_cmd);
  grow_cmd->add_option("--b", grow.b, "probability floor (overrides --w/--l)");
  grow_cmd->add_option("--w", grow.w, "probability-floor scale");
  grow_cmd->add_option("--l", grow.l, "probability-floor exponent");
  grow_cmd->add_option("--out", grow.out, "output path (- for stdout)");

  BaselineGridCmd bgrid;
  auto* bgrid_cmd = app.add_subcommand("baseline-grid", "dump a product grid (debug)");
  bgrid.input.attach(bgrid_cmd);
  bgrid_cmd->add_option("--m", bgrid.m, "bins per dimension (overrides --p-exp)");
  bgrid_cmd->add_option("--p-exp", bgrid.p_exp, "bins exponent m(n) = n^p");
  bgrid_cmd->add_flag("--equal-width", bgrid.equal_width, "equal-width bins");
  bgrid_cmd->add_option("--out", bgrid.out, "grid JSON path (- for stdout)");
  bgrid_cmd->add_option("--measures", bgrid.measures_out, "also write a cell-measures CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mi_cmd->parsed()) return mi.run();
    if (test_cmd->parsed()) return test.run();
    if (sweep_cmd->parsed()) return sweep.run();
    if (detect_cmd->parsed()) return detect.run();
    if (grow_cmd->parsed()) return grow.run();
    if (bgrid_cmd->parsed()) return bgrid.run();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
