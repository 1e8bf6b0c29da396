#include "cli.hpp"

#include "copfdr/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#ifndef COPFDR_VERSION
#define COPFDR_VERSION "0.0.0"
#endif

namespace copfdr::cli {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::size_t line) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError("line " + std::to_string(line) + ": cannot parse '" + std::string(t) +
                     "' as a number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

bool skippable(std::string_view line) {
  const std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

struct Manifest {
  std::string command;
  json parameters = json::object();
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  json to_json() const {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return json{{"command", command},
                {"parameters", parameters},
                {"seed", seed},
                {"tool_version", std::string(tool_version())},
                {"wall_time_ms",
                 std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()}};
  }

  void write_comments(std::ostream& os) const {
    const json j = to_json();
    os << "# command: " << command << '\n'
       << "# parameters: " << parameters.dump() << '\n'
       << "# seed: " << seed << '\n'
       << "# tool_version: " << tool_version() << '\n'
       << "# wall_time_ms: " << j["wall_time_ms"].get<long long>() << '\n';
  }
};

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

private:
  std::ofstream file_;
  std::ostream* stream_;
};

void require_finite(const BoundReport& r) {
  for (double v : {r.sharper_upper, r.b, r.lower, r.gamma_min, r.z_star, r.fz_at_zstar,
                   r.bound_sd_per_draw}) {
    if (!std::isfinite(v)) throw std::runtime_error("bound report has non-finite entries");
  }
}

json report_json(const BoundReport& r) {
  return json{{"classical_upper", r.classical_upper},
              {"sharper_upper", r.sharper_upper},
              {"b", r.b},
              {"lower", r.lower},
              {"gamma_min", r.gamma_min},
              {"gamma_min_se", r.gamma_min_se},
              {"gamma_floor", r.gamma_floor},
              {"z_star", r.z_star},
              {"fz_at_zstar", r.fz_at_zstar},
              {"bound_sd_per_draw", r.bound_sd_per_draw},
              {"sharper_upper_se", r.sharper_upper_se},
              {"mc_draws", r.mc_draws}};
}

// Flags shared by several subcommands.
struct CommonFlags {
  std::string family = "clayton";
  double eta = kNaN;
  std::size_t m = 20;
  std::size_t m0 = 16;
  double q = 0.05;
  std::size_t draws = 100000;
  std::size_t reps = 100000;
  std::uint64_t seed = 1;
  bool fast = false;
  std::string out;
};

void add_family(CLI::App* app, CommonFlags& f) {
  app->add_option("--family", f.family, "independence, clayton or gumbel")
      ->check(CLI::IsMember({"independence", "clayton", "gumbel"}))
      ->capture_default_str();
}

void add_problem(CLI::App* app, CommonFlags& f) {
  app->add_option("--m", f.m, "number of hypotheses")->capture_default_str();
  app->add_option("--m0", f.m0, "number of true nulls")->capture_default_str();
  app->add_option("--q", f.q, "nominal FDR level")->capture_default_str();
}

void add_seed_out(CLI::App* app, CommonFlags& f) {
  app->add_option("--seed", f.seed, "random seed")->capture_default_str();
  app->add_option("--out", f.out, "output file (stdout when omitted)");
}

void add_fast(CLI::App* app, CommonFlags& f) {
  app->add_flag("--fast", f.fast, "use 1000 replications and draws unless given explicitly");
}

void apply_fast(CLI::App* app, CommonFlags& f) {
  if (!f.fast) return;
  if (app->count("--draws") == 0) f.draws = 1000;
  if (app->get_option_no_throw("--reps") != nullptr && app->count("--reps") == 0) f.reps = 1000;
}

CopulaModel model_from(const CommonFlags& f) {
  const Family family = parse_family(f.family);
  if (family != Family::Independence && std::isnan(f.eta)) {
    throw UsageError("--eta is required for family " + f.family);
  }
  return model_at(family, f.eta);
}

void require_positive(std::size_t value, const char* name) {
  if (value == 0) throw UsageError(std::string(name) + " must be >= 1");
}

int cmd_bounds(const CommonFlags& f, std::ostream& out) {
  Manifest manifest{"bounds"};
  const CopulaModel model = model_from(f);
  require_positive(f.draws, "--draws");
  RandomStream stream(f.seed);
  const BoundReport report = sharper_upper_bound(model, f.m, f.m0, f.q, f.draws, stream);
  require_finite(report);
  manifest.seed = f.seed;
  manifest.parameters = {{"family", f.family}, {"eta", model.eta()}, {"m", f.m},
                         {"m0", f.m0},         {"q", f.q},           {"draws", f.draws}};
  json doc = report_json(report);
  doc["family"] = f.family;
  doc["eta"] = model.eta();
  doc["manifest"] = manifest.to_json();
  Sink sink(f.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_curve(const CommonFlags& f, const std::string& grid,
              const std::vector<std::string>& metric_names, std::ostream& out) {
  Manifest manifest{"curve"};
  CurveOptions opts;
  opts.family = parse_family(f.family);
  if (grid.empty()) {
    if (opts.family != Family::Independence) throw UsageError("--eta-grid is required");
    opts.etas = {0.0};
  } else {
    opts.etas = parse_eta_grid(grid);
  }
  opts.m = f.m;
  opts.m0 = f.m0;
  opts.q = f.q;
  opts.reps = f.reps;
  opts.draws = f.draws;
  opts.seed = f.seed;
  opts.metrics = parse_metrics(metric_names);
  require_positive(opts.draws, "--draws");
  if (opts.reps < 2) throw UsageError("--reps must be >= 2");
  const std::vector<CurvePoint> points = compute_curve(opts);

  manifest.seed = f.seed;
  manifest.parameters = {{"family", f.family}, {"eta_grid", grid.empty() ? "0" : grid},
                         {"m", f.m},           {"m0", f.m0},
                         {"q", f.q},           {"reps", f.reps},
                         {"draws", f.draws},   {"metrics", metric_names}};
  Sink sink(f.out, out);
  std::ostream& os = sink.stream();
  manifest.write_comments(os);
  for (std::size_t c = 0; c < std::size(kCurveColumns); ++c) {
    os << (c ? "," : "") << kCurveColumns[c];
  }
  os << '\n';
  for (const CurvePoint& p : points) {
    const std::vector<double> values = curve_row_values(p);
    for (std::size_t c = 0; c < values.size(); ++c) {
      os << (c ? "," : "") << format_double(values[c]);
    }
    os << '\n';
  }
  return kExitOk;
}

Matrix table_to_matrix(const CsvTable& table) {
  if (table.rows.empty()) throw UsageError("data file has no rows");
  Matrix data(table.rows.size(), table.rows.front().size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) data(r, c) = table.rows[r][c];
  }
  return data;
}

FitResult fit_from_file(const std::string& path, bool header, Family family,
                        KendallEstimate* tau_out = nullptr) {
  const Matrix data = table_to_matrix(read_csv_file(path, header));
  KendallEstimate tau = kendall_tau_sample(data);
  FitResult fit = realized_copula_fit(tau, family);
  if (tau_out) *tau_out = std::move(tau);
  return fit;
}

int cmd_estimate(const CommonFlags& f, const std::string& data_path, bool header,
                 std::ostream& out) {
  Manifest manifest{"estimate"};
  const Family family = parse_family(f.family);
  KendallEstimate tau;
  const FitResult fit = fit_from_file(data_path, header, family, &tau);
  manifest.parameters = {{"family", f.family}, {"data", data_path}, {"header", header}};
  json doc{{"family", f.family},     {"eta_hat", fit.eta_hat}, {"mean_tau", fit.mean_tau},
           {"objective", fit.objective}, {"clamped", fit.clamped}, {"n", tau.n},
           {"m", tau.m}};
  doc["manifest"] = manifest.to_json();
  Sink sink(f.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

struct TestFlags {
  std::string pvalues;
  std::string eta_from;
  bool header = false;
  bool adjust = false;
  std::size_t m0_assumed = 0;
};

int cmd_test(CLI::App* app, const CommonFlags& f, const TestFlags& t, std::ostream& out) {
  Manifest manifest{"test"};
  const std::vector<double> p = read_pvalues_file(t.pvalues);
  if (p.empty()) throw UsageError("p-value file is empty");
  const std::size_t m = p.size();
  const bool has_family = app->count("--family") > 0;
  const bool has_eta = app->count("--eta") > 0;
  if (has_eta && !t.eta_from.empty()) throw UsageError("give either --eta or --eta-from");
  if (t.adjust && !has_family) throw UsageError("--adjust needs --family");

  json doc;
  double q_used = f.q;
  double eta_used = kNaN;
  std::optional<CopulaModel> model;
  if (has_family) {
    const Family family = parse_family(f.family);
    if (family == Family::Independence) {
      model = CopulaModel::independence();
    } else if (!t.eta_from.empty()) {
      const FitResult fit = fit_from_file(t.eta_from, t.header, family);
      eta_used = fit.eta_hat;
      doc["eta_fit"] = {{"mean_tau", fit.mean_tau}, {"clamped", fit.clamped},
                        {"objective", fit.objective}};
      model = model_at(family, eta_used);
    } else if (has_eta) {
      eta_used = f.eta;
      model = model_at(family, eta_used);
    } else if (t.adjust) {
      throw UsageError("--adjust with family " + f.family + " needs --eta or --eta-from");
    }
  }
  const std::size_t m0_assumed = t.m0_assumed == 0 ? m : t.m0_assumed;
  if (m0_assumed > m) throw UsageError("--m0-assumed must not exceed the number of p-values");

  if (t.adjust) {
    if (m < 2) throw UsageError("--adjust needs at least 2 p-values");
    require_positive(f.draws, "--draws");
    const CalibrationResult cal =
        calibrate_q(*model, m, m0_assumed, f.q, f.draws, RandomStream(f.seed));
    q_used = cal.q_adjusted;
    doc["bracketed"] = cal.bracketed;
    doc["calibration_evaluations"] = cal.evaluations;
    doc["bound_report"] = report_json(cal.report);
  }
  const StepUpResult result = linear_step_up(p, q_used);
  std::vector<std::size_t> rejected;
  rejected.reserve(result.rejected.size());
  for (std::size_t idx : result.rejected) rejected.push_back(idx + 1);

  doc["rejected"] = rejected;
  doc["k"] = result.k;
  doc["m"] = m;
  doc["q"] = f.q;
  doc["q_used"] = q_used;
  doc["eta_used"] = std::isnan(eta_used) ? json(nullptr) : json(eta_used);
  doc["family"] = has_family ? json(f.family) : json(nullptr);
  doc["m0_assumed"] = m0_assumed;
  manifest.seed = f.seed;
  manifest.parameters = {{"pvalues", t.pvalues}, {"q", f.q},           {"adjust", t.adjust},
                         {"m0_assumed", m0_assumed}, {"draws", f.draws}};
  if (has_family) manifest.parameters["family"] = f.family;
  if (has_eta) manifest.parameters["eta"] = f.eta;
  if (!t.eta_from.empty()) manifest.parameters["eta_from"] = t.eta_from;
  doc["manifest"] = manifest.to_json();
  Sink sink(f.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_simulate(const CommonFlags& f, std::ostream& out) {
  Manifest manifest{"simulate"};
  const CopulaModel model = model_from(f);
  SimulationConfig cfg;
  cfg.m = f.m;
  cfg.m0 = f.m0;
  cfg.q = f.q;
  cfg.replications = f.reps;
  cfg.seed = f.seed;
  const FdrEstimate est = simulate_fdr(model, cfg);
  manifest.seed = f.seed;
  manifest.parameters = {{"family", f.family}, {"eta", model.eta()}, {"m", f.m},
                         {"m0", f.m0},         {"q", f.q},           {"reps", f.reps}};
  json doc{{"family", f.family},         {"eta", model.eta()},
           {"mean_fdp", est.mean_fdp},   {"sd_fdp", est.sd_fdp},
           {"std_error", est.std_error}, {"replications", est.replications}};
  doc["manifest"] = manifest.to_json();
  Sink sink(f.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_sample(const CommonFlags& f, std::size_t n, std::ostream& out) {
  Manifest manifest{"sample"};
  const CopulaModel model = model_from(f);
  require_positive(n, "--n");
  require_positive(f.m, "--m");
  const Matrix data = sample_copula_data(model, n, f.m, RandomStream(f.seed));
  manifest.seed = f.seed;
  manifest.parameters = {{"family", f.family}, {"eta", model.eta()}, {"m", f.m}, {"n", n}};
  Sink sink(f.out, out);
  std::ostream& os = sink.stream();
  manifest.write_comments(os);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    for (std::size_t c = 0; c < data.cols(); ++c) {
      os << (c ? "," : "") << format_double(data(r, c));
    }
    os << '\n';
  }
  return kExitOk;
}

}  // namespace

std::string_view tool_version() noexcept { return COPFDR_VERSION; }

std::vector<double> parse_eta_grid(std::string_view grid) {
  const std::vector<std::string_view> parts = split(grid, ':');
  if (parts.size() != 3) throw UsageError("--eta-grid must be start:stop:step");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    try {
      v[i] = parse_number(parts[i], 1);
    } catch (const UsageError&) {
      throw UsageError("--eta-grid: cannot parse '" + std::string(parts[i]) + "'");
    }
  }
  const double start = v[0], stop = v[1], step = v[2];
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step)) {
    throw UsageError("--eta-grid needs finite start, stop and step > 0");
  }
  if (stop < start) throw UsageError("--eta-grid needs stop >= start");
  const double span = (stop - start) / step;
  const double count = std::floor(span + 1e-9) + 1.0;
  if (count > 1e6) throw UsageError("--eta-grid has too many points");
  std::vector<double> etas;
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    // round away the accumulated representation error of start + i * step
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
    etas.push_back(std::strtod(buf, nullptr));
  }
  return etas;
}

Metrics parse_metrics(const std::vector<std::string>& names) {
  if (names.empty()) return Metrics{};
  Metrics m{false, false, false, false};
  for (const std::string& name : names) {
    if (name == "fdr") m.fdr = true;
    else if (name == "bounds") m.bounds = true;
    else if (name == "fz") m.fz = true;
    else if (name == "sd") m.sd = true;
    else throw UsageError("unknown metric '" + name + "' (expected fdr, bounds, fz, sd)");
  }
  return m;
}

CopulaModel model_at(Family family, double eta) {
  return CopulaModel::make(family, eta);
}

CurvePoint compute_curve_point(const CurveOptions& opts, std::size_t index) {
  CurvePoint point;
  point.eta = opts.etas.at(index);
  const CopulaModel model = model_at(opts.family, point.eta);
  const RandomStream stream = RandomStream(opts.seed).substream(index);
  if (opts.metrics.needs_simulation()) {
    SimulationConfig cfg;
    cfg.m = opts.m;
    cfg.m0 = opts.m0;
    cfg.q = opts.q;
    cfg.replications = opts.reps;
    point.fdr = simulate_fdr(model, cfg, stream.substream(0));
  }
  if (opts.metrics.needs_bounds()) {
    RandomStream draws = stream.substream(1);
    point.bounds = sharper_upper_bound(model, opts.m, opts.m0, opts.q, opts.draws, draws);
    require_finite(*point.bounds);
  }
  return point;
}

std::vector<CurvePoint> compute_curve(const CurveOptions& opts) {
  // Each point parallelises internally; points run in grid order.
  std::vector<CurvePoint> points;
  points.reserve(opts.etas.size());
  for (std::size_t i = 0; i < opts.etas.size(); ++i) points.push_back(compute_curve_point(opts, i));
  return points;
}

std::vector<double> curve_row_values(const CurvePoint& p) {
  std::vector<double> v(std::size(kCurveColumns), kNaN);
  v[0] = p.eta;
  if (p.fdr) {
    v[1] = p.fdr->mean_fdp;
    v[2] = p.fdr->sd_fdp;
  }
  if (p.bounds) {
    v[3] = p.bounds->lower;
    v[4] = p.bounds->classical_upper;
    v[5] = p.bounds->sharper_upper;
    v[6] = p.bounds->gamma_min;
    v[7] = p.bounds->z_star;
    v[8] = p.bounds->fz_at_zstar;
    v[9] = p.bounds->bound_sd_per_draw;
  }
  return v;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw UsageError("no column named '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in, bool has_header) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const std::vector<std::string_view> fields = split(line, ',');
    if (header_pending) {
      for (std::string_view f : fields) table.header.emplace_back(trim(f));
      width = fields.size();
      header_pending = false;
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw UsageError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::string_view f : fields) row.push_back(parse_number(f, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path, bool has_header) {
  std::ifstream in = open_input(path);
  return read_csv(in, has_header);
}

std::vector<double> read_pvalues(std::istream& in) {
  std::vector<double> p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const double v = parse_number(line, line_no);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw UsageError("line " + std::to_string(line_no) + ": p-value " + std::string(trim(line)) +
                       " outside [0, 1]");
    }
    p.push_back(v);
  }
  return p;
}

std::vector<double> read_pvalues_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_pvalues(in);
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FDR bounds for the step-up test under Archimedean copula dependence", "copfdr"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  CommonFlags f;
  std::string grid;
  std::vector<std::string> metrics;
  std::string data_path;
  bool header = false;
  TestFlags t;
  std::size_t sample_n = 500;

  CLI::App* bounds = app.add_subcommand("bounds", "bound report for one model (JSON)");
  add_family(bounds, f);
  bounds->add_option("--eta", f.eta, "copula parameter");
  add_problem(bounds, f);
  bounds->add_option("--draws", f.draws, "mixing draws")->capture_default_str();
  add_fast(bounds, f);
  add_seed_out(bounds, f);

  CLI::App* curve = app.add_subcommand("curve", "sweep over an eta grid (CSV)");
  add_family(curve, f);
  curve->add_option("--eta-grid", grid, "start:stop:step");
  add_problem(curve, f);
  curve->add_option("--reps", f.reps, "FDR replications per grid point")->capture_default_str();
  curve->add_option("--draws", f.draws, "mixing draws per grid point")->capture_default_str();
  curve->add_option("--metrics", metrics, "subset of fdr,bounds,fz,sd (default all)")
      ->delimiter(',');
  add_fast(curve, f);
  add_seed_out(curve, f);

  CLI::App* estimate = app.add_subcommand("estimate", "fit eta from data by Kendall tau (JSON)");
  estimate->add_option("--data", data_path, "CSV with n rows and m columns")->required();
  estimate->add_flag("--header", header, "first data line is a header");
  add_family(estimate, f);
  estimate->add_option("--out", f.out, "output file (stdout when omitted)");

  CLI::App* test = app.add_subcommand("test", "step-up test of a p-value file (JSON)");
  test->add_option("--pvalues", t.pvalues, "one p-value per line")->required();
  test->add_option("--q", f.q, "nominal FDR level")->capture_default_str();
  add_family(test, f);
  test->add_option("--eta", f.eta, "copula parameter");
  test->add_option("--eta-from", t.eta_from, "CSV data to estimate eta from");
  test->add_flag("--header", t.header, "--eta-from file has a header line");
  test->add_flag("--adjust", t.adjust, "calibrate q from the sharper bound");
  test->add_option("--m0-assumed", t.m0_assumed, "true-null count assumed (default m)");
  test->add_option("--draws", f.draws, "mixing draws for calibration")->capture_default_str();
  add_fast(test, f);
  add_seed_out(test, f);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo FDR for one model (JSON)");
  add_family(simulate, f);
  simulate->add_option("--eta", f.eta, "copula parameter");
  add_problem(simulate, f);
  simulate->add_option("--reps", f.reps, "replications")->capture_default_str();
  add_fast(simulate, f);
  add_seed_out(simulate, f);

  CLI::App* sample = app.add_subcommand("sample", "draw copula vectors as CSV");
  add_family(sample, f);
  sample->add_option("--eta", f.eta, "copula parameter");
  sample->add_option("--n", sample_n, "number of vectors")->capture_default_str();
  sample->add_option("--m", f.m, "coordinates per vector")->capture_default_str();
  add_seed_out(sample, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds) {
      apply_fast(bounds, f);
      return cmd_bounds(f, out);
    }
    if (*curve) {
      apply_fast(curve, f);
      return cmd_curve(f, grid, metrics, out);
    }
    if (*estimate) return cmd_estimate(f, data_path, header, out);
    if (*test) {
      apply_fast(test, f);
      return cmd_test(test, f, t, out);
    }
    if (*simulate) {
      apply_fast(simulate, f);
      return cmd_simulate(f, out);
    }
    if (*sample) return cmd_sample(f, sample_n, out);
  } catch (const UsageError& e) {
    err << "copfdr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error, length_error, out_of_range: bad input
    err << "copfdr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "copfdr: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace copfdr::cli
