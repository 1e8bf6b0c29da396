#pragma once

#include "copfdr/bounds.hpp"
#include "copfdr/copula.hpp"
#include "copfdr/estimation.hpp"
#include "copfdr/lsu.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace copfdr::cli {

/// Bad flags or unreadable input; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

std::string_view tool_version() noexcept;

/// "start:stop:step" with step > 0 and stop >= start. The endpoint is included
/// when (stop - start) / step is an integer within 1e-9.
std::vector<double> parse_eta_grid(std::string_view grid);

struct Metrics {
  bool fdr = true;
  bool bounds = true;
  bool fz = true;
  bool sd = true;

  bool needs_simulation() const noexcept { return fdr || sd; }
  bool needs_bounds() const noexcept { return bounds || fz || sd; }
};

/// Parses a list drawn from {fdr, bounds, fz, sd}.
Metrics parse_metrics(const std::vector<std::string>& names);

struct CurveOptions {
  Family family = Family::Clayton;
  std::vector<double> etas;
  std::size_t m = 20;
  std::size_t m0 = 16;
  double q = 0.05;
  std::size_t reps = 100000;
  std::size_t draws = 100000;
  std::uint64_t seed = 1;
  Metrics metrics;
};

struct CurvePoint {
  double eta = 0.0;
  std::optional<FdrEstimate> fdr;
  std::optional<BoundReport> bounds;
};

/// Model for one grid value; Independence ignores eta.
CopulaModel model_at(Family family, double eta);

/// Grid point i uses RandomStream(seed).substream(i): its substream 0 drives
/// the FDR simulation and substream 1 the mixing draws of the bounds.
CurvePoint compute_curve_point(const CurveOptions& opts, std::size_t index);
std::vector<CurvePoint> compute_curve(const CurveOptions& opts);

inline constexpr const char* kCurveColumns[] = {
    "eta",        "fdr_sim", "fdr_sim_sd",  "lower",       "classical_upper",
    "sharper_upper", "gamma_min", "z_star", "fz_at_zstar", "bound_sd_per_draw"};

/// Values of one CSV row in `kCurveColumns` order; NaN where not computed.
std::vector<double> curve_row_values(const CurvePoint& point);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index by name; throws UsageError if absent.
  std::size_t column(std::string_view name) const;
};

/// Numeric CSV: '#' lines and blank lines are skipped. With `has_header` the
/// first remaining line names the columns. Every data row must have the same
/// field count. Errors name the 1-based line.
CsvTable read_csv(std::istream& in, bool has_header);
CsvTable read_csv_file(const std::string& path, bool has_header);

/// One p-value per line ('#' and blank lines skipped); each must lie in [0, 1].
std::vector<double> read_pvalues(std::istream& in);
std::vector<double> read_pvalues_file(const std::string& path);

/// Shortest decimal text that reads back to the same double; "nan" for NaN.
std::string format_double(double value);

/// Entry point shared by the executable and the end-to-end tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace copfdr::cli
