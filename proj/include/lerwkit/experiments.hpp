#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lerwkit/lattice.hpp"

namespace lerwkit {

enum class Family { Disk, Square };

Family parse_family(std::string_view name);
std::string_view to_string(Family f) noexcept;
LatticeDomain make_family_domain(Family f, int n);

/// Minimum angular separation demanded of the configuration points.
/// Literal is n^{-1/16} log^2 n, which exceeds pi for every n up to about
/// 10^20; Power drops the log factor and is the default.
enum class GapRule { Power, Literal, None };

GapRule parse_gap_rule(std::string_view name);
std::string_view to_string(GapRule r) noexcept;
double gap_threshold(GapRule r, int n);

struct ExperimentOptions {
  Family family = Family::Disk;
  std::vector<int> n_list;
  std::vector<int> mesh_levels{4, 8};
  double tolerance = 1e-12;  // relative residual of every linear solve
  GapRule gap_rule = GapRule::Power;
  /// Requested angles in radians of x^1..x^k and y^1..y^k.
  std::vector<double> x_angles;
  std::vector<double> y_angles;
  /// Sample points for thm12.
  std::vector<LatticePoint> points;
  /// prop316 places its points at radius n - depth.
  int depth = 2;
  /// prop15: number of paths and rectangle lengths.
  int k = 2;
  std::vector<double> lengths;
};

/// Defaults matching each experiment's standard configuration.
ExperimentOptions default_options(std::string_view experiment);

struct ReportRow {
  std::string family;
  std::string param;
  std::string label;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  double abs_err = 0;
  double rel_err = 0;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ReportRow> rows;

  /// '#'-prefixed metadata, an optional '# timestamp:' line, the column
  /// header and the rows. Numbers use round-trip precision.
  void write_csv(std::ostream& out, std::string_view timestamp = {}) const;
};

inline constexpr std::string_view kCsvHeader = "experiment,family,param,label,lhs,rhs,ratio,abs_err,rel_err";

/// h_dA(x, y) against (pi/2) h_A(0,x) h_A(0,y) / (1 - cos(theta(x) - theta(y))).
ExperimentReport thm11_experiment(const ExperimentOptions& opt);
/// G_A(0) against (2/pi)(-log f'(0)) + k0, and G_A(x) against (2/pi) g_A(x) + k_x.
ExperimentReport thm12_experiment(const ExperimentOptions& opt);
/// Conditional determinant against the disk determinant of the boundary angles.
ExperimentReport cor14_experiment(const ExperimentOptions& opt);
/// G_A(x, y) against (pi/2) G_A(x) G_A(y) / (1 - cos(theta(x) - theta(y))).
ExperimentReport prop316_experiment(const ExperimentOptions& opt);
/// Exact rectangle determinant against its leading exponential term.
ExperimentReport prop15_experiment(const ExperimentOptions& opt);

ExperimentReport run_experiment(std::string_view experiment, const ExperimentOptions& opt);

}  // namespace lerwkit
