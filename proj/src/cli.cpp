#include "lerwkit/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lerwkit/continuum.hpp"
#include "lerwkit/error.hpp"
#include "lerwkit/experiments.hpp"
#include "lerwkit/fomin.hpp"
#include "lerwkit/harmonic.hpp"
#include "lerwkit/lattice.hpp"
#include "lerwkit/lerw.hpp"

namespace lerwkit::cli {
namespace {

using Json = nlohmann::ordered_json;
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct Common {
  int threads = 1;
  double tolerance = FivePointSolver::kResidualTolerance;
  std::string out_path;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::ParseError, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

/// "x,y"
LatticePoint parse_point(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected 'x,y', got '" + std::string(s) + "'");
  return {parse_int(s.substr(0, comma)), parse_int(s.substr(comma + 1))};
}

/// "x,y;x,y;..."
std::vector<LatticePoint> parse_point_list(std::string_view s) {
  std::vector<LatticePoint> pts;
  while (!s.empty()) {
    const auto semi = s.find(';');
    const auto item = trim(s.substr(0, semi));
    if (!item.empty()) pts.push_back(parse_point(item));
    if (semi == std::string_view::npos) break;
    s.remove_prefix(semi + 1);
  }
  return pts;
}

std::string point_str(LatticePoint p) { return std::to_string(p.x) + "," + std::to_string(p.y); }

/// The command line with --out removed; it reproduces the artifact.
std::string command_string(std::span<const std::string> args) {
  std::string s = "lerwkit";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].starts_with("--out=")) continue;
    s += ' ';
    s += args[i];
  }
  return s;
}

void write_header(std::ostream& os, const Metadata& meta, const std::string& timestamp) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  os << "# timestamp: " << timestamp << '\n';
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadParameter, "cannot open output file " + c.out_path);
  f << text;
  if (!f) throw Error(ErrorCode::BadParameter, "failed writing " + c.out_path);
}

Json point_json(LatticePoint p) { return Json::array({p.x, p.y}); }

LatticePoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "expected [x, y], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

LatticeDomain shape_domain(const std::string& shape, int n) {
  if (shape == "plus") return plus_shape();
  if (n < 0) throw Error(ErrorCode::BadParameter, "--n is required for shape " + shape);
  if (shape == "disk") return lattice_disk(n);
  if (shape == "square") return lattice_square(n);
  throw Error(ErrorCode::BadParameter, "unknown shape '" + shape + "'");
}

/// {"shape": "disk", "n": 8}, {"file": "a.txt"} or {"points": [[x, y], ...]}.
LatticeDomain domain_from_json(const Json& j) {
  if (j.contains("file")) return read_domain_file(j.at("file").get<std::string>());
  if (j.contains("points")) {
    std::vector<LatticePoint> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
    return LatticeDomain::build(pts);
  }
  if (j.contains("shape")) return shape_domain(j.at("shape").get<std::string>(), j.value("n", -1));
  throw Error(ErrorCode::ParseError, "domain needs one of 'shape', 'file' or 'points'");
}

std::vector<LatticePoint> config_points(const Json& j, const std::string& key, const LatticeDomain& a) {
  std::vector<LatticePoint> pts;
  if (j.contains(key)) {
    for (const auto& p : j.at(key)) pts.push_back(point_from_json(p));
  } else if (j.contains(key + "_angles_deg")) {
    for (const auto& d : j.at(key + "_angles_deg")) pts.push_back(snap_to_boundary(a, d.get<double>() * std::numbers::pi / 180));
  } else {
    throw Error(ErrorCode::ParseError, "crossing config needs '" + key + "' or '" + key + "_angles_deg'");
  }
  return pts;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "OpenMP threads")->envname("LERWKIT_THREADS")->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "Relative residual of every linear solve")
      ->envname("LERWKIT_TOLERANCE")
      ->capture_default_str();
  sub->add_option("--out", c.out_path, "Output file (default: standard output)")->envname("LERWKIT_OUT");
}

void check_common(const Common& c) {
  if (c.threads < 1) throw Error(ErrorCode::BadParameter, "--threads must be at least 1");
  if (!(c.tolerance > 0)) throw Error(ErrorCode::BadParameter, "--tolerance must be positive");
  omp_set_num_threads(c.threads);
}

// ---------------------------------------------------------------------------
// Sub-commands
// ---------------------------------------------------------------------------

struct DomainGenArgs {
  std::string shape;
  int n = -1;
  std::string domain;
};

std::string domain_gen(const DomainGenArgs& g, const std::string& command, const std::string& timestamp) {
  const LatticeDomain a = g.shape == "file" ? read_domain_file(g.domain) : shape_domain(g.shape, g.n);
  std::ostringstream os;
  Metadata meta{{"command", command}, {"shape", g.shape}};
  if (g.shape == "disk" || g.shape == "square") meta.push_back({"n", std::to_string(g.n)});
  meta.push_back({"points", std::to_string(a.size())});
  meta.push_back({"outer_boundary", std::to_string(a.boundary().outer.size())});
  meta.push_back({"inradius", num(a.inradius_exact())});
  meta.push_back({"radius", num(a.radius_exact())});
  write_header(os, meta, timestamp);
  write_domain(os, a);
  return os.str();
}

struct SolveArgs {
  std::string kind;
  std::string domain;
  std::string source;
  std::string points;
};

std::string solve(const SolveArgs& s, const Common& c, const std::string& command, const std::string& timestamp) {
  auto a = std::make_shared<const LatticeDomain>(read_domain_file(s.domain));
  const HarmonicSolver solver(a, c.tolerance);
  const LatticePoint x = parse_point(s.source);
  std::vector<LatticePoint> pts = parse_point_list(s.points);
  std::vector<double> values;

  if (s.kind == "green") {
    if (pts.empty()) pts = a->points();
    const auto row = solver.green_row(x);
    for (auto p : pts) values.push_back(row.at(p));
  } else if (s.kind == "poisson") {
    if (pts.empty()) pts = a->boundary().outer;
    const auto h = solver.poisson_kernel(x);
    for (auto p : pts) values.push_back(h.at(p));
  } else if (s.kind == "excursion") {
    if (pts.empty())
      std::copy_if(a->boundary().outer.begin(), a->boundary().outer.end(), std::back_inserter(pts),
                   [x](LatticePoint p) { return p != x; });
    if (!a->on_boundary(x)) throw Error(ErrorCode::NotBoundary, "source " + point_str(x) + " is not on the boundary");
    std::vector<HarmonicField> rows;  // G_A(w, .) for the inner neighbours w of x
    for (auto e : kSteps)
      if (a->contains(x + e)) rows.push_back(solver.green_row(x + e));
    for (auto y : pts) {
      if (!a->on_boundary(y)) throw Error(ErrorCode::NotBoundary, point_str(y) + " is not on the boundary");
      if (y == x) throw Error(ErrorCode::SamePoint, "excursion kernel needs distinct points");
      double sum = 0;
      for (auto e : kSteps)
        if (a->contains(y + e))
          for (const auto& r : rows) sum += r.at(y + e);
      values.push_back(sum / 16);
    }
  } else {
    throw Error(ErrorCode::BadParameter, "unknown kernel '" + s.kind + "'");
  }

  std::ostringstream os;
  write_header(os,
               {{"command", command},
                {"kernel", s.kind},
                {"domain", s.domain},
                {"domain_points", std::to_string(a->size())},
                {"source", point_str(x)},
                {"solver", std::string(FivePointSolver::kMethod)},
                {"solver_residual", num(c.tolerance)}},
               timestamp);
  os << "x,y,value\n";
  for (std::size_t i = 0; i < pts.size(); ++i) os << pts[i].x << ',' << pts[i].y << ',' << num(values[i]) << '\n';
  return os.str();
}

struct ConformalArgs {
  std::string domain;
  std::vector<int> mesh{2, 4, 8};
};

std::string conformal(const ConformalArgs& s, const Common& c, const std::string& command,
                      const std::string& timestamp) {
  const LatticeDomain a = read_domain_file(s.domain);
  const ConformalData d = compute_conformal(a, s.mesh, c.tolerance);
  std::ostringstream os;
  std::string mesh;
  for (int m : s.mesh) mesh += (mesh.empty() ? "" : ",") + std::to_string(m);
  write_header(os,
               {{"command", command},
                {"domain", s.domain},
                {"domain_points", std::to_string(a.size())},
                {"mesh", mesh},
                {"richardson_order", num(kRichardsonOrder)},
                {"solver", std::string(FivePointSolver::kMethod)},
                {"solver_residual", num(c.tolerance)},
                {"theta_anchor", "start of the first ccw boundary edge"}},
               timestamp);
  os << "kind,x,y,value,error\n";
  os << "f_prime,0,0," << num(d.f_prime_at_0) << ',' << num(d.f_prime_at_0 * d.f_prime_error) << '\n';
  os << "neg_log_f_prime,0,0," << num(d.neg_log_f_prime) << ',' << num(d.f_prime_error) << '\n';
  const auto& outer = a.boundary().outer;
  for (std::size_t i = 0; i < outer.size(); ++i)
    os << "theta," << outer[i].x << ',' << outer[i].y << ',' << num(d.theta_boundary[i]) << ',' << num(d.theta_error)
       << '\n';
  const auto& pts = a.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == LatticePoint{0, 0}) continue;
    os << "g," << pts[i].x << ',' << pts[i].y << ',' << num(d.g_values[i]) << ',' << num(d.g_error[i]) << '\n';
  }
  return os.str();
}

struct LerwSampleArgs {
  std::string domain;
  std::string start;
  std::uint64_t seed = 0;
};

std::string lerw_sample(const LerwSampleArgs& s, const std::string& command, const std::string& timestamp) {
  const LatticeDomain a = read_domain_file(s.domain);
  const LatticePoint x = parse_point(s.start);
  const LerwSample r = sample_lerw(a, x, s.seed);
  Json path = Json::array();
  for (auto p : r.path.sites) path.push_back(point_json(p));
  Json j;
  j["command"] = command;
  j["domain"] = s.domain;
  j["start"] = point_json(x);
  j["seed"] = s.seed;
  j["rng"] = "splitmix64";
  j["exit"] = point_json(r.exit);
  j["length"] = r.path.sites.size() - 1;
  j["path"] = std::move(path);
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

struct CrossingArgs {
  std::string config;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

std::string lerw_crossing(const CrossingArgs& s, const Common& c, const std::string& command,
                          const std::string& timestamp) {
  std::ifstream in(s.config);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open crossing config " + s.config);
  const Json cj = Json::parse(in);
  auto a = std::make_shared<const LatticeDomain>(domain_from_json(cj.at("domain")));
  const CrossingConfig cfg =
      make_crossing_config(a, config_points(cj, "xs", *a), config_points(cj, "ys", *a));
  const McEstimate est = crossing_probability_mc(cfg, s.samples, s.seed);
  const HarmonicSolver solver(a, c.tolerance);

  Json xs = Json::array(), ys = Json::array();
  for (auto p : cfg.xs) xs.push_back(point_json(p));
  for (auto p : cfg.ys) ys.push_back(point_json(p));
  Json j;
  j["command"] = command;
  j["config"] = cj;
  j["domain_points"] = a->size();
  j["xs"] = std::move(xs);
  j["ys"] = std::move(ys);
  j["rng"] = "splitmix64";
  j["estimate"] = est.estimate;
  j["std_error"] = est.std_error;
  j["N"] = est.samples;
  j["seed"] = est.seed;
  j["hits"] = est.hits;
  j["fomin_det"] = fomin_det(solver, cfg);
  j["solver_residual"] = c.tolerance;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

struct ExperimentArgs {
  std::string id;
  std::string family;
  std::vector<int> n;
  std::vector<int> mesh;
  std::string gap_rule;
  std::vector<double> x_angles;
  std::vector<double> y_angles;
  std::string points;
  int depth = -1;
  int k = -1;
  std::vector<double> lengths;
};

std::string experiment(const ExperimentArgs& e, const Common& c, const std::string& command,
                       const std::string& timestamp) {
  ExperimentOptions opt = default_options(e.id);
  constexpr double deg = std::numbers::pi / 180;
  if (!e.family.empty()) opt.family = parse_family(e.family);
  if (!e.n.empty()) opt.n_list = e.n;
  if (!e.mesh.empty()) opt.mesh_levels = e.mesh;
  if (!e.gap_rule.empty()) opt.gap_rule = parse_gap_rule(e.gap_rule);
  if (!e.x_angles.empty()) {
    opt.x_angles.clear();
    for (double a : e.x_angles) opt.x_angles.push_back(a * deg);
  }
  if (!e.y_angles.empty()) {
    opt.y_angles.clear();
    for (double a : e.y_angles) opt.y_angles.push_back(a * deg);
  }
  if (!e.points.empty()) opt.points = parse_point_list(e.points);
  if (e.depth >= 0) opt.depth = e.depth;
  if (e.k >= 0) opt.k = e.k;
  if (!e.lengths.empty()) opt.lengths = e.lengths;
  opt.tolerance = c.tolerance;

  ExperimentReport rep = run_experiment(e.id, opt);
  rep.metadata.insert(rep.metadata.begin(), {"command", command});
  std::ostringstream os;
  rep.write_csv(os, timestamp);
  return os.str();
}

int status_for(const Error& e) {
  switch (category(e.code())) {
    case ErrorCategory::Domain: return kStatusDomain;
    case ErrorCategory::Solver: return kStatusSolver;
    case ErrorCategory::Config: return kStatusConfig;
  }
  return kStatusInternal;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-walk potential theory, loop-erased walks and crossing determinants", "lerwkit"};
  app.require_subcommand(1);
  Common common;

  auto* dom = app.add_subcommand("domain", "Domain files");
  dom->require_subcommand(1);
  DomainGenArgs gen;
  auto* dom_gen = dom->add_subcommand("gen", "Write a domain file");
  dom_gen->add_option("--shape", gen.shape)->required()->check(CLI::IsMember({"disk", "square", "plus", "file"}));
  dom_gen->add_option("--n", gen.n, "Radius (disk) or half side (square)")->envname("LERWKIT_N");
  dom_gen->add_option("--domain", gen.domain, "Input domain file for --shape file");
  add_common(dom_gen, common);

  SolveArgs sv;
  auto* solve_cmd = app.add_subcommand("solve", "Green's function, Poisson kernel or excursion kernel");
  solve_cmd->add_option("kind", sv.kind)->required()->check(CLI::IsMember({"green", "poisson", "excursion"}));
  solve_cmd->add_option("--domain", sv.domain)->required()->envname("LERWKIT_DOMAIN");
  solve_cmd->add_option("--source", sv.source, "First argument x as 'x,y'")->required();
  solve_cmd->add_option("--points", sv.points, "Second arguments as 'x,y;x,y;...' (default: all)");
  add_common(solve_cmd, common);

  ConformalArgs cf;
  auto* conf_cmd = app.add_subcommand("conformal", "Boundary angles, Green's function and map derivative");
  conf_cmd->add_option("--domain", cf.domain)->required()->envname("LERWKIT_DOMAIN");
  conf_cmd->add_option("--mesh", cf.mesh, "Even, increasing refinement levels")
      ->delimiter(',')
      ->envname("LERWKIT_MESH")
      ->capture_default_str();
  add_common(conf_cmd, common);

  auto* lerw_cmd = app.add_subcommand("lerw", "Loop-erased random walk");
  lerw_cmd->require_subcommand(1);
  LerwSampleArgs ls;
  auto* sample_cmd = lerw_cmd->add_subcommand("sample", "Sample one loop-erased walk from a boundary point");
  sample_cmd->add_option("--domain", ls.domain)->required()->envname("LERWKIT_DOMAIN");
  sample_cmd->add_option("--start", ls.start, "Boundary point 'x,y'")->required();
  sample_cmd->add_option("--seed", ls.seed)->required()->envname("LERWKIT_SEED");
  add_common(sample_cmd, common);
  CrossingArgs cr;
  auto* cross_cmd = lerw_cmd->add_subcommand("crossing", "Monte Carlo crossing probability");
  cross_cmd->add_option("--config", cr.config, "JSON crossing configuration")->required();
  cross_cmd->add_option("--samples", cr.samples)->required()->envname("LERWKIT_SAMPLES");
  cross_cmd->add_option("--seed", cr.seed)->required()->envname("LERWKIT_SEED");
  add_common(cross_cmd, common);

  ExperimentArgs ex;
  auto* exp_cmd = app.add_subcommand("experiment", "Discrete versus continuum comparison tables");
  exp_cmd->add_option("id", ex.id)->required()->check(
      CLI::IsMember({"thm11", "thm12", "cor14", "prop316", "prop15"}));
  exp_cmd->add_option("--family", ex.family)->check(CLI::IsMember({"disk", "square"}));
  exp_cmd->add_option("--n", ex.n, "Domain sizes")->delimiter(',')->envname("LERWKIT_N");
  exp_cmd->add_option("--mesh", ex.mesh, "Continuum refinement levels")->delimiter(',')->envname("LERWKIT_MESH");
  exp_cmd->add_option("--gap-rule", ex.gap_rule)->check(CLI::IsMember({"power", "literal", "none"}));
  exp_cmd->add_option("--x-angles", ex.x_angles, "Angles of x^1..x^k in degrees")->delimiter(',');
  exp_cmd->add_option("--y-angles", ex.y_angles, "Angles of y^1..y^k in degrees")->delimiter(',');
  exp_cmd->add_option("--points", ex.points, "Sample points 'x,y;x,y;...'");
  exp_cmd->add_option("--depth", ex.depth, "Distance of interior points from the boundary circle");
  exp_cmd->add_option("--k", ex.k, "Number of paths");
  exp_cmd->add_option("--L", ex.lengths, "Rectangle lengths")->delimiter(',');
  add_common(exp_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kStatusOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kStatusOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kStatusConfig;
  }

  try {
    check_common(common);
    const std::string command = command_string(args);
    const std::string timestamp = utc_timestamp();
    std::string text;
    if (dom_gen->parsed()) {
      text = domain_gen(gen, command, timestamp);
    } else if (solve_cmd->parsed()) {
      text = solve(sv, common, command, timestamp);
    } else if (conf_cmd->parsed()) {
      text = conformal(cf, common, command, timestamp);
    } else if (sample_cmd->parsed()) {
      text = lerw_sample(ls, command, timestamp);
    } else if (cross_cmd->parsed()) {
      text = lerw_crossing(cr, common, command, timestamp);
    } else if (exp_cmd->parsed()) {
      text = experiment(ex, common, command, timestamp);
    }
    emit(common, out, text);
    return kStatusOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return status_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kStatusConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kStatusInternal;
  }
}

}  // namespace lerwkit::cli
