#include "cpcav/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "cpcav/asymptotics.hpp"
#include "cpcav/config.hpp"
#include "cpcav/constants.hpp"
#include "cpcav/errors.hpp"
#include "cpcav/profile.hpp"

namespace cpcav::cli {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return quoted + "\"";
        }
      },
      cell);
}

nlohmann::json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

struct Globals {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  double rel_tol = QuadratureSpec{}.rel_tol;
  int max_subdivisions = QuadratureSpec{}.max_subdivisions;
  int threads = 0;

  QuadratureSpec spec() const {
    QuadratureSpec s;
    s.rel_tol = rel_tol;
    s.max_subdivisions = max_subdivisions;
    s.validate();
    return s;
  }
};

struct RunConfig {
  std::string molecule = "LiH";
  std::string mirror = "gold";
  std::string width;
  std::string temperature = "300";
  int points = 500;
  std::optional<std::string> z_min;
  std::optional<std::string> z_max;
  std::size_t transition = 0;
  bool half_space = false;
  bool raw = false;
};

struct DepthArgs {
  std::string molecule = "LiH";
  std::vector<std::string> mirrors{"gold"};
  std::vector<int> nus{1, 2, 3};
  std::string temperature = "300";
  std::size_t transition = 0;
};

struct BraggArgs {
  std::string mirror = "gaas-bragg";
  std::string material_a;
  std::string material_b;
  int n_min = 1;
  int n_max = 60;
  std::string omega;
  std::string molecule = "LiH";
  std::string temperature = "300";
};

struct AsymArgs {
  int nu_min = 2;
  int nu_max = 10;
  std::vector<double> deltas{1e-4, 1e-5, 1e-6};
};

Config load(const Globals& g) { return g.config_path.empty() ? default_config() : load_config_file(g.config_path); }

double temperature_of(const std::string& text) {
  const double t = parse_quantity(text, "temperature");
  if (!(t > 0.0)) throw ConfigError("temperature must be positive", 0, "temperature");
  return t;
}

const Transition& tuned_transition(const Molecule& mol, std::size_t index) {
  if (index >= mol.transitions.size()) throw ConfigError("transition index out of range", 0, "transition");
  return mol.transitions[index];
}

double resolve_width(const std::string& text, const Transition& t) {
  if (text.rfind("resonance:", 0) == 0) {
    const std::string order = text.substr(10);
    int nu = 0;
    try {
      std::size_t used = 0;
      nu = std::stoi(order, &used);
      if (used != order.size()) throw std::invalid_argument(order);
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse resonance order '" + order + "'", 0, "width");
    }
    if (nu < 1) throw ConfigError("resonance order must be >= 1", 0, "width");
    return resonance_width(t, nu);
  }
  const double a = parse_quantity(text, "width");
  if (!(a > 0.0)) throw ConfigError("width must be positive", 0, "width");
  return a;
}

struct Scene {
  Molecule molecule;
  Geometry geometry;
  ThermalEnvironment env;
  double width;
  std::vector<double> z;
};

Scene make_scene(const RunConfig& rc, const Globals& g) {
  const Config cfg = load(g);
  Scene s{cfg.molecules.get(rc.molecule), CavityGeometry{0.0, ConstantR{0.0}}, {temperature_of(rc.temperature)}, 0.0, {}};
  const Transition& t = tuned_transition(s.molecule, rc.transition);
  s.width = resolve_width(rc.width, t);
  const MirrorSpec mirror = cfg.mirror(rc.mirror, s.env.temperature, t.omega);
  if (rc.half_space) {
    s.geometry = PlateGeometry{-0.5 * s.width, mirror};
  } else {
    s.geometry = CavityGeometry{s.width, mirror};
  }
  if (rc.points < 2) throw ConfigError("grid needs at least 2 points", 0, "points");
  const double edge = 0.49 * s.width;
  const double lo = rc.z_min ? parse_quantity(*rc.z_min, "z-min") : -edge;
  const double hi = rc.z_max ? parse_quantity(*rc.z_max, "z-max") : edge;
  if (!(hi > lo)) throw ConfigError("z-min must be below z-max", 0, "z-min");
  s.z = linear_grid(lo, hi, rc.points);
  for (double z : s.z) wall_clearance(s.geometry, z);
  return s;
}

Table cmd_profile(const RunConfig& rc, const Globals& g) {
  const Scene s = make_scene(rc, g);
  const QuadratureSpec spec = g.spec();
  auto rows = potential_profile(s.z, s.molecule, s.geometry, s.env, spec, g.threads);
  if (!rc.raw) shift_profile(rows, potential_components(0.0, s.molecule, s.geometry, s.env, spec));

  Table t;
  t.columns = {"z_m", "U_nr_J", "U_pr_J", "U_ev_J", "U_total_J"};
  for (const PotentialComponents& p : rows) t.rows.push_back({p.z, p.U_nr, p.U_pr, p.U_ev, p.U_total});
  t.meta = {{"command", std::string("profile")},
            {"molecule", rc.molecule},
            {"mirror", rc.mirror},
            {"width_m", s.width},
            {"temperature_K", s.env.temperature},
            {"geometry", std::string(rc.half_space ? "half-space" : "cavity")},
            {"shift", std::string(rc.raw ? "raw" : "center")}};
  return t;
}

Table cmd_heating(const RunConfig& rc, const Globals& g) {
  const Scene s = make_scene(rc, g);
  const auto rows = heating_profile(s.z, s.molecule, s.geometry, s.env, g.spec(), g.threads);

  Table t;
  t.columns = {"z_m", "gamma_per_s", "gamma_free_per_s"};
  for (const HeatingPoint& h : rows) t.rows.push_back({h.z, h.gamma, h.gamma_free});
  t.meta = {{"command", std::string("heating")},
            {"molecule", rc.molecule},
            {"mirror", rc.mirror},
            {"width_m", s.width},
            {"temperature_K", s.env.temperature},
            {"geometry", std::string(rc.half_space ? "half-space" : "cavity")}};
  return t;
}

std::string join(const std::vector<Extremum>& points) {
  std::string out;
  for (const Extremum& e : points) out += (out.empty() ? "" : ";") + format_double(e.z);
  return out;
}

Table cmd_depth(const DepthArgs& args, const Globals& g) {
  if (args.nus.empty()) throw ConfigError("no resonance orders given", 0, "nu");
  const Config cfg = load(g);
  const Molecule& mol = cfg.molecules.get(args.molecule);
  const ThermalEnvironment env{temperature_of(args.temperature)};
  const Transition& tr = tuned_transition(mol, args.transition);
  const QuadratureSpec spec = g.spec();

  Table t;
  t.columns = {"mirror", "nu", "a_m", "kind", "depth_J", "grid_depth_J", "z_min_m", "z_maxima_m"};
  for (const std::string& name : args.mirrors) {
    const MirrorSpec mirror = cfg.mirror(name, env.temperature, tr.omega);
    for (int nu : args.nus) {
      if (nu < 1) throw ConfigError("resonance order must be >= 1", 0, "nu");
      DepthOptions opts;
      opts.transition = args.transition;
      opts.locate_all = true;
      const ExtremumReport r = potential_depth(mol, mirror, nu, env, spec, opts);
      const Cell z_min = r.is_peak_height ? Cell{std::string()} : Cell{r.deepest_minimum.z};
      t.rows.push_back({name, static_cast<long long>(nu), r.width,
                        std::string(r.is_peak_height ? "peak_height" : "well_depth"), r.depth, r.grid_depth, z_min,
                        join(r.maxima)});
    }
  }
  t.meta = {{"command", std::string("depth")}, {"molecule", args.molecule}, {"temperature_K", env.temperature}};
  return t;
}

Table cmd_bragg(const BraggArgs& args, const Globals& g) {
  if (args.n_min < 0 || args.n_max < args.n_min) throw ConfigError("empty or negative N range", 0, "n-min");
  const Config cfg = load(g);
  const double temperature = temperature_of(args.temperature);
  std::string name_a = args.material_a;
  std::string name_b = args.material_b;
  std::optional<double> design;
  if (name_a.empty() || name_b.empty()) {
    auto it = cfg.mirrors.find(args.mirror);
    if (it == cfg.mirrors.end()) throw ConfigError("unknown mirror '" + args.mirror + "'", 0, "mirror");
    const auto* def = std::get_if<BraggDef>(&it->second);
    if (!def) throw ConfigError("mirror '" + args.mirror + "' is not a Bragg mirror", 0, "mirror");
    if (name_a.empty()) name_a = def->material_a;
    if (name_b.empty()) name_b = def->material_b;
    design = def->design_omega;
  }
  const double omega0 = !args.omega.empty() ? parse_quantity(args.omega, "omega")
                        : design              ? *design
                                              : tuned_transition(cfg.molecules.get(args.molecule), 0).omega;
  if (!(omega0 > 0.0)) throw ConfigError("design frequency must be positive", 0, "omega");
  const PermittivityModel& a = cfg.material(name_a, temperature);
  const PermittivityModel& b = cfg.material(name_b, temperature);

  const auto scan = bragg_scan(a, b, args.n_min, args.n_max, omega0);
  const std::optional<int> saturation = bragg_saturation(a, b, scan, omega0);

  Table t;
  t.columns = {"N", "one_minus_re_r", "abs_r", "saturated"};
  for (const BraggPoint& p : scan) {
    const long long sat = saturation && p.n_pairs >= *saturation ? 1 : 0;
    t.rows.push_back({static_cast<long long>(p.n_pairs), p.one_minus_re_r, p.abs_r, sat});
  }
  t.meta = {{"command", std::string("bragg")},
            {"material_a", name_a},
            {"material_b", name_b},
            {"omega0_rad_per_s", omega0},
            {"temperature_K", temperature},
            {"saturation_N", saturation ? Cell{static_cast<long long>(*saturation)} : Cell{std::string("none")}}};
  return t;
}

double fitted_phi(const std::vector<double>& deltas, const std::vector<double>& normalized) {
  if (deltas.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    mx += -std::log(deltas[i]);
    my += normalized[i];
  }
  mx /= deltas.size();
  my /= deltas.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double dx = -std::log(deltas[i]) - mx;
    sxy += dx * (normalized[i] - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -(my - sxy / sxx * mx);
}

Table cmd_asym(const AsymArgs& args, const Globals& g) {
  if (args.nu_min < 2 || args.nu_max < args.nu_min) throw ConfigError("empty or invalid nu range", 0, "nu-min");
  if (args.deltas.empty()) throw ConfigError("no delta values given", 0, "delta");
  for (double d : args.deltas) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta must lie in (0, 1)", 0, "delta");
  }
  const QuadratureSpec spec = g.spec();
  const Molecule probe = builtin_lih();
  const ThermalEnvironment env{300.0};
  const Transition& tr = probe.transitions[0];
  const double lambda = 2.0 * constants::pi * constants::c / tr.omega;
  const double coupling = photon_number(tr.omega, env) * tr.d_squared;
  const double scale = coupling / (3.0 * constants::epsilon0);

  Table t;
  t.columns = {"nu",          "delta",      "norm_depth_quadrature", "norm_depth_series", "norm_depth_refined",
               "phi_implied", "phi_fitted", "phi_nu",                "phi_nu_printed",    "phi_asymptote",
               "phi_over_nu"};
  for (int nu = args.nu_min; nu <= args.nu_max; ++nu) {
    std::vector<std::vector<Cell>> block;
    std::vector<double> quad;
    const double phi_max = std::abs(0.5 - 1.5 / nu);
    const double phi_min = 0.5 - 1.0 / nu;
    for (double delta : args.deltas) {
      const ConstantRCavity cav{1.0 - delta, nu, lambda};
      const double q = normalized_depth(
          scale * (I_phi_quadrature(cav, phi_max, spec) - I_phi_quadrature(cav, phi_min, spec)), nu, lambda, coupling);
      const double s =
          normalized_depth(scale * (I_phi_series(cav, phi_max) - I_phi_series(cav, phi_min)), nu, lambda, coupling);
      DepthOptions opts;
      opts.terms = TraceTerms::position_dependent;
      const double refined =
          normalized_depth(potential_depth(probe, ConstantR{1.0 - delta}, nu, env, spec, opts).depth, nu, lambda,
                           coupling);
      quad.push_back(q);
      block.push_back({static_cast<long long>(nu), delta, q, s, refined, -std::log(delta) - q});
    }
    const double fit = fitted_phi(args.deltas, quad);
    for (auto& row : block) {
      row.insert(row.end(), {fit, phi_nu(nu), phi_nu_printed(nu), phi_asymptote(nu), phi_nu(nu) / nu});
      t.rows.push_back(std::move(row));
    }
  }
  t.meta = {{"command", std::string("asym")},
            {"asymptote_slope", phi_asymptote_slope()},
            {"asymptote_intercept", phi_asymptote_intercept()}};
  return t;
}

int thread_default() {
  if (const char* env = std::getenv("CPCAV_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (const std::logic_error&) {
      return 0;
    }
  }
  return 0;
}

void add_scene_options(CLI::App& cmd, RunConfig& rc) {
  cmd.add_option("--molecule", rc.molecule, "Molecule name")->capture_default_str();
  cmd.add_option("--mirror", rc.mirror, "Mirror name or constant:R")->capture_default_str();
  cmd.add_option("--width", rc.width, "Cavity width (e.g. 500um) or resonance:NU")->capture_default_str();
  cmd.add_option("--temperature,-T", rc.temperature, "Temperature, K")->capture_default_str();
  cmd.add_option("--points,-n", rc.points, "Number of grid points")->capture_default_str();
  cmd.add_option("--z-min", rc.z_min, "Lower grid bound (default -0.49 a)");
  cmd.add_option("--z-max", rc.z_max, "Upper grid bound (default +0.49 a)");
  cmd.add_option("--transition", rc.transition, "Index of the transition used for resonance:NU")
      ->capture_default_str();
  cmd.add_flag("--half-space", rc.half_space, "Single wall at z = -a/2 instead of a cavity");
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::json doc;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  doc["meta"] = nlohmann::json::object();
  for (const auto& [key, value] : table.meta) doc["meta"][key] = to_json(value);
  out << doc.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal Casimir-Polder potentials of polar molecules in planar cavities"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.threads = thread_default();
  app.add_option("--config", g.config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--out,-o", g.out_path, "Output file (default stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--max-subdivisions", g.max_subdivisions, "Quadrature bisection budget per integral")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: runtime default; env CPCAV_THREADS)");

  RunConfig profile_rc;
  profile_rc.width = "500um";
  auto* profile = app.add_subcommand("profile", "Potential components across the cavity");
  add_scene_options(*profile, profile_rc);
  profile->add_flag("--raw", profile_rc.raw, "Do not shift components to vanish at z = 0");

  RunConfig heating_rc;
  heating_rc.width = "resonance:1";
  auto* heating = app.add_subcommand("heating", "Ground-state heating rate across the cavity");
  add_scene_options(*heating, heating_rc);

  DepthArgs depth_args;
  auto* depth = app.add_subcommand("depth", "Well depths at cavity resonances");
  depth->add_option("--molecule", depth_args.molecule, "Molecule name")->capture_default_str();
  depth->add_option("--mirror", depth_args.mirrors, "Mirror names or constant:R (repeatable)")
      ->capture_default_str();
  depth->add_option("--nu", depth_args.nus, "Resonance orders")->capture_default_str();
  depth->add_option("--temperature,-T", depth_args.temperature, "Temperature, K")->capture_default_str();
  depth->add_option("--transition", depth_args.transition, "Index of the tuned transition")->capture_default_str();

  BraggArgs bragg_args;
  auto* bragg = app.add_subcommand("bragg", "Normal-incidence reflection of quarter-wave stacks");
  bragg->add_option("--mirror", bragg_args.mirror, "Bragg mirror name")->capture_default_str();
  bragg->add_option("--material-a", bragg_args.material_a, "Layer material facing the cavity");
  bragg->add_option("--material-b", bragg_args.material_b, "Second layer material");
  bragg->add_option("--n-min", bragg_args.n_min, "Smallest number of pairs")->capture_default_str();
  bragg->add_option("--n-max", bragg_args.n_max, "Largest number of pairs")->capture_default_str();
  bragg->add_option("--omega", bragg_args.omega, "Design frequency, rad/s (default: molecule transition)");
  bragg->add_option("--molecule", bragg_args.molecule, "Molecule supplying the design frequency")
      ->capture_default_str();
  bragg->add_option("--temperature,-T", bragg_args.temperature, "Temperature for tagged materials, K")
      ->capture_default_str();

  AsymArgs asym_args;
  auto* asym = app.add_subcommand("asym", "Constant-reflectivity depths against the phi(nu) asymptotics");
  asym->add_option("--nu-min", asym_args.nu_min, "Smallest resonance order")->capture_default_str();
  asym->add_option("--nu-max", asym_args.nu_max, "Largest resonance order")->capture_default_str();
  asym->add_option("--delta", asym_args.deltas, "Values of 1 - r")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    Table table;
    if (*profile) table = cmd_profile(profile_rc, g);
    if (*heating) table = cmd_heating(heating_rc, g);
    if (*depth) table = cmd_depth(depth_args, g);
    if (*bragg) table = cmd_bragg(bragg_args, g);
    if (*asym) table = cmd_asym(asym_args, g);

    std::ostringstream buffer;
    if (g.format == "json") {
      write_json(buffer, table);
    } else {
      write_csv(buffer, table);
    }
    if (g.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(g.out_path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file '" + g.out_path + "'", 0, "out");
      file << buffer.str();
    }
    return ok;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const ExtremumNotFound& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}

}  // namespace cpcav::cli
