// Command-line runner for the spin Malus experiments. Emits CSV (default)
// or JSON; identical invocations produce byte-identical output.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinmalus/classical_limit.hpp"
#include "spinmalus/malus.hpp"
#include "spinmalus/path_integral.hpp"
#include "spinmalus/quasi_dist.hpp"
#include "spinmalus/sphere.hpp"
#include "spinmalus/spin_states.hpp"

using json = nlohmann::ordered_json;
using namespace spinmalus;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Report {
  std::string experiment;
  json meta = json::object();
  std::vector<std::string> columns;
  std::vector<json> rows;  // objects keyed by column name
};

void check_finite(const json& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) {
    throw std::runtime_error("non-finite value in report");
  }
  if (v.is_object() || v.is_array()) {
    for (const json& item : v) check_finite(item);
  }
}

std::string render_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_array() || v.is_object()) return v.dump();
  return fmt(v.get<double>());
}

std::string render_csv(const Report& r) {
  std::string out = "# schema=1\n# experiment=" + r.experiment + "\n";
  for (const auto& [key, value] : r.meta.items()) {
    out += "# " + key + "=" + render_cell(value) + "\n";
  }
  for (size_t c = 0; c < r.columns.size(); ++c) {
    out += r.columns[c];
    out += (c + 1 < r.columns.size()) ? ',' : '\n';
  }
  for (const json& row : r.rows) {
    for (size_t c = 0; c < r.columns.size(); ++c) {
      out += render_cell(row.at(r.columns[c]));
      out += (c + 1 < r.columns.size()) ? ',' : '\n';
    }
  }
  return out;
}

std::string render_json(const Report& r) {
  json doc = json::object();
  doc["schema"] = 1;
  doc["experiment"] = r.experiment;
  for (const auto& [key, value] : r.meta.items()) doc[key] = value;
  doc["results"] = r.rows;
  return doc.dump(2) + "\n";
}

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void emit(const Report& r, const OutputOptions& out) {
  check_finite(r.meta);
  for (const json& row : r.rows) check_finite(row);
  const std::string text =
      out.format == "json" ? render_json(r) : render_csv(r);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out.path);
    f << text;
  }
}

Direction parse_setting(const std::string& token) {
  const size_t comma = token.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("setting '" + token +
                                "' is not of the form theta,phi");
  }
  size_t used = 0;
  double theta = 0.0, phi = 0.0;
  try {
    theta = std::stod(token.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(token);
    const std::string rest = token.substr(comma + 1);
    phi = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw std::invalid_argument("setting '" + token +
                                "' is not of the form theta,phi");
  }
  return Direction(theta, phi);
}

std::vector<Direction> parse_settings(const std::vector<std::string>& tokens,
                                      size_t expected, const char* what) {
  if (tokens.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(expected) +
                                " settings, got " +
                                std::to_string(tokens.size()));
  }
  std::vector<Direction> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(parse_setting(t));
  return out;
}

int default_nodes(int twice_s) { return std::max(2 * twice_s + 1, 8); }

struct GridOptions {
  int n_theta = 0;  // 0: derive from twice_s
  int n_phi = 0;
};

QuadratureGrid make_grid(const GridOptions& g, int twice_s) {
  const int nt = g.n_theta > 0 ? g.n_theta : default_nodes(twice_s);
  const int np = g.n_phi > 0 ? g.n_phi : default_nodes(twice_s);
  return build_grid(nt, np);
}

void add_output_options(CLI::App* cmd, OutputOptions* out) {
  cmd->add_option("--format", out->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", out->path, "Write the report to a file");
}

void add_grid_options(CLI::App* cmd, GridOptions* g) {
  cmd->add_option("--n-theta", g->n_theta,
                  "Polar quadrature nodes (default max(2*twice_s+1, 8))");
  cmd->add_option("--n-phi", g->n_phi,
                  "Azimuthal quadrature nodes (default max(2*twice_s+1, 8))");
}

json direction_fields(const char* prefix, const Direction& w) {
  json j = json::object();
  j[std::string("theta") + prefix] = w.theta;
  j[std::string("phi") + prefix] = w.phi;
  return j;
}

json direction_pair(const Direction& w) { return json::array({w.theta, w.phi}); }

json settings_field(const std::vector<Direction>& dirs) {
  json arr = json::array();
  for (const Direction& w : dirs) arr.push_back(direction_pair(w));
  return arr;
}

json grid_field(int n_theta, int n_phi) {
  json g = json::object();
  g["n_theta"] = n_theta;
  g["n_phi"] = n_phi;
  return g;
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.

Report run_malus(const std::string& kind, const std::string& dist_name,
                 int twice_s, const std::vector<std::string>& settings,
                 const GridOptions& grid_opts) {
  const std::vector<Direction> s = parse_settings(settings, 1, "malus");
  const QuasiDistribution p = builtin_distribution(dist_name);
  const QuadratureGrid grid = make_grid(grid_opts, twice_s);

  ExperimentResult r{};
  if (kind == "classical") {
    r = classical_malus(p, s[0], grid);
  } else {
    r = quantum_malus_average(p, SpinQuantumNumber(twice_s), s[0], grid);
  }

  Report rep;
  rep.experiment = "malus";
  rep.meta["settings"] = settings_field(s);
  rep.meta["grid"] = grid_field(r.n_theta, r.n_phi);
  rep.columns = {"kind",  "distribution", "twice_s",         "theta",
                 "phi",   "value",        "estimated_error", "n_theta",
                 "n_phi"};
  json row = json::object();
  row["kind"] = kind;
  row["distribution"] = dist_name;
  if (kind == "classical") {
    row["twice_s"] = nullptr;
  } else {
    row["twice_s"] = twice_s;
  }
  row["theta"] = s[0].theta;
  row["phi"] = s[0].phi;
  row["value"] = r.value;
  row["estimated_error"] = r.estimated_error;
  row["n_theta"] = r.n_theta;
  row["n_phi"] = r.n_phi;
  rep.rows.push_back(row);
  return rep;
}

Report run_joint(const std::string& dist_name, int twice_s,
                 const std::vector<std::string>& settings,
                 const GridOptions& grid_opts) {
  const std::vector<Direction> s = parse_settings(settings, 2, "joint");
  const QuasiDistribution p = builtin_distribution(dist_name);
  const QuadratureGrid grid = make_grid(grid_opts, twice_s);
  const ExperimentResult r = joint_probability(p, s[0], s[1], grid);

  // Half-law value quoted for the singlet correlation; the matrix oracle
  // gives (1 - cos alpha)/4. Reported side by side, never reconciled here.
  const double claim =
      0.5 * (1.0 - std::cos(relative_angle(s[0], s[1])));

  Report rep;
  rep.experiment = "joint";
  rep.meta["settings"] = settings_field(s);
  rep.meta["grid"] = grid_field(r.n_theta, r.n_phi);
  rep.columns = {"distribution",    "theta_a", "phi_a",
                 "theta_b",         "phi_b",   "value",
                 "oracle",          "paper_claim", "claim_discrepancy",
                 "estimated_error", "n_theta", "n_phi"};
  json row = json::object();
  row["distribution"] = dist_name;
  merge(row, direction_fields("_a", s[0]));
  merge(row, direction_fields("_b", s[1]));
  row["value"] = r.value;
  row["oracle"] = quantum_joint_oracle(s[0], s[1]);
  row["paper_claim"] = claim;
  row["claim_discrepancy"] = std::abs(r.value - claim);
  row["estimated_error"] = r.estimated_error;
  row["n_theta"] = r.n_theta;
  row["n_phi"] = r.n_phi;
  rep.rows.push_back(row);
  return rep;
}

Report run_chsh(const std::string& oracle,
                const std::vector<std::string>& settings, bool standard,
                const GridOptions& grid_opts) {
  ChshSettings st = standard_chsh_settings();
  if (!settings.empty()) {
    const std::vector<Direction> s = parse_settings(settings, 4, "chsh");
    st = ChshSettings{s[0], s[1], s[2], s[3]};
  } else if (!standard) {
    // No settings given: the standard geometry is the documented default.
  }

  Report rep;
  rep.experiment = "chsh";
  rep.meta["settings"] =
      settings_field({st.a, st.a_prime, st.b, st.b_prime});
  rep.columns = {"oracle",
                 "theta_a",
                 "phi_a",
                 "theta_a_prime",
                 "phi_a_prime",
                 "theta_b",
                 "phi_b",
                 "theta_b_prime",
                 "phi_b_prime",
                 "value",
                 "abs_value",
                 "paper_claim",
                 "claim_discrepancy",
                 "estimated_error",
                 "n_theta",
                 "n_phi"};

  json row = json::object();
  row["oracle"] = oracle;
  merge(row, direction_fields("_a", st.a));
  merge(row, direction_fields("_a_prime", st.a_prime));
  merge(row, direction_fields("_b", st.b));
  merge(row, direction_fields("_b_prime", st.b_prime));

  double s_value = 0.0;
  double est_err = 0.0;
  if (oracle == "quantum") {
    s_value = chsh_value(
        [](const Direction& x, const Direction& y) {
          return quantum_joint_oracle(x, y);
        },
        st.a, st.a_prime, st.b, st.b_prime);
    rep.meta["grid"] = nullptr;
    row["n_theta"] = nullptr;
    row["n_phi"] = nullptr;
  } else {
    const QuasiDistribution p = builtin_distribution(oracle);
    const QuadratureGrid grid = make_grid(grid_opts, 1);
    auto s_on = [&](const QuadratureGrid& g) {
      return chsh_value(
          [&](const Direction& x, const Direction& y) {
            double total = integrate_two(
                g, [&](const Direction& la, const Direction& lb) {
                  return p.smooth_two(la, lb) *
                         stern_gerlach_transmission(x, la) *
                         stern_gerlach_transmission(y, lb);
                });
            if (p.delta_weight != 0.0) {
              total += p.delta_weight * integrate(g, [&](const Direction& la) {
                return stern_gerlach_transmission(x, la) *
                       stern_gerlach_transmission(y, antipode(la));
              });
            }
            return total;
          },
          st.a, st.a_prime, st.b, st.b_prime);
    };
    s_value = s_on(grid);
    est_err = std::abs(
        s_value - s_on(build_grid(2 * grid.n_theta(), 2 * grid.n_phi())));
    rep.meta["grid"] = grid_field(grid.n_theta(), grid.n_phi());
    row["n_theta"] = grid.n_theta();
    row["n_phi"] = grid.n_phi();
  }

  const double claim = 2.0 * std::sqrt(2.0);
  row["value"] = s_value;
  row["abs_value"] = std::abs(s_value);
  row["paper_claim"] = claim;
  row["claim_discrepancy"] = std::abs(std::abs(s_value) - claim);
  row["estimated_error"] = est_err;
  rep.rows.push_back(row);
  return rep;
}

Report run_reconstruct(const std::string& dist_name, int twice_s,
                       const GridOptions& grid_opts) {
  const QuasiDistribution p = builtin_distribution(dist_name);
  const SpinQuantumNumber s(twice_s);
  const QuadratureGrid grid = make_grid(grid_opts, twice_s);
  const DensityMatrix rho = reconstruct_density(p, s, grid);

  Report rep;
  rep.experiment = "reconstruct";
  rep.meta["distribution"] = dist_name;
  rep.meta["twice_s"] = twice_s;
  rep.meta["parties"] = p.parties;
  rep.meta["grid"] = grid_field(grid.n_theta(), grid.n_phi());
  rep.meta["hermiticity_defect"] = hermiticity_defect(rho);
  rep.meta["trace_defect"] = trace_defect(rho);
  rep.meta["min_eigenvalue"] = min_eigenvalue(rho);

  // Known targets at spin 1/2: the pole projectors and the singlet.
  std::optional<ComplexMatrix> reference;
  std::string reference_name;
  if (twice_s == 1) {
    if (dist_name == "p-plus") {
      reference = projector(scs_closed_form(s, Direction(kPi, 0.0))).entries;
      reference_name = "plus-pole-projector";
    } else if (dist_name == "p-minus") {
      reference = projector(scs_closed_form(s, Direction(0.0, 0.0))).entries;
      reference_name = "minus-pole-projector";
    } else if (dist_name == "pro2" || dist_name == "pro1-flipped" ||
               dist_name == "pro1") {
      reference = projector(singlet_state()).entries;
      reference_name = "singlet-projector";
    }
  }
  if (dist_name == "uniform") {
    const int d = rho.total_dim();
    reference = ComplexMatrix(ComplexMatrix::Identity(d, d) / double(d));
    reference_name = "maximally-mixed";
  }
  if (reference) {
    rep.meta["reference"] = reference_name;
    rep.meta["reference_distance"] =
        (rho.entries - *reference).cwiseAbs().maxCoeff();
    rep.meta["fidelity"] =
        (rho.entries * *reference).trace().real();
  }

  rep.columns = {"row", "col", "re", "im"};
  for (int i = 0; i < rho.entries.rows(); ++i) {
    for (int j = 0; j < rho.entries.cols(); ++j) {
      json cell = json::object();
      cell["row"] = i;
      cell["col"] = j;
      cell["re"] = rho.entries(i, j).real();
      cell["im"] = rho.entries(i, j).imag();
      rep.rows.push_back(cell);
    }
  }
  return rep;
}

Report run_negativity(const std::string& dist_name,
                      const GridOptions& grid_opts) {
  const QuasiDistribution p = builtin_distribution(dist_name);
  const QuadratureGrid grid = make_grid(grid_opts, 1);
  const NegativityReport scan = negativity_scan(p, grid);

  Report rep;
  rep.experiment = "negativity";
  rep.meta["grid"] = grid_field(grid.n_theta(), grid.n_phi());
  rep.columns = {"distribution", "min_value", "theta_a",      "phi_a",
                 "theta_b",      "phi_b",     "delta_weight", "n_theta",
                 "n_phi"};
  json row = json::object();
  row["distribution"] = dist_name;
  row["min_value"] = scan.min_value;
  merge(row, direction_fields("_a", scan.argmin.at(0)));
  if (scan.argmin.size() > 1) {
    merge(row, direction_fields("_b", scan.argmin.at(1)));
  } else {
    row["theta_b"] = nullptr;
    row["phi_b"] = nullptr;
  }
  row["delta_weight"] = scan.delta_weight;
  row["n_theta"] = grid.n_theta();
  row["n_phi"] = grid.n_phi();
  rep.rows.push_back(row);
  return rep;
}

Report run_pathint(int twice_s, int insertions,
                   const std::vector<std::string>& settings,
                   const GridOptions& grid_opts) {
  const std::vector<Direction> s = parse_settings(settings, 2, "pathint");
  const SpinQuantumNumber spin(twice_s);
  const QuadratureGrid grid = make_grid(grid_opts, twice_s);
  const CompositionReport r =
      compose_amplitude(spin, s[0], s[1], insertions, grid);

  Report rep;
  rep.experiment = "pathint";
  rep.meta["s"] = 0.5 * twice_s;
  rep.meta["start"] = direction_pair(s[0]);
  rep.meta["end"] = direction_pair(s[1]);
  rep.meta["K"] = r.insertions;
  rep.meta["grid"] = grid_field(r.n_theta, r.n_phi);
  rep.meta["exact"] = json::array({r.exact.real(), r.exact.imag()});
  rep.meta["composed"] = json::array({r.composed.real(), r.composed.imag()});
  rep.meta["abs_error"] = r.abs_error;
  rep.columns = {"twice_s",     "theta_start", "phi_start",   "theta_end",
                 "phi_end",     "insertions",  "exact_re",    "exact_im",
                 "composed_re", "composed_im", "abs_error",   "n_theta",
                 "n_phi"};
  json row = json::object();
  row["twice_s"] = twice_s;
  merge(row, direction_fields("_start", s[0]));
  merge(row, direction_fields("_end", s[1]));
  row["insertions"] = r.insertions;
  row["exact_re"] = r.exact.real();
  row["exact_im"] = r.exact.imag();
  row["composed_re"] = r.composed.real();
  row["composed_im"] = r.composed.imag();
  row["abs_error"] = r.abs_error;
  row["n_theta"] = r.n_theta;
  row["n_phi"] = r.n_phi;
  rep.rows.push_back(row);
  return rep;
}

Report run_loop_phase(int twice_s, double theta, int min_steps,
                      int max_steps) {
  if (min_steps < 2 || max_steps < min_steps) {
    throw std::invalid_argument("loop-phase: need 2 <= min-steps <= max-steps");
  }
  const SpinQuantumNumber s(twice_s);

  Report rep;
  rep.experiment = "loop-phase";
  rep.meta["twice_s"] = twice_s;
  rep.meta["theta"] = theta;
  rep.columns = {"N", "action", "exact_phase", "gap"};

  std::vector<int> sweep;
  for (int k = 0;; ++k) {
    const int n = static_cast<int>(std::llround(std::pow(10.0, 1.0 + 0.5 * k)));
    if (n > max_steps) break;
    if (n >= min_steps) sweep.push_back(n);
  }
  if (sweep.empty() || sweep.back() != max_steps) sweep.push_back(max_steps);

  for (int n : sweep) {
    const PathSpec loop = latitude_loop(s, theta, n);
    json row = json::object();
    row["N"] = n;
    row["action"] = discrete_action(loop);
    row["exact_phase"] = exact_phase(loop);
    row["gap"] = phase_convention_gap(loop);
    rep.rows.push_back(row);
  }

  const PathSpec finest = latitude_loop(s, theta, sweep.back());
  const Complex amp = path_amplitude(finest);
  const Complex factor = std::exp(Complex(0.0, exact_phase(finest)));
  rep.meta["amplitude_re"] = amp.real();
  rep.meta["amplitude_im"] = amp.imag();
  rep.meta["amplitude_abs"] = std::abs(amp);
  rep.meta["geometric_factor_re"] = factor.real();
  rep.meta["geometric_factor_im"] = factor.imag();
  return rep;
}

Report run_width_scaling(double level, int min_twice_s, int max_twice_s) {
  if (min_twice_s < 1 || max_twice_s < min_twice_s) {
    throw std::invalid_argument(
        "width-scaling: need 1 <= min-twice-s <= max-twice-s");
  }
  Report rep;
  rep.experiment = "width-scaling";
  rep.columns = {"s", "width", "level"};

  std::vector<double> log_s, log_w;
  for (int twice_s = min_twice_s; twice_s <= max_twice_s; twice_s *= 2) {
    const double w = transmission_width(SpinQuantumNumber(twice_s), level);
    json row = json::object();
    row["s"] = 0.5 * twice_s;
    row["width"] = w;
    row["level"] = level;
    rep.rows.push_back(row);
    log_s.push_back(std::log(0.5 * twice_s));
    log_w.push_back(std::log(w));
  }
  if (log_s.size() >= 2) {
    const size_t n = log_s.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
      sx += log_s[i];
      sy += log_w[i];
      sxx += log_s[i] * log_s[i];
      sxy += log_s[i] * log_w[i];
    }
    rep.meta["slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

Report run_dynamics(const std::string& which, double omega0, int twice_s,
                    const std::vector<std::string>& settings, double t_end,
                    double step) {
  const std::vector<Direction> s = parse_settings(settings, 1, "dynamics");
  const SpinQuantumNumber spin(twice_s);
  SphereFunction h;
  if (which == "uniform") {
    h = uniform_field_hamiltonian(omega0, spin);
  } else if (which == "transverse") {
    h = transverse_field_hamiltonian(omega0, spin);
  } else {
    throw std::invalid_argument("dynamics: unknown hamiltonian '" + which +
                                "'");
  }
  if (t_end <= 0.0) t_end = kTwoPi / omega0;

  const Trajectory traj = integrate_motion(h, spin, s[0], t_end, step);

  Report rep;
  rep.experiment = "dynamics";
  rep.meta["settings"] = settings_field(s);
  rep.meta["hamiltonian"] = h.name;
  rep.meta["omega0"] = omega0;
  rep.meta["twice_s"] = twice_s;
  rep.meta["step"] = traj.step;
  rep.meta["used_finite_differences"] = traj.used_finite_differences;
  rep.columns = {"t", "theta", "phi", "energy"};
  for (const TrajectorySample& p : traj.samples) {
    json row = json::object();
    row["t"] = p.t;
    row["theta"] = p.theta;
    row["phi"] = p.phi;
    row["energy"] = p.energy;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Classical and quantum Malus laws for spin systems: coherent states, "
      "quasi-probability distributions, EPR correlations, path composition, "
      "and the large-s limit"};
  app.require_subcommand(1);

  OutputOptions out;
  GridOptions grid;
  int twice_s = 1;
  std::string distribution = "uniform";
  std::vector<std::string> settings;

  // malus
  auto* malus = app.add_subcommand(
      "malus", "Analyzer transmission averaged over a distribution");
  std::string malus_kind = "quantum";
  malus->add_option("--kind", malus_kind, "quantum or classical analyzer law")
      ->check(CLI::IsMember({"quantum", "classical"}))
      ->capture_default_str();
  malus->add_option("--distribution", distribution, "Distribution identifier")
      ->capture_default_str();
  malus->add_option("--twice-s", twice_s, "2s")->capture_default_str();
  malus->add_option("--settings", settings,
                    "Analyzer direction as theta,phi (radians)");
  add_grid_options(malus, &grid);
  add_output_options(malus, &out);

  // joint
  auto* joint = app.add_subcommand(
      "joint", "Two-wing coincidence probability of a hidden-variable model");
  std::string joint_dist = "pro2";
  joint->add_option("--distribution", joint_dist, "Two-party distribution")
      ->capture_default_str();
  joint->add_option("--settings", settings,
                    "Both analyzer directions: theta,phi theta,phi");
  add_grid_options(joint, &grid);
  add_output_options(joint, &out);

  // chsh
  auto* chsh = app.add_subcommand("chsh", "CHSH correlation sum");
  std::string chsh_oracle = "quantum";
  bool standard = false;
  chsh->add_option("--oracle", chsh_oracle,
                   "quantum (matrix oracle) or a two-party distribution name")
      ->capture_default_str();
  chsh->add_flag("--standard-settings", standard,
                 "Coplanar settings reaching S = 2*sqrt(2) (the default)");
  chsh->add_option("--settings", settings,
                   "Four directions a a' b b' as theta,phi tokens");
  add_grid_options(chsh, &grid);
  add_output_options(chsh, &out);

  // reconstruct
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "Density matrix from a quasi-probability distribution");
  reconstruct->add_option("--distribution", distribution, "Distribution")
      ->required();
  reconstruct->add_option("--twice-s", twice_s, "2s per party")
      ->capture_default_str();
  add_grid_options(reconstruct, &grid);
  add_output_options(reconstruct, &out);

  // negativity
  auto* negativity = app.add_subcommand(
      "negativity", "Minimum of the smooth part over grid nodes and poles");
  negativity->add_option("--distribution", distribution, "Distribution")
      ->required();
  add_grid_options(negativity, &grid);
  add_output_options(negativity, &out);

  // pathint
  auto* pathint = app.add_subcommand(
      "pathint", "Composed amplitude through quadrature identity insertions");
  int insertions = 1;
  pathint->add_option("--twice-s", twice_s, "2s")->capture_default_str();
  pathint->add_option("--insertions", insertions, "Number of insertions K")
      ->capture_default_str();
  pathint->add_option("--settings", settings,
                      "Start and end directions as theta,phi tokens");
  add_grid_options(pathint, &grid);
  add_output_options(pathint, &out);

  // loop-phase
  auto* loop = app.add_subcommand(
      "loop-phase", "Refinement sweep of a closed latitude loop");
  double loop_theta = 0.5 * kPi;
  int min_steps = 10;
  int max_steps = 10000;
  loop->add_option("--twice-s", twice_s, "2s")->capture_default_str();
  loop->add_option("--theta", loop_theta, "Latitude polar angle (radians)")
      ->capture_default_str();
  loop->add_option("--min-steps", min_steps, "Coarsest loop")
      ->capture_default_str();
  loop->add_option("--max-steps", max_steps, "Finest loop")
      ->capture_default_str();
  add_output_options(loop, &out);

  // width-scaling
  auto* width = app.add_subcommand(
      "width-scaling", "Transmission width across a doubling sweep of s");
  double level = 0.5;
  int min_twice_s = 20;
  int max_twice_s = 640;
  width->add_option("--level", level, "Transmission level in (0, 1)")
      ->capture_default_str();
  width->add_option("--min-twice-s", min_twice_s, "Sweep start (2s)")
      ->capture_default_str();
  width->add_option("--max-twice-s", max_twice_s, "Sweep end (2s)")
      ->capture_default_str();
  add_output_options(width, &out);

  // dynamics
  auto* dynamics = app.add_subcommand(
      "dynamics", "Classical precession under a built-in Hamiltonian");
  std::string hamiltonian = "uniform";
  double omega0 = 1.0;
  double t_end = 0.0;
  double step = 1e-3;
  int dyn_twice_s = 2;
  dynamics->add_option("--hamiltonian", hamiltonian, "uniform or transverse")
      ->check(CLI::IsMember({"uniform", "transverse"}))
      ->capture_default_str();
  dynamics->add_option("--omega0", omega0, "Field frequency")
      ->capture_default_str();
  dynamics->add_option("--twice-s", dyn_twice_s, "2s")->capture_default_str();
  dynamics->add_option("--settings", settings,
                       "Initial direction as theta,phi");
  dynamics->add_option("--t-end", t_end,
                       "Total time (default one period 2*pi/omega0)");
  dynamics->add_option("--step", step, "RK4 step size")->capture_default_str();
  add_output_options(dynamics, &out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Report rep;
    if (*malus) {
      if (settings.empty()) settings = {"0,0"};
      rep = run_malus(malus_kind, distribution, twice_s, settings, grid);
    } else if (*joint) {
      rep = run_joint(joint_dist, 1, settings, grid);
    } else if (*chsh) {
      rep = run_chsh(chsh_oracle, settings, standard, grid);
    } else if (*reconstruct) {
      rep = run_reconstruct(distribution, twice_s, grid);
    } else if (*negativity) {
      rep = run_negativity(distribution, grid);
    } else if (*pathint) {
      rep = run_pathint(twice_s, insertions, settings, grid);
    } else if (*loop) {
      rep = run_loop_phase(twice_s, loop_theta, min_steps, max_steps);
    } else if (*width) {
      rep = run_width_scaling(level, min_twice_s, max_twice_s);
    } else if (*dynamics) {
      if (settings.empty()) settings = {fmt(kPi / 3.0) + ",0"};
      rep = run_dynamics(hamiltonian, omega0, dyn_twice_s, settings, t_end,
                         step);
    }
    emit(rep, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
