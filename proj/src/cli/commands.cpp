#include "gqtoda/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gqtoda/cli/output.hpp"
#include "gqtoda/errors.hpp"
#include "gqtoda/hierarchy.hpp"
#include "gqtoda/random.hpp"

namespace gqtoda::cli {

namespace {

namespace fs = std::filesystem;

Metadata base_metadata(const std::string& command, const RunConfig& cfg) {
  Metadata m{{"tool", kToolVersion}, {"command", command}};
  std::istringstream in(serialize_config(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    m.emplace_back("config." + line.substr(0, eq), line.substr(eq + 3));
  }
  return m;
}

// Derived constants of a spec, keyed derived.*.
Metadata derived_constants(const SolitonSpec& spec) {
  const auto& m = spec.modes();
  const ShiftParams& p = spec.params();
  Metadata out{{"derived.epsilon", format_number(p.epsilon())}};
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.emplace_back("derived.beta_" + std::to_string(i + 1), format_number(m[i].beta));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      out.emplace_back("derived.A_" + std::to_string(i + 1) + std::to_string(j + 1),
                       format_number(pairwise_A(m[i], m[j], p)));
    }
  }
  if (m.size() == 3) {
    out.emplace_back("derived.A_123", format_number(triple_A_direct(spec)));
    out.emplace_back("derived.A_123_product", format_number(triple_A_product(spec)));
  }
  return out;
}

constexpr const char* kDerivedSources =
    "# derived.beta_i: dispersion relation beta^2 = e^{alpha eps} + e^{-alpha eps} - 2\n"
    "# derived.A_ij: pair coefficient -P(p_i - p_j) / P(p_i + p_j)\n"
    "# derived.A_123: order-three balance; derived.A_123_product: A_12 A_13 A_23\n";

std::vector<double> axis(double lo, double hi, int count) { return Domain(lo, hi, 0).linspace(count); }

std::vector<double> window_x(const WindowConfig& w) {
  std::vector<double> xs = axis(w.x_min, w.x_max, w.x_count);
  if (std::find(xs.begin(), xs.end(), 0.0) != xs.end()) {
    throw ConfigError("window contains x = 0, where the phases -alpha/x are singular; change window.x_count");
  }
  return xs;
}

Format format_of(const RunConfig& cfg) { return format_from_string(cfg.output_format); }

fs::path write_table(const fs::path& out, const std::string& stem, const Table& t, Format f) {
  const fs::path path = out / (stem + extension(f));
  write_file(path, f == Format::csv ? to_csv(t) : to_json(t));
  return path;
}

double tolerance(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

std::string status(bool pass) { return pass ? "PASS" : "FAIL"; }

struct Stats {
  double max = 0.0;
  double sum = 0.0;
  long count = 0;
  void add(double v) {
    max = std::max(max, std::isnan(v) ? INFINITY : std::abs(v));
    sum += std::abs(v);
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
};

}  // namespace

CommandResult cmd_soliton(const RunConfig& cfg, const fs::path& out) {
  const SolitonSpec spec = cfg.spec();
  spec.validate();
  const Function V = field_V(tau_function(spec));
  const Format fmt = format_of(cfg);
  ensure_directory(out);

  Table t;
  t.metadata = base_metadata("soliton", cfg);
  const Metadata derived = derived_constants(spec);
  t.metadata.insert(t.metadata.end(), derived.begin(), derived.end());
  t.columns = {"x", "t", "V"};
  double peak = 0.0;
  for (double x : window_x(cfg.window)) {
    for (double time : axis(cfg.window.t_min, cfg.window.t_max, cfg.window.t_count)) {
      const double v = V(x, time);
      peak = std::max(peak, v);
      t.rows.push_back({x, time, v});
    }
  }
  CommandResult r;
  r.files.push_back(write_table(out, "soliton", t, fmt));

  std::string meta = "# " + std::string(kToolVersion) + " soliton metadata; loadable with --config\n";
  meta += serialize_config(cfg);
  meta += kDerivedSources;
  for (const auto& [k, v] : derived) meta += k + " = " + v + "\n";
  const fs::path meta_path = out / "soliton.meta";
  write_file(meta_path, meta);
  r.files.push_back(meta_path);
  r.summary = "soliton: " + std::to_string(spec.size()) + " mode(s), " + std::to_string(t.rows.size()) +
              " samples, max V = " + format_number(peak);
  return r;
}

CommandResult cmd_residual(const RunConfig& cfg, const fs::path& out) {
  const SolitonSpec spec = cfg.spec();
  const bool explicit_beta = cfg.has_explicit_beta();
  if (!explicit_beta) spec.validate();
  const ShiftParams& p = spec.params();
  const Function f = explicit_beta ? tau_function_unchecked(p, spec.modes()) : tau_function(spec);
  const Function V = lattice_time(field_V(f), p);
  const double tol = tolerance(cfg, 1e-9);
  const Format fmt = format_of(cfg);
  ensure_directory(out);

  Stats bilinear, gqte;
  for (double x : axis(cfg.window.x_min, cfg.window.x_max, cfg.residual.samples)) {
    if (std::abs(x) < cfg.residual.min_abs_x) continue;
    for (double time : axis(cfg.window.t_min, cfg.window.t_max, cfg.residual.samples)) {
      bilinear.add(bilinear_residual(f, x, time, p).relative());
      gqte.add(gqte_residual(V, x, p.epsilon() * time, p).relative());
    }
  }
  if (bilinear.count == 0) throw ConfigError("residual window is empty after excluding |x| < residual.min_abs_x");

  Table t;
  t.metadata = base_metadata("residual", cfg);
  t.metadata.emplace_back("residual.normalization", "|R| / (1 + max |term|)");
  t.columns = {"check", "samples", "max_rel", "mean_rel", "tol", "status"};
  bool pass = true;
  for (const auto& [name, s] : {std::pair<std::string, const Stats&>{"bilinear", bilinear}, {"gqte", gqte}}) {
    const bool ok = s.max <= tol;
    pass = pass && ok;
    t.rows.push_back({name, double(s.count), s.max, s.mean(), tol, status(ok)});
  }
  CommandResult r;
  r.files.push_back(write_table(out, "residual", t, fmt));
  r.exit_code = pass ? kPass : kToleranceFailure;
  r.summary = "residual: bilinear max " + format_number(bilinear.max) + ", gqte max " + format_number(gqte.max) +
              " (tol " + format_number(tol) + ") " + status(pass);
  return r;
}

CommandResult cmd_simulate(const RunConfig& cfg, const fs::path& out) {
  const SolitonSpec spec = cfg.spec();
  spec.validate();
  const LatticeGrid grid(cfg.grid_y0, cfg.grid_count, spec.params());
  const double tol = tolerance(cfg, 1e-5);
  const Format fmt = format_of(cfg);
  ensure_directory(out);

  Table series;
  series.columns = {"t", "node", "y", "x", "V", "V_analytic", "abs_err"};
  const ErrorReport report = integrate_and_compare(spec, grid, cfg.integrator,
                                                   [&](const LatticeState& s, const Eigen::ArrayXd& exact) {
                                                     const Eigen::ArrayXd v = s.V();
                                                     for (int n = 0; n < grid.count(); ++n) {
                                                       series.rows.push_back({s.t, double(n), grid.y(n), grid.x(n), v[n],
                                                                              exact[n], std::abs(v[n] - exact[n])});
                                                     }
                                                   });
  const LatticeState s0 = init_from_field(lattice_soliton_field(spec), grid, 0.0);
  const bool pass = report.max_abs <= tol;

  Metadata meta = base_metadata("simulate", cfg);
  const Metadata derived = derived_constants(spec);
  meta.insert(meta.end(), derived.begin(), derived.end());
  meta.emplace_back("simulate.time", "lattice time s = eps t");
  meta.emplace_back("simulate.boundary", to_string(cfg.integrator.boundary));
  meta.emplace_back("simulate.stability_rule", "dt <= 0.25 eps / sqrt(max(1 + V)) (linearized lattice, enforced per step)");
  meta.emplace_back("simulate.stability_bound_t0", format_number(stability_bound(s0, spec.params())));
  meta.emplace_back("simulate.max_abs", format_number(report.max_abs));
  meta.emplace_back("simulate.l2", format_number(report.l2));
  meta.emplace_back("simulate.tol", format_number(tol));
  meta.emplace_back("simulate.status", status(pass));
  series.metadata = meta;

  Table errors;
  errors.metadata = meta;
  errors.columns = {"t", "max_abs", "l2", "momentum"};
  for (const ErrorSample& e : report.series) errors.rows.push_back({e.t, e.max_abs, e.l2, e.momentum});

  CommandResult r;
  r.files.push_back(write_table(out, "simulate", series, fmt));
  r.files.push_back(write_table(out, "simulate_errors", errors, fmt));
  r.exit_code = pass ? kPass : kToleranceFailure;
  r.summary = "simulate: max abs error " + format_number(report.max_abs) + ", l2 " + format_number(report.l2) +
              " (tol " + format_number(tol) + ") " + status(pass);
  return r;
}

CommandResult cmd_hierarchy(const RunConfig& cfg, const fs::path& out) {
  const ShiftParams p = cfg.params();
  const HierarchyConfig& h = cfg.hierarchy;
  const AlgebraLimits& limits = h.limits;
  constexpr int kMaxIndex = 4;
  // tau symmetry for m, n <= 4 reaches shifts of 8.
  Domain(h.x_min, h.x_max, 2 * kMaxIndex).require_admissible(p);
  if (h.x_min <= 0.0) throw ConfigError("hierarchy window must lie in x > 0");
  const double tol = tolerance(cfg, 1e-10);
  const Format fmt = format_of(cfg);

  Rng rng(cfg.seed);
  const double y_lo = -1.0 / h.x_min, y_hi = -1.0 / h.x_max;
  const Function u = random_smooth_field(rng, 1.0, y_lo, y_hi);
  const Function v = random_smooth_field(rng, 1.0, y_lo, y_hi);
  const LaxFields fields = LaxFields::from_potentials(u, v);
  std::vector<double> probes(h.samples);
  for (double& x : probes) x = rng.uniform(h.x_min, h.x_max);

  Table t;
  t.metadata = base_metadata("hierarchy", cfg);
  t.columns = {"identity", "index", "max_residual", "tol", "status"};
  bool pass = true;
  auto row = [&](const std::string& name, const std::string& index, double value) {
    const bool ok = value <= tol;
    pass = pass && ok;
    t.rows.push_back({name, index, value, tol, status(ok)});
  };
  auto max_over = [&](const Function& g) {
    double m = 0.0;
    for (double x : probes) m = std::max(m, std::abs(g(x)));
    return m;
  };

  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator c1 = commutator(project_plus(L), L, limits);
  t.metadata.emplace_back("toda.eps_du_dt1", c1.coefficient(0).to_string());
  t.metadata.emplace_back("toda.eps_dV_dt1", c1.coefficient(-1).to_string());

  for (int j = 1; j <= kMaxIndex; ++j) {
    row("commutator_support", "j=" + std::to_string(j), commutator_support_defect(fields, j, p, probes, limits));
  }
  {
    const FlowRhs rhs = flow_rhs(fields, 1, p, probes, limits);
    const Function V = fields.coupling;
    const double e = p.epsilon();
    const Function du = e * rhs.du_dt - (shift_apply(V, 1, p) - V);
    const Function dV = e * rhs.dcoupling_dt - (fields.u * V - V * shift_apply(fields.u, -1, p));
    row("toda_flow", "j=1", std::max(max_over(du), max_over(dV)));
  }
  for (int n = 1; n <= kMaxIndex; ++n) {
    const FlowRhs rhs = flow_rhs(fields, n, p, probes, limits);
    const VariationalDerivatives d = variational_derivatives(fields, n, p, limits);
    const double e = p.epsilon();
    const Function du = e * rhs.du_dt - (shift_apply(d.dH_dv, 1, p) - d.dH_dv);
    const Function dv = e * rhs.dv_dt - (d.dH_du - shift_apply(d.dH_du, -1, p));
    row("hamiltonian_flow", "n=" + std::to_string(n), std::max(max_over(du), max_over(dv)));
  }
  for (int n = 2; n <= kMaxIndex; ++n) {
    row("recursion", "n=" + std::to_string(n), max_over(recursion_residual(fields, n, p, limits)));
  }
  for (int m = 1; m <= kMaxIndex; ++m) {
    for (int n = m + 1; n <= kMaxIndex; ++n) {
      row("tau_symmetry", "m=" + std::to_string(m) + ";n=" + std::to_string(n),
          max_over(tau_symmetry_residual(fields, m, n, p, limits)));
    }
  }
  {
    const LaxFields free = LaxFields::from_coupling(0.0, 0.0);
    double worst = 0.0;
    for (double x : probes) {
      const double z = rng.uniform(0.5, 2.0);
      const double c = chi(z, x, p);
      worst = std::max(worst, std::abs(chi(z, mobius_shift(x, 1, p), p) - z * c) / (z * c));
      worst = std::max(worst, std::abs(wave_eigen_residual(free, {z, 1.0}, x, p)));
    }
    row("wave_vacuum", "L=Lambda", worst);
  }

  ensure_directory(out);
  CommandResult r;
  r.files.push_back(write_table(out, "hierarchy", t, fmt));
  r.exit_code = pass ? kPass : kToleranceFailure;
  r.summary = "hierarchy: " + std::to_string(t.rows.size()) + " identities " + status(pass) + " at tol " +
              format_number(tol);
  return r;
}

CommandResult cmd_figures(const RunConfig& cfg, const fs::path& out) {
  const ShiftParams p = cfg.params();
  struct Preset {
    double alpha;
    int sign;
  };
  const std::vector<std::vector<Preset>> figures = {
      {{-5.0, -1}},
      {{-5.0, -1}, {6.0, -1}},
      {{-5.0, -1}, {6.0, -1}, {-7.9141, 1}},
  };
  const std::vector<double> xs = window_x(cfg.window);
  const std::vector<double> ts = axis(cfg.window.t_min, cfg.window.t_max, cfg.window.t_count);
  ensure_directory(out);
  CommandResult r;
  std::ostringstream summary;
  summary << "figures:";
  for (std::size_t k = 0; k < figures.size(); ++k) {
    std::vector<SolitonMode> modes;
    for (const Preset& m : figures[k]) modes.push_back(make_mode(m.alpha, p, m.sign));
    const SolitonSpec spec(p, modes);
    spec.validate();
    const Function V = field_V(tau_function(spec));
    const std::string stem = "fig" + std::to_string(k + 1);

    std::ostringstream data;
    data << "# " << kToolVersion << " " << stem << ": V(x, t), eta = 0\n";
    for (const auto& [key, value] : derived_constants(spec)) data << "# " << key << " = " << value << '\n';
    data << "# columns: x t V (blank line between x blocks)\n";
    double peak = 0.0;
    for (double x : xs) {
      for (double time : ts) {
        const double v = V(x, time);
        peak = std::max(peak, v);
        data << format_number(x) << ' ' << format_number(time) << ' ' << format_number(v) << '\n';
      }
      data << '\n';
    }
    write_file(out / (stem + ".dat"), data.str());
    r.files.push_back(out / (stem + ".dat"));

    std::ostringstream gp;
    gp << "# gnuplot " << stem << ".gp\n"
       << "set terminal pngcairo size 900,700\n"
       << "set output '" << stem << ".png'\n"
       << "set xlabel 'x'\nset ylabel 't'\nset zlabel 'V'\n"
       << "set hidden3d\nset view 60,30\n"
       << "splot '" << stem << ".dat' using 1:2:3 with lines notitle\n";
    write_file(out / (stem + ".gp"), gp.str());
    r.files.push_back(out / (stem + ".gp"));
    summary << ' ' << stem << " peak " << format_number(peak);
  }
  r.summary = summary.str();
  return r;
}

int exit_code_for(const std::exception& e) {
  return dynamic_cast<const ConfigError*>(&e) ? kConfigError : kNumericError;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Generalized q-Toda lattice: solitons, residuals, simulation, hierarchy identities"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<CLI::Option*> seed_opts, tol_opts;
  using Command = CommandResult (*)(const RunConfig&, const fs::path&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"soliton", "Sample V(x, t) of a soliton and write its derived constants", cmd_soliton},
      {"residual", "Bilinear and field-equation residual suite", cmd_residual},
      {"simulate", "Integrate the lattice equation and compare with the soliton", cmd_simulate},
      {"hierarchy", "Check the hierarchy identities on random fields", cmd_hierarchy},
      {"figures", "Write gnuplot data for the three figure parameter sets", cmd_figures},
  };
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Key-value config file")->required();
    sub->add_option("--out", out_dir, "Output directory (default: output.dir, then $GQTODA_OUT, then .)");
    seed_opts.push_back(sub->add_option("--seed", seed, "Random seed (overrides the config)"));
    tol_opts.push_back(sub->add_option("--tol", tol, "Pass/fail tolerance (overrides the config)"));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }
  try {
    RunConfig cfg = load_config(config_path);
    auto given = [](const std::vector<CLI::Option*>& opts) {
      return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
    };
    if (given(seed_opts)) cfg.seed = seed;
    if (given(tol_opts)) {
      if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
      cfg.tol = tol;
    }
    fs::path out = ".";
    if (!out_dir.empty()) {
      out = out_dir;
    } else if (!cfg.output_dir.empty()) {
      out = cfg.output_dir;
    } else if (const char* env = std::getenv("GQTODA_OUT"); env && *env) {
      out = env;
    }
    for (const auto& [name, help, fn] : commands) {
      if (!app.got_subcommand(name)) continue;
      const CommandResult r = fn(cfg, out);
      std::cout << r.summary << '\n';
      for (const fs::path& f : r.files) std::cout << "  wrote " << f.string() << '\n';
      return r.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kConfigError;
}

}  // namespace gqtoda::cli
