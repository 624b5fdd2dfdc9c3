#include "gqtoda/lattice.hpp"

#include <cmath>

namespace gqtoda {

LatticeGrid::LatticeGrid(double y0, int count, const ShiftParams& p) : y0_(y0), count_(count), params_(p) {
  if (count < 3) throw ConfigError("lattice grid needs at least 3 nodes");
  const double y1 = y0 + (count - 1) * p.epsilon();
  if (y0 <= 0.0 && y1 >= 0.0) {
    throw ConfigError("lattice grid [" + std::to_string(y0) + ", " + std::to_string(y1) +
                      "] contains y = 0 (x = infinity)");
  }
}

LatticeGrid LatticeGrid::centered(double y_center, int count, const ShiftParams& p) {
  return LatticeGrid(y_center - 0.5 * (count - 1) * p.epsilon(), count, p);
}

std::string to_string(Boundary b) { return b == Boundary::zero_force ? "zero_force" : "analytic_clamp"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "zero_force") return Boundary::zero_force;
  if (s == "analytic_clamp") return Boundary::analytic_clamp;
  throw ConfigError("unknown boundary '" + s + "' (expected zero_force or analytic_clamp)");
}

LatticeState init_from_field(const Function& V, const LatticeGrid& grid, double t0) {
  LatticeState s;
  s.t = t0;
  s.L.resize(grid.count());
  s.M.resize(grid.count());
  for (int n = 0; n < grid.count(); ++n) {
    const Jet j = V.jet(grid.x(n), t0);
    const double one_plus = 1.0 + j[0];
    if (!(one_plus > 0.0)) throw DomainError("init_from_field: 1 + V <= 0 at node " + std::to_string(n));
    s.L[n] = std::log1p(j[0]);
    s.M[n] = j[1] / one_plus;
  }
  return s;
}

StateRate rhs(const LatticeState& state, const LatticeGrid& grid, const IntegratorConfig& cfg,
              const Function* analytic) {
  const int n = static_cast<int>(state.L.size());
  const Eigen::ArrayXd V = state.L.exp() - 1.0;
  double left = 0.0;
  double right = 0.0;
  if (cfg.boundary == Boundary::analytic_clamp) {
    if (!analytic) throw ConfigError("analytic_clamp boundary needs an analytic field");
    left = (*analytic)(y_to_x(grid.y(-1)), state.t);
    right = (*analytic)(y_to_x(grid.y(n)), state.t);
  }
  Eigen::ArrayXd padded(n + 2);
  padded[0] = left;
  padded.segment(1, n) = V;
  padded[n + 1] = right;
  const double inv_eps2 = 1.0 / (grid.spacing() * grid.spacing());
  StateRate r;
  r.dL = state.M;
  r.dM = (padded.segment(2, n) + padded.segment(0, n) - 2.0 * V) * inv_eps2;
  return r;
}

double stability_bound(const LatticeState& state, const ShiftParams& p) {
  return 0.25 * p.epsilon() / std::sqrt(state.L.exp().maxCoeff());
}

LatticeState step_rk4(const LatticeState& state, const LatticeGrid& grid, const IntegratorConfig& cfg,
                      const Function* analytic) {
  const double dt = cfg.dt;
  if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("time step must be finite and non-zero");
  const double bound = stability_bound(state, grid.params());
  if (!(std::abs(dt) <= bound)) {
    throw BlowUpError("time step " + std::to_string(std::abs(dt)) + " exceeds the stability bound " +
                      std::to_string(bound) + " at t = " + std::to_string(state.t));
  }
  auto stage = [&](const LatticeState& base, const StateRate& k, double h) {
    LatticeState s;
    s.t = base.t + h;
    s.L = base.L + h * k.dL;
    s.M = base.M + h * k.dM;
    return s;
  };
  const StateRate k1 = rhs(state, grid, cfg, analytic);
  const StateRate k2 = rhs(stage(state, k1, 0.5 * dt), grid, cfg, analytic);
  const StateRate k3 = rhs(stage(state, k2, 0.5 * dt), grid, cfg, analytic);
  const StateRate k4 = rhs(stage(state, k3, dt), grid, cfg, analytic);
  LatticeState out;
  out.t = state.t + dt;
  out.L = state.L + (dt / 6.0) * (k1.dL + 2.0 * k2.dL + 2.0 * k3.dL + k4.dL);
  out.M = state.M + (dt / 6.0) * (k1.dM + 2.0 * k2.dM + 2.0 * k3.dM + k4.dM);
  if (!out.L.allFinite() || !out.M.allFinite()) {
    throw BlowUpError("non-finite lattice state at t = " + std::to_string(out.t));
  }
  return out;
}

namespace {

Eigen::ArrayXd sample(const Function& V, const LatticeGrid& grid, double t) {
  Eigen::ArrayXd out(grid.count());
  for (int n = 0; n < grid.count(); ++n) out[n] = V(grid.x(n), t);
  return out;
}

}  // namespace

ErrorReport integrate_and_compare(const Function& analytic, const LatticeGrid& grid, const IntegratorConfig& cfg,
                                  const SnapshotSink& sink) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= 0.0)) throw ConfigError("integrator needs dt > 0 and t_end >= 0");
  const long long steps = std::llround(cfg.t_end / cfg.dt);
  const long long stride = std::max(1LL, std::llround(cfg.output_every / cfg.dt));
  const double eps = grid.spacing();

  ErrorReport report;
  LatticeState state = init_from_field(analytic, grid, 0.0);
  auto record = [&](const LatticeState& s) {
    const Eigen::ArrayXd exact = sample(analytic, grid, s.t);
    const Eigen::ArrayXd err = (s.V() - exact).abs();
    ErrorSample e;
    e.t = s.t;
    e.max_abs = err.maxCoeff();
    e.l2 = std::sqrt(eps * err.square().sum());
    e.momentum = s.M.sum();
    report.max_abs = std::max(report.max_abs, e.max_abs);
    report.l2 = std::max(report.l2, e.l2);
    report.series.push_back(e);
    if (sink) sink(s, exact);
  };
  record(state);
  for (long long i = 1; i <= steps; ++i) {
    state = step_rk4(state, grid, cfg, &analytic);
    state.t = double(i) * cfg.dt;
    if (i % stride == 0 || i == steps) record(state);
  }
  report.final_state = std::move(state);
  return report;
}

Function lattice_soliton_field(const SolitonSpec& spec) {
  return lattice_time(field_V(tau_function(spec)), spec.params());
}

ErrorReport integrate_and_compare(const SolitonSpec& spec, const LatticeGrid& grid, const IntegratorConfig& cfg,
                                  const SnapshotSink& sink) {
  return integrate_and_compare(lattice_soliton_field(spec), grid, cfg, sink);
}

}  // namespace gqtoda
