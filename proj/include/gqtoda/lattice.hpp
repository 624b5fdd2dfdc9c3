#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gqtoda/function.hpp"
#include "gqtoda/hirota.hpp"
#include "gqtoda/qshift.hpp"

namespace gqtoda {

/// Uniform grid y_n = y0 + n eps in y = -1/x. Lambda^{+-1} maps node n to n +- 1.
class LatticeGrid {
 public:
  /// Requires count >= 3 and 0 outside [y0, y0 + (count - 1) eps] (y = 0 is x = infinity).
  LatticeGrid(double y0, int count, const ShiftParams& p);

  /// Grid of `count` nodes whose midpoint is closest to y_center.
  static LatticeGrid centered(double y_center, int count, const ShiftParams& p);

  const ShiftParams& params() const { return params_; }
  int count() const { return count_; }
  double spacing() const { return params_.epsilon(); }
  double y(int n) const { return y0_ + n * params_.epsilon(); }
  double x(int n) const { return y_to_x(y(n)); }
  double y0() const { return y0_; }

 private:
  double y0_;
  int count_;
  ShiftParams params_;
};

enum class Boundary { zero_force, analytic_clamp };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 5.0;
  Boundary boundary = Boundary::zero_force;
  double output_every = 0.1;
};

/// L_n = log(1 + V_n), M_n = dL_n/dt.
struct LatticeState {
  double t = 0.0;
  Eigen::ArrayXd L;
  Eigen::ArrayXd M;

  Eigen::ArrayXd V() const { return L.exp() - 1.0; }
};

struct StateRate {
  Eigen::ArrayXd dL;
  Eigen::ArrayXd dM;
};

/// Samples V and dV/dt at the nodes. DomainError where 1 + V <= 0.
LatticeState init_from_field(const Function& V, const LatticeGrid& grid, double t0);

/// dL/dt = M, dM/dt = (V_{n+1} + V_{n-1} - 2 V_n) / eps^2. Ghost nodes carry
/// V = 0 (zero_force) or the analytic field at time state.t (analytic_clamp,
/// which requires `analytic`).
StateRate rhs(const LatticeState& state, const LatticeGrid& grid, const IntegratorConfig& cfg,
              const Function* analytic = nullptr);

/// 0.25 eps / sqrt(max_n (1 + V_n)).
double stability_bound(const LatticeState& state, const ShiftParams& p);

/// One classical RK4 step of size cfg.dt (negative steps integrate backwards).
/// Throws BlowUpError on a stability-bound violation or a non-finite state.
LatticeState step_rk4(const LatticeState& state, const LatticeGrid& grid, const IntegratorConfig& cfg,
                      const Function* analytic = nullptr);

struct ErrorSample {
  double t = 0.0;
  double max_abs = 0.0;
  double l2 = 0.0;
  double momentum = 0.0;  ///< sum_n M_n
};

struct ErrorReport {
  double max_abs = 0.0;
  double l2 = 0.0;  ///< max over output times of sqrt(eps sum_n err_n^2)
  std::vector<ErrorSample> series;
  LatticeState final_state;
};

/// Called at every output time with the state and the analytic V at the nodes.
using SnapshotSink = std::function<void(const LatticeState&, const Eigen::ArrayXd& analytic_V)>;

/// Integrate from the analytic field at t = 0 to cfg.t_end and record the
/// error against it at every output time. `analytic` is a solution of the
/// lattice equation in lattice time.
ErrorReport integrate_and_compare(const Function& analytic, const LatticeGrid& grid, const IntegratorConfig& cfg,
                                  const SnapshotSink& sink = {});

/// Same, with the analytic field lattice_time(field_V(tau_function(spec))).
ErrorReport integrate_and_compare(const SolitonSpec& spec, const LatticeGrid& grid, const IntegratorConfig& cfg,
                                  const SnapshotSink& sink = {});

/// lattice_time(field_V(tau_function(spec))): the soliton as a solution of the lattice equation.
Function lattice_soliton_field(const SolitonSpec& spec);

}  // namespace gqtoda
