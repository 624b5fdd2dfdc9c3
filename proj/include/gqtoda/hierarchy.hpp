#pragma once

#include <span>
#include <utility>

#include "gqtoda/difference_operator.hpp"
#include "gqtoda/function.hpp"

namespace gqtoda {

/// Fields of the Lax operator L = Lambda + u + e^v Lambda^{-1}.
///
/// The coupling V = e^v is stored directly, which also admits the free
/// operator V = 0 (the v -> -infinity limit).
struct LaxFields {
  Function u;
  Function coupling;

  /// Named u(x), V(x) = e^{v(x)}.
  static LaxFields from_potentials(const Function& u, const Function& v);
  /// u, V given directly (V may vanish).
  static LaxFields from_coupling(const Function& u, const Function& coupling);

  /// v = log V.
  Function v() const { return log(coupling); }
};

/// Lambda + u + V Lambda^{-1}, band [-1, 1].
DifferenceOperator lax_from_fields(const LaxFields& fields, const ShiftParams& p);

/// B_j = L^j / j!, 1 <= j <= limits.max_power.
DifferenceOperator bj(const DifferenceOperator& L, int j, const AlgebraLimits& limits = {});

/// Right-hand side of eps d/dt_j L = [(B_j)_+, L], divided by eps.
struct FlowRhs {
  Function du_dt;
  Function dv_dt;
  Function dcoupling_dt;  ///< d/dt_j e^v
};

/// Largest relative coefficient of [(B_j)_+, L] outside band [-1, 0] over the
/// probe points; relative to 1 + the largest |coefficient| of (B_j)_+ o L and
/// L o (B_j)_+ at that point and power.
double commutator_support_defect(const LaxFields& fields, int j, const ShiftParams& p, std::span<const double> probes,
                                 const AlgebraLimits& limits = {});

/// Flow of the j-th time. Throws ConsistencyError if [(B_j)_+, L] has support
/// outside [-1, 0] beyond 1e-10 at any probe point (probes must be non-empty).
FlowRhs flow_rhs(const LaxFields& fields, int j, const ShiftParams& p, std::span<const double> probes,
                 const AlgebraLimits& limits = {});

/// h_j = Res L^j / j!.
Function hamiltonian_density(const LaxFields& fields, int j, const ShiftParams& p, const AlgebraLimits& limits = {});

struct VariationalDerivatives {
  Function dH_du;
  Function dH_dv;
};

/// (a_{n;0}(x), a_{n;1}(x / (1 + eps x)) e^{v(x)}) with a_{n;k} the coefficients of B_n.
VariationalDerivatives variational_derivatives(const LaxFields& fields, int n, const ShiftParams& p,
                                               const AlgebraLimits& limits = {});

/// n a_{n;1}(x) - a_{n-1;0}(x/(1-eps x)) - u a_{n-1;1}(x) - e^v a_{n-1;2}(x/(1+eps x)), n >= 2.
Function recursion_residual(const LaxFields& fields, int n, const ShiftParams& p, const AlgebraLimits& limits = {});

/// d h_m / d t_n = Res[(L^n)_+, L^m] / (eps m! n!).
Function density_flow_derivative(const LaxFields& fields, int m, int n, const ShiftParams& p,
                                 const AlgebraLimits& limits = {});

/// (Res[(L^m)_+, L^n] - Res[(L^n)_+, L^m]) / (m! n!).
Function tau_symmetry_residual(const LaxFields& fields, int m, int n, const ShiftParams& p,
                               const AlgebraLimits& limits = {});

/// chi(z) = z^{-1/(x eps)}; Lambda chi = z chi.
double chi(double z, double x, const ShiftParams& p);

struct WaveSample {
  double z = 1.0;
  Function amplitude = 1.0;
};

/// (L psi - z psi) / chi for psi = amplitude * chi, using
/// Lambda^k (A chi) = A(x / (1 - k eps x)) z^k chi.
double wave_eigen_residual(const LaxFields& fields, const WaveSample& w, double x, const ShiftParams& p);

struct MultitodaResidual {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// r1 = w(x) - w(x/(1+eps x)) - eps d_t(e^phi) e^{-phi},
/// r2 = eps d_t w(x) + e^{phi(x)} e^{-phi(x/(1-eps x))}.
std::pair<Function, Function> multitoda_residual_functions(const Function& phi, const Function& omega1,
                                                           const ShiftParams& p);

MultitodaResidual multitoda_residual(const Function& phi, const Function& omega1, double x, double t,
                                     const ShiftParams& p);

}  // namespace gqtoda
