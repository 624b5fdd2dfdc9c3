#include "gqtoda/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gqtoda {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_power(int j, const AlgebraLimits& limits, const char* what) {
  if (j < 1) throw ConfigError(std::string(what) + ": index must be >= 1, got " + std::to_string(j));
  if (j > limits.max_power) {
    throw BandOverflowError(std::string(what) + ": power " + std::to_string(j) + " exceeds the configured maximum " +
                            std::to_string(limits.max_power));
  }
}

// L^j, by right multiplication so that shifts land on the simple coefficients of L.
DifferenceOperator lax_power(const DifferenceOperator& L, int j, const AlgebraLimits& limits) {
  DifferenceOperator out = L;
  for (int i = 1; i < j; ++i) out = op_compose(out, L, limits);
  return out;
}

constexpr double kSupportTol = 1e-10;

}  // namespace

LaxFields LaxFields::from_potentials(const Function& u, const Function& v) {
  return {named("u", u), named("V", exp(v))};
}

LaxFields LaxFields::from_coupling(const Function& u, const Function& coupling) { return {u, coupling}; }

DifferenceOperator lax_from_fields(const LaxFields& fields, const ShiftParams& p) {
  return DifferenceOperator(p, {{1, Function(1.0)}, {0, fields.u}, {-1, fields.coupling}});
}

DifferenceOperator bj(const DifferenceOperator& L, int j, const AlgebraLimits& limits) {
  require_power(j, limits, "B_j");
  return op_scale(1.0 / factorial(j), lax_power(L, j, limits));
}

double commutator_support_defect(const LaxFields& fields, int j, const ShiftParams& p, std::span<const double> probes,
                                 const AlgebraLimits& limits) {
  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator plus = project_plus(bj(L, j, limits));
  const DifferenceOperator pl = op_compose(plus, L, limits);
  const DifferenceOperator lp = op_compose(L, plus, limits);
  const DifferenceOperator c = pl - lp;
  double worst = 0.0;
  for (const auto& [k, coeff] : c.terms()) {
    if (k == 0 || k == -1) continue;
    const Function a = pl.coefficient(k);
    const Function b = lp.coefficient(k);
    for (double x : probes) {
      const double scale = 1.0 + std::max(std::abs(a(x)), std::abs(b(x)));
      worst = std::max(worst, std::abs(coeff(x)) / scale);
    }
  }
  return worst;
}

FlowRhs flow_rhs(const LaxFields& fields, int j, const ShiftParams& p, std::span<const double> probes,
                 const AlgebraLimits& limits) {
  if (probes.empty()) throw ConfigError("flow_rhs needs probe points for the support check");
  const double defect = commutator_support_defect(fields, j, p, probes, limits);
  if (!(defect <= kSupportTol)) {
    throw ConsistencyError("[(B_" + std::to_string(j) + ")_+, L] has support outside [-1, 0]: defect " +
                           std::to_string(defect));
  }
  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator plus = project_plus(bj(L, j, limits));
  const DifferenceOperator c = commutator(plus, L, limits);
  const double inv_eps = 1.0 / p.epsilon();
  FlowRhs out;
  out.du_dt = inv_eps * c.coefficient(0);
  out.dcoupling_dt = inv_eps * c.coefficient(-1);
  out.dv_dt = out.dcoupling_dt / fields.coupling;
  return out;
}

Function hamiltonian_density(const LaxFields& fields, int j, const ShiftParams& p, const AlgebraLimits& limits) {
  return residue(bj(lax_from_fields(fields, p), j, limits));
}

VariationalDerivatives variational_derivatives(const LaxFields& fields, int n, const ShiftParams& p,
                                               const AlgebraLimits& limits) {
  const DifferenceOperator b = bj(lax_from_fields(fields, p), n, limits);
  return {b.coefficient(0), shift_apply(b.coefficient(1), -1, p) * fields.coupling};
}

Function recursion_residual(const LaxFields& fields, int n, const ShiftParams& p, const AlgebraLimits& limits) {
  if (n < 2) throw ConfigError("recursion residual needs n >= 2");
  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator bn = bj(L, n, limits);
  const DifferenceOperator bm = bj(L, n - 1, limits);
  return double(n) * bn.coefficient(1) - shift_apply(bm.coefficient(0), 1, p) - fields.u * bm.coefficient(1) -
         fields.coupling * shift_apply(bm.coefficient(2), -1, p);
}

Function density_flow_derivative(const LaxFields& fields, int m, int n, const ShiftParams& p,
                                 const AlgebraLimits& limits) {
  require_power(m, limits, "h_m");
  require_power(n, limits, "t_n");
  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator lm = lax_power(L, m, limits);
  const DifferenceOperator ln_plus = project_plus(lax_power(L, n, limits));
  const int reach = m + n;
  if (reach > limits.max_band) {
    throw BandOverflowError("commutator of L^" + std::to_string(n) + " and L^" + std::to_string(m) +
                            " exceeds the maximum band " + std::to_string(limits.max_band));
  }
  const Function res = residue_of_composition(ln_plus, lm) - residue_of_composition(lm, ln_plus);
  return (1.0 / (p.epsilon() * factorial(m) * factorial(n))) * res;
}

Function tau_symmetry_residual(const LaxFields& fields, int m, int n, const ShiftParams& p,
                               const AlgebraLimits& limits) {
  require_power(m, limits, "tau symmetry m");
  require_power(n, limits, "tau symmetry n");
  if (m + n > limits.max_band) {
    throw BandOverflowError("tau symmetry (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") exceeds the maximum band " + std::to_string(limits.max_band));
  }
  const DifferenceOperator L = lax_from_fields(fields, p);
  const DifferenceOperator lm = lax_power(L, m, limits);
  const DifferenceOperator ln = lax_power(L, n, limits);
  const DifferenceOperator lm_plus = project_plus(lm);
  const DifferenceOperator ln_plus = project_plus(ln);
  const Function a = residue_of_composition(lm_plus, ln) - residue_of_composition(ln, lm_plus);
  const Function b = residue_of_composition(ln_plus, lm) - residue_of_composition(lm, ln_plus);
  return (1.0 / (factorial(m) * factorial(n))) * (a - b);
}

double chi(double z, double x, const ShiftParams& p) {
  if (!(z > 0.0)) throw DomainError("chi: spectral parameter z must be positive");
  if (x == 0.0) throw DomainError("chi: x = 0");
  return std::exp(-std::log(z) / (x * p.epsilon()));
}

double wave_eigen_residual(const LaxFields& fields, const WaveSample& w, double x, const ShiftParams& p) {
  if (!(w.z > 0.0)) throw DomainError("wave sample: z must be positive");
  const DifferenceOperator L = lax_from_fields(fields, p);
  double acc = -w.z * w.amplitude(x);
  for (const auto& [k, c] : L.terms()) {
    acc += c(x) * w.amplitude(mobius_shift(x, k, p)) * std::pow(w.z, k);
  }
  return acc;
}

std::pair<Function, Function> multitoda_residual_functions(const Function& phi, const Function& omega1,
                                                           const ShiftParams& p) {
  const double eps = p.epsilon();
  Function r1 = omega1 - shift_apply(omega1, -1, p) - eps * time_derivative(exp(phi)) * exp(-phi);
  Function r2 = eps * time_derivative(omega1) + exp(phi) * exp(-shift_apply(phi, 1, p));
  return {std::move(r1), std::move(r2)};
}

MultitodaResidual multitoda_residual(const Function& phi, const Function& omega1, double x, double t,
                                     const ShiftParams& p) {
  const auto [r1, r2] = multitoda_residual_functions(phi, omega1, p);
  return {r1(x, t), r2(x, t)};
}

}  // namespace gqtoda
