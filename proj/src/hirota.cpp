#include "gqtoda/hirota.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gqtoda {

namespace {

// |P(sum)| below this fraction of its term magnitudes counts as resonant.
constexpr double kResonanceTol = 1e-13;

double checked_quotient(double num, double den, double den_scale, const char* what) {
  if (std::abs(den) <= kResonanceTol * (1.0 + den_scale)) {
    throw ResonanceError(std::string("resonant denominator in ") + what);
  }
  return num / den;
}

double p_scale(const PhaseVector& p, const ShiftParams& params) {
  const double s = 2.0 * std::sinh(p.alpha * params.epsilon() / 2.0);
  return p.beta * p.beta + s * s;
}

Function phase(double alpha, double beta, double eta) {
  return -alpha * reciprocal(var_x()) + beta * var_t() + eta;
}

}  // namespace

SolitonMode make_mode(double alpha, const ShiftParams& p, int beta_sign, double eta) {
  return {alpha, dispersion_beta(alpha, p, beta_sign), eta};
}

double dispersion_defect(const SolitonMode& m, const ShiftParams& p) {
  return std::abs(hirota_P(PhaseVector::of(m), p)) / (1.0 + m.beta * m.beta);
}

SolitonSpec::SolitonSpec(ShiftParams params, std::vector<SolitonMode> modes)
    : params_(params), modes_(std::move(modes)) {}

void SolitonSpec::validate() const {
  if (modes_.empty() || modes_.size() > 3) {
    throw ConfigError("a soliton spec needs 1 to 3 modes, got " + std::to_string(modes_.size()));
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    if (m.alpha == 0.0) throw ConfigError("mode " + std::to_string(i + 1) + ": alpha = 0 is not a soliton");
    if (dispersion_defect(m, params_) > 1e-12) {
      throw ConfigError("mode " + std::to_string(i + 1) + ": beta violates the dispersion relation");
    }
  }
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    for (std::size_t j = i + 1; j < modes_.size(); ++j) pairwise_A(modes_[i], modes_[j], params_);
  }
  if (modes_.size() == 3) triple_A_direct(*this);
}

double pairwise_A(const SolitonMode& i, const SolitonMode& j, const ShiftParams& p) {
  const PhaseVector pi = PhaseVector::of(i);
  const PhaseVector pj = PhaseVector::of(j);
  const PhaseVector sum = pi + pj;
  return -checked_quotient(hirota_P(pi - pj, p), hirota_P(sum, p), p_scale(sum, p), "A(i,j)");
}

double triple_A_direct(const SolitonSpec& spec) {
  if (spec.size() != 3) throw ConfigError("triple coefficient needs exactly three modes");
  const auto& m = spec.modes();
  const auto& params = spec.params();
  const PhaseVector p1 = PhaseVector::of(m[0]);
  const PhaseVector p2 = PhaseVector::of(m[1]);
  const PhaseVector p3 = PhaseVector::of(m[2]);
  const double a12 = pairwise_A(m[0], m[1], params);
  const double a13 = pairwise_A(m[0], m[2], params);
  const double a23 = pairwise_A(m[1], m[2], params);
  const double num = a12 * hirota_P(p3 - p1 - p2, params) + a13 * hirota_P(p2 - p1 - p3, params) +
                     a23 * hirota_P(p1 - p2 - p3, params);
  const PhaseVector sum = p1 + p2 + p3;
  return -checked_quotient(num, hirota_P(sum, params), p_scale(sum, params), "A(1,2,3)");
}

double triple_A_product(const SolitonSpec& spec) {
  if (spec.size() != 3) throw ConfigError("triple coefficient needs exactly three modes");
  const auto& m = spec.modes();
  const auto& params = spec.params();
  return pairwise_A(m[0], m[1], params) * pairwise_A(m[0], m[2], params) * pairwise_A(m[1], m[2], params);
}

Function tau_function(const SolitonSpec& spec) {
  spec.validate();
  return tau_function_unchecked(spec.params(), spec.modes());
}

Function tau_function_unchecked(const ShiftParams& params, std::span<const SolitonMode> modes) {
  const std::size_t n = modes.size();
  if (n == 0 || n > 3) throw ConfigError("tau function needs 1 to 3 modes");
  // f = sum over subsets S of (prod_{i<j in S} A(i,j)) exp(sum_{i in S} theta_i)
  Function f = 1.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double alpha = 0.0, beta = 0.0, eta = 0.0, coeff = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      alpha += modes[i].alpha;
      beta += modes[i].beta;
      eta += modes[i].eta;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (mask & (1u << j)) coeff *= pairwise_A(modes[i], modes[j], params);
      }
    }
    f = f + coeff * exp(phase(alpha, beta, eta));
  }
  return f;
}

Function field_V(const Function& f) { return time_derivative(time_derivative(log(f))); }

Function lattice_time(const Function& f, const ShiftParams& p) { return time_scale(f, 1.0 / p.epsilon()); }

Residual bilinear_residual(const Function& f, double x, double t, const ShiftParams& p) {
  const Jet j = f.jet(x, t);
  const double f0 = j[0];
  const double ft = j[1];
  const double ftt = 2.0 * j[2];
  const double fp = f(mobius_shift(x, 1, p), t);
  const double fm = f(mobius_shift(x, -1, p), t);
  const double terms[] = {2.0 * ftt * f0, 2.0 * ft * ft, 2.0 * fp * fm, 2.0 * f0 * f0};
  Residual r;
  r.value = terms[0] - terms[1] - terms[2] + terms[3];
  for (double term : terms) r.scale = std::max(r.scale, std::abs(term));
  return r;
}

Residual gqte_residual(const Function& V, double x, double t, const ShiftParams& p) {
  const Jet vj = V.jet(x, t);
  Jet one_plus = vj;
  one_plus[0] += 1.0;
  if (!(one_plus[0] > 0.0)) throw DomainError("gqte residual: 1 + V <= 0 at x = " + std::to_string(x));
  const double eps = p.epsilon();
  const double lhs = eps * eps * 2.0 * taylor_log(one_plus)[2];
  const double v0 = vj[0];
  const double vp = V(mobius_shift(x, 1, p), t);
  const double vm = V(mobius_shift(x, -1, p), t);
  const double terms[] = {lhs, vp, vm, 2.0 * v0};
  Residual r;
  r.value = lhs - (vp + vm - 2.0 * v0);
  for (double term : terms) r.scale = std::max(r.scale, std::abs(term));
  return r;
}

}  // namespace gqtoda
