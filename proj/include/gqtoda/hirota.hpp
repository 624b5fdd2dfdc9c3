#pragma once

#include <cmath>
#include <concepts>
#include <span>
#include <vector>

#include "gqtoda/function.hpp"
#include "gqtoda/qshift.hpp"

namespace gqtoda {

/// One exponential mode exp(-alpha/x + beta t + eta).
struct SolitonMode {
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
};

/// (beta, alpha, eta) as a vector, so that p_i +- p_j is componentwise.
struct PhaseVector {
  double beta = 0.0;
  double alpha = 0.0;
  double eta = 0.0;

  static PhaseVector of(const SolitonMode& m) { return {m.beta, m.alpha, m.eta}; }

  friend PhaseVector operator+(PhaseVector a, const PhaseVector& b) {
    return {a.beta + b.beta, a.alpha + b.alpha, a.eta + b.eta};
  }
  friend PhaseVector operator-(PhaseVector a, const PhaseVector& b) {
    return {a.beta - b.beta, a.alpha - b.alpha, a.eta - b.eta};
  }
  friend PhaseVector operator-(const PhaseVector& a) { return {-a.beta, -a.alpha, -a.eta}; }
};

/// beta = sign * sqrt(e^{alpha eps} + e^{-alpha eps} - 2), written as
/// sign * 2 |sinh(alpha eps / 2)| to avoid cancellation near alpha = 0.
template <std::floating_point Scalar>
Scalar dispersion_beta(Scalar alpha, Scalar epsilon, int sign) {
  using std::abs;
  using std::sinh;
  const Scalar mag = Scalar(2) * abs(sinh(alpha * epsilon / Scalar(2)));
  return sign < 0 ? -mag : mag;
}

inline double dispersion_beta(double alpha, const ShiftParams& p, int sign) {
  return dispersion_beta<double>(alpha, p.epsilon(), sign);
}

/// P(p) = beta^2 - e^{alpha eps} - e^{-alpha eps} + 2, the symbol of the bilinear
/// operator on exponentials. Evaluated as beta^2 - (2 sinh(alpha eps / 2))^2.
template <std::floating_point Scalar>
Scalar hirota_P(Scalar beta, Scalar alpha, Scalar epsilon) {
  using std::sinh;
  const Scalar s = Scalar(2) * sinh(alpha * epsilon / Scalar(2));
  return (beta - s) * (beta + s);
}

inline double hirota_P(const PhaseVector& p, const ShiftParams& params) {
  return hirota_P<double>(p.beta, p.alpha, params.epsilon());
}

/// Mode with beta taken from the dispersion relation on the given branch.
SolitonMode make_mode(double alpha, const ShiftParams& p, int beta_sign, double eta = 0.0);

/// Relative defect |P(p)| / (1 + beta^2) of a mode.
double dispersion_defect(const SolitonMode& m, const ShiftParams& p);

/// eps plus one to three modes.
class SolitonSpec {
 public:
  SolitonSpec(ShiftParams params, std::vector<SolitonMode> modes);

  const ShiftParams& params() const { return params_; }
  const std::vector<SolitonMode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

  /// Throws ConfigError on a dispersion violation or alpha = 0,
  /// ResonanceError on a vanishing P(p_i + p_j).
  void validate() const;

 private:
  ShiftParams params_;
  std::vector<SolitonMode> modes_;
};

/// A(i, j) = -P(p_i - p_j) / P(p_i + p_j).
double pairwise_A(const SolitonMode& i, const SolitonMode& j, const ShiftParams& p);

/// Triple coefficient from the order-three balance of the perturbation expansion:
/// -[A12 P(p3-p1-p2) + A13 P(p2-p1-p3) + A23 P(p1-p2-p3)] / P(p1+p2+p3).
double triple_A_direct(const SolitonSpec& spec);

/// A12 * A13 * A23.
double triple_A_product(const SolitonSpec& spec);

/// Soliton tau function f(x, t) for N = 1, 2, 3 modes. Validates the spec.
Function tau_function(const SolitonSpec& spec);

/// Same construction without the dispersion check (for probing non-solutions).
Function tau_function_unchecked(const ShiftParams& params, std::span<const SolitonMode> modes);

/// V = d^2/dt^2 log f. Evaluation raises DomainError where f <= 0.
Function field_V(const Function& f);

/// g(x, s) = f(x, s / eps). If V solves d^2/dt^2 log(1 + V) = Delta^2 V (the
/// field of a soliton tau function), then lattice_time(V) solves the lattice
/// equation eps^2 d^2/ds^2 log(1 + V) = Delta^2 V in the time s = eps t.
Function lattice_time(const Function& f, const ShiftParams& p);

/// A residual together with the magnitude of its largest term.
struct Residual {
  double value = 0.0;
  double scale = 0.0;

  double relative() const { return value / (1.0 + scale); }
};

/// R = 2(f_tt f - f_t^2) - 2 f(x/(1-eps x)) f(x/(1+eps x)) + 2 f^2.
Residual bilinear_residual(const Function& f, double x, double t, const ShiftParams& p);

/// eps^2 d^2/dt^2 log(1 + V) - [V(x/(1-eps x)) + V(x/(1+eps x)) - 2 V].
Residual gqte_residual(const Function& V, double x, double t, const ShiftParams& p);

}  // namespace gqtoda
