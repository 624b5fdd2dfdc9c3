#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <vector>

#include "gqtoda/errors.hpp"

namespace gqtoda {

/// Lattice deformation parameter of the shift Lambda_eps = exp(eps x^2 d/dx).
class ShiftParams {
 public:
  explicit ShiftParams(double epsilon);

  /// Build from the figure convention e^eps (e.g. 1.25).
  static ShiftParams from_exp(double e_epsilon);

  double epsilon() const { return epsilon_; }

  friend bool operator==(const ShiftParams&, const ShiftParams&) = default;

 private:
  double epsilon_;
};

/// Relative half-width of the excluded band around each Möbius pole.
template <std::floating_point Scalar>
constexpr Scalar pole_guard() {
  return Scalar(10) * std::numeric_limits<Scalar>::epsilon();
}

/// x / (1 - k eps x): the k-th power of the Möbius shift.
/// Satisfies mobius_shift(mobius_shift(x, a), b) == mobius_shift(x, a + b).
template <std::floating_point Scalar>
Scalar mobius_shift(Scalar x, int k, Scalar epsilon) {
  using std::abs;
  if (k == 0) return x;
  const Scalar kex = Scalar(k) * epsilon * x;
  const Scalar denom = Scalar(1) - kex;
  if (abs(denom) <= pole_guard<Scalar>() * abs(kex)) {
    throw PoleError("Möbius shift pole: 1 - k*eps*x = 0 at x = " + std::to_string(double(x)) +
                    ", k = " + std::to_string(k));
  }
  return x / denom;
}

inline double mobius_shift(double x, int k, const ShiftParams& p) {
  return mobius_shift<double>(x, k, p.epsilon());
}

/// y = -1/x; conjugates Lambda_eps^k to the translation y -> y + k eps.
template <std::floating_point Scalar>
Scalar x_to_y(Scalar x) {
  if (x == Scalar(0)) throw DomainError("x_to_y: x = 0 has no image");
  return Scalar(-1) / x;
}

template <std::floating_point Scalar>
Scalar y_to_x(Scalar y) {
  if (y == Scalar(0)) throw DomainError("y_to_x: y = 0 maps to x = infinity");
  return Scalar(-1) / y;
}

/// Working window [x_min, x_max] on which shifts |k| <= max_shift are pole free.
class Domain {
 public:
  Domain(double x_min, double x_max, int max_shift);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int max_shift() const { return max_shift_; }

  bool contains(double x) const { return x >= x_min_ && x <= x_max_; }
  bool contains_zero() const { return x_min_ <= 0.0 && x_max_ >= 0.0; }

  /// True iff no pole 1/(k eps), 0 < |k| <= max_shift, lies in the closed window
  /// (guard band included).
  bool admissible(const ShiftParams& p) const;

  /// Throws PoleError naming the offending k when not admissible.
  void require_admissible(const ShiftParams& p) const;

  /// count evenly spaced points, endpoints included (count >= 2).
  std::vector<double> linspace(int count) const;

 private:
  double x_min_;
  double x_max_;
  int max_shift_;
};

}  // namespace gqtoda
