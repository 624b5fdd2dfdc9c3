#pragma once

// Brute-force oracle for the shift-operator algebra.
//
// Along the orbit x_k = Lambda^k x0 (computed as y_k = -1/x0 + k eps, never
// through mobius_shift) a difference operator sum_k c_k Lambda^k acts as the
// banded matrix M(i, i + k) = c_k(x_i). Powers and commutators of L become
// dense long double matrix products; the centre row of a (2R+1)-square
// window is exact once R exceeds the reach of every path involved.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gqtoda/function.hpp"

namespace gqtoda::testing {

using LD = long double;
using MatrixLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
using FieldLD = std::function<LD(LD)>;

/// sum_i a_i exp(-((y - c_i) / w_i)^2) with y = -1/x, in two independent forms.
struct GaussianSum {
  std::vector<double> a, c, w;

  static GaussianSum random(std::mt19937_64& gen, double amp, double y_lo, double y_hi) {
    std::uniform_real_distribution<double> ua(-amp, amp), uc(y_lo, y_hi), uw(1.5, 3.5);
    GaussianSum g;
    for (int i = 0; i < 3; ++i) {
      g.a.push_back(ua(gen));
      g.c.push_back(uc(gen));
      g.w.push_back(uw(gen));
    }
    return g;
  }

  LD operator()(LD x) const {
    const LD y = -1.0L / x;
    LD s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const LD z = (y - c[i]) / w[i];
      s += a[i] * std::exp(-z * z);
    }
    return s;
  }

  Function function() const {
    const Function y = -reciprocal(var_x());
    Function out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Function z = (1.0 / w[i]) * (y - c[i]);
      out = out + a[i] * exp(-(z * z));
    }
    return out;
  }
};

class LaxMatrixOracle {
 public:
  /// Window of radius `radius` around x0 for L = Lambda + u + V Lambda^{-1}.
  LaxMatrixOracle(const FieldLD& u, const FieldLD& V, LD x0, LD eps, int radius) : radius_(radius) {
    const int n = 2 * radius + 1;
    L_ = MatrixLD::Zero(n, n);
    const LD y0 = -1.0L / x0;
    for (int i = 0; i < n; ++i) {
      const LD xi = -1.0L / (y0 + (i - radius) * eps);
      L_(i, i) = u(xi);
      if (i + 1 < n) L_(i, i + 1) = 1.0L;
      if (i > 0) L_(i, i - 1) = V(xi);
    }
  }

  const MatrixLD& lax() const { return L_; }

  MatrixLD power(int n) const {
    MatrixLD out = MatrixLD::Identity(L_.rows(), L_.cols());
    for (int i = 0; i < n; ++i) out = out * L_;
    return out;
  }

  /// Coefficient of Lambda^k in the operator represented by m, at x0.
  LD coefficient(const MatrixLD& m, int k) const { return m(radius_, radius_ + k); }

  /// Keep diagonals k >= 0 (plus part) or k < 0 (minus part).
  static MatrixLD plus_part(const MatrixLD& m) { return m.template triangularView<Eigen::Upper>(); }
  static MatrixLD minus_part(const MatrixLD& m) { return m - plus_part(m); }

  LD residue_of_commutator(const MatrixLD& a, const MatrixLD& b) const {
    return coefficient(MatrixLD(a * b - b * a), 0);
  }

 private:
  int radius_;
  MatrixLD L_;
};

inline LD factorial_ld(int n) {
  LD f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace gqtoda::testing
