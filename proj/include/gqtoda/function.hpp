#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "gqtoda/qshift.hpp"
#include "gqtoda/taylor.hpp"

namespace gqtoda {

namespace detail {
class Node;
}

/// Exact closed-form scalar field f(x, t).
///
/// Values are immutable expression DAGs built from constants, the coordinates
/// x and t, sums, products, reciprocals, exp, log, Möbius shifts in x,
/// rescaling of t and t-differentiation. Evaluation is pure. Time derivatives
/// are propagated analytically as truncated Taylor series (order 4), so
/// d/dt applied twice still leaves two exact derivatives.
///
/// Construction performs light canonicalisation: constants fold, nested sums
/// and products flatten, structurally equal terms of a sum merge, and shifts
/// compose by the group law. This makes A - A collapse to the zero constant.
class Function {
 public:
  /// The zero constant.
  Function();
  /// Constant field. Implicit so that scalars mix into expressions.
  Function(double c);  // NOLINT(google-explicit-constructor)

  double operator()(double x, double t = 0.0) const;

  /// Taylor coefficients in t at (x, t).
  Jet jet(double x, double t = 0.0) const;

  double dt(double x, double t = 0.0) const { return jet(x, t)[1]; }
  double dtt(double x, double t = 0.0) const { return 2.0 * jet(x, t)[2]; }

  std::optional<double> constant_value() const;
  bool is_zero() const;
  bool depends_on_x() const;
  bool depends_on_t() const;

  std::size_t structural_hash() const;
  std::string to_string() const;

  friend bool structurally_equal(const Function& a, const Function& b);

  const std::shared_ptr<const detail::Node>& node() const { return node_; }
  explicit Function(std::shared_ptr<const detail::Node> node);

 private:
  std::shared_ptr<const detail::Node> node_;
};

Function var_x();
Function var_t();

/// Leaf-like wrapper that prints as `name(x)` and evaluates `body`.
Function named(std::string name, Function body);

Function operator+(const Function& a, const Function& b);
Function operator-(const Function& a, const Function& b);
Function operator*(const Function& a, const Function& b);
Function operator/(const Function& a, const Function& b);
Function operator-(const Function& a);

Function reciprocal(const Function& f);
Function exp(const Function& f);
Function log(const Function& f);

/// g(x, t) = f(x, t) with x replaced by x / (1 - k eps x). Exact substitution.
Function shift_apply(const Function& f, int k, const ShiftParams& p);

/// (Lambda + Lambda^{-1} - 2) f.
Function central_difference(const Function& f, const ShiftParams& p);

/// d f / d t.
Function time_derivative(const Function& f);

/// g(x, t) = f(x, c t).
Function time_scale(const Function& f, double c);

}  // namespace gqtoda
