#pragma once

#include <map>
#include <optional>
#include <utility>

#include "gqtoda/function.hpp"
#include "gqtoda/qshift.hpp"

namespace gqtoda {

/// Truncation limits for operator arithmetic.
struct AlgebraLimits {
  int max_band = 12;   ///< largest |k| allowed in a composition result
  int max_power = 6;   ///< largest j in L^j / j!
};

/// Finite Laurent band sum_k c_k(x) Lambda_eps^k.
///
/// Coefficients that are structurally the zero constant are dropped on
/// construction, so band() reports the trimmed support.
class DifferenceOperator {
 public:
  explicit DifferenceOperator(ShiftParams params, std::map<int, Function> coeffs = {});

  /// c * Lambda^k.
  static DifferenceOperator monomial(ShiftParams params, int k, Function c = 1.0);

  const ShiftParams& params() const { return params_; }
  const std::map<int, Function>& terms() const { return coeffs_; }

  /// Coefficient at Lambda^k (zero function outside the band).
  Function coefficient(int k) const;

  /// [k_min, k_max], or nullopt for the zero operator.
  std::optional<std::pair<int, int>> band() const;
  bool is_zero() const { return coeffs_.empty(); }

  /// (A g)(x) = sum_k c_k(x) g(x / (1 - k eps x)).
  Function apply(const Function& g) const;

 private:
  ShiftParams params_;
  std::map<int, Function> coeffs_;
};

DifferenceOperator op_add(const DifferenceOperator& a, const DifferenceOperator& b);
DifferenceOperator op_scale(double c, const DifferenceOperator& a);

/// (X Lambda^i) o (Y Lambda^j) = X(x) Y(x / (1 - i eps x)) Lambda^{i+j}, extended bilinearly.
/// Throws BandOverflowError when the product band leaves [-max_band, max_band].
DifferenceOperator op_compose(const DifferenceOperator& a, const DifferenceOperator& b, const AlgebraLimits& limits = {});

/// A o B - B o A.
DifferenceOperator commutator(const DifferenceOperator& a, const DifferenceOperator& b, const AlgebraLimits& limits = {});

/// Terms with k >= 0.
DifferenceOperator project_plus(const DifferenceOperator& a);
/// Terms with k < 0.
DifferenceOperator project_minus(const DifferenceOperator& a);

/// Coefficient of Lambda^0.
Function residue(const DifferenceOperator& a);

/// Res(A o B) without forming the other coefficients.
Function residue_of_composition(const DifferenceOperator& a, const DifferenceOperator& b);

inline DifferenceOperator operator+(const DifferenceOperator& a, const DifferenceOperator& b) { return op_add(a, b); }
inline DifferenceOperator operator-(const DifferenceOperator& a, const DifferenceOperator& b) {
  return op_add(a, op_scale(-1.0, b));
}
inline DifferenceOperator operator*(double c, const DifferenceOperator& a) { return op_scale(c, a); }

}  // namespace gqtoda
