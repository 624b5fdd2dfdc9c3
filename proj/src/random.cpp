#include "gqtoda/random.hpp"

#include <cmath>

namespace gqtoda {

Function random_smooth_field(Rng& rng, double amp, double y_lo, double y_hi) {
  const Function y = -reciprocal(var_x());
  Function out = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = rng.uniform(-amp, amp);
    const double c = rng.uniform(y_lo, y_hi);
    const double w = rng.uniform(1.5, 3.5);
    const Function z = (1.0 / w) * (y - c);
    out = out + a * exp(-(z * z));
  }
  return out;
}

SolitonWindow default_random_window() { return {-6.0, -2.0, -2.0, 2.0}; }

SolitonSpec random_soliton_spec(Rng& rng, int n, const SolitonWindow& window, bool require_positive,
                                std::optional<ShiftParams> params) {
  const double y_mid = 0.5 * (window.y_min + window.y_max);
  const double t_mid = 0.5 * (window.t_min + window.t_max);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const ShiftParams p = params ? *params : ShiftParams(rng.uniform(0.1, 0.6));
    std::vector<SolitonMode> modes;
    for (int i = 0; i < n; ++i) {
      const double alpha = rng.sign() * rng.uniform(0.5, 6.0);
      SolitonMode m = make_mode(alpha, p, rng.sign());
      // theta_i = alpha y + beta t + eta vanishes near the window centre.
      m.eta = -alpha * y_mid - m.beta * t_mid + rng.uniform(-1.0, 1.0);
      modes.push_back(m);
    }
    SolitonSpec spec(p, modes);
    try {
      spec.validate();
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        for (int j = i + 1; j < n && ok; ++j) {
          const double a = pairwise_A(modes[i], modes[j], p);
          if (std::abs(a) > 1e6 || (require_positive && !(a > 0.0))) ok = false;
        }
      }
      if (ok) return spec;
    } catch (const ResonanceError&) {
    }
  }
  throw ConsistencyError("could not draw a random soliton spec");
}

}  // namespace gqtoda
