#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "gqtoda/function.hpp"
#include "gqtoda/hirota.hpp"

namespace gqtoda {

/// Seeded generator with platform-independent uniform draws
/// (std::uniform_real_distribution is implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int sign() { return (engine_() >> 63) ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
};

/// Sum of three Gaussians in y = -1/x: sum_i a_i exp(-((y - c_i) / w_i)^2),
/// amplitudes in [-amp, amp], centres in [y_lo, y_hi], widths in [1.5, 3.5].
Function random_smooth_field(Rng& rng, double amp, double y_lo, double y_hi);

/// Sampling window (in y and t) around which a random spec's phases are O(1).
struct SolitonWindow {
  double y_min = 0.0;
  double y_max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Random dispersion-satisfying spec of n modes with eps drawn in [0.1, 0.6]
/// (unless given) and phases centred on the window middle. When
/// require_positive is set, specs with some A(i,j) <= 0 (non-positive tau)
/// or |A| > 1e6 are redrawn.
SolitonSpec random_soliton_spec(Rng& rng, int n, const SolitonWindow& window, bool require_positive,
                                std::optional<ShiftParams> params = std::nullopt);

/// Default window for random specs: y in [-6, -2], t in [-2, 2].
SolitonWindow default_random_window();

}  // namespace gqtoda
