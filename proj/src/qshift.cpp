#include "gqtoda/qshift.hpp"

#include <cmath>

namespace gqtoda {

ShiftParams::ShiftParams(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive and finite, got " + std::to_string(epsilon));
  }
}

ShiftParams ShiftParams::from_exp(double e_epsilon) {
  if (!(e_epsilon > 1.0) || !std::isfinite(e_epsilon)) {
    throw ConfigError("e^eps must exceed 1 so that eps > 0, got " + std::to_string(e_epsilon));
  }
  return ShiftParams(std::log(e_epsilon));
}

Domain::Domain(double x_min, double x_max, int max_shift) : x_min_(x_min), x_max_(x_max), max_shift_(max_shift) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ConfigError("domain needs finite x_min < x_max");
  }
  if (max_shift < 0) throw ConfigError("domain max_shift must be non-negative");
}

namespace {

// Smallest |k| whose pole 1/(k eps) lies in the guarded window, or 0.
int first_pole(const Domain& d, const ShiftParams& p) {
  for (int k = 1; k <= d.max_shift(); ++k) {
    for (int sign : {1, -1}) {
      const double pole = 1.0 / (sign * k * p.epsilon());
      const double guard = pole_guard<double>() * std::abs(pole);
      if (pole >= d.x_min() - guard && pole <= d.x_max() + guard) return sign * k;
    }
  }
  return 0;
}

}  // namespace

bool Domain::admissible(const ShiftParams& p) const { return first_pole(*this, p) == 0; }

void Domain::require_admissible(const ShiftParams& p) const {
  if (int k = first_pole(*this, p); k != 0) {
    throw PoleError("domain [" + std::to_string(x_min_) + ", " + std::to_string(x_max_) + "] contains the pole of shift k = " +
                    std::to_string(k) + " at x = " + std::to_string(1.0 / (k * p.epsilon())));
  }
}

std::vector<double> Domain::linspace(int count) const {
  if (count < 2) throw ConfigError("linspace needs at least two points");
  std::vector<double> out(count);
  const double h = (x_max_ - x_min_) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = x_min_ + i * h;
  out.back() = x_max_;
  return out;
}

}  // namespace gqtoda
