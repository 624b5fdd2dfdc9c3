#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace gqtoda {

/// Truncated Taylor expansion in t: c[k] = (d/dt)^k f / k!, k < Size.
template <typename Scalar, int Size>
using TaylorSeries = Eigen::Array<Scalar, Size, 1>;

inline constexpr int kTaylorOrder = 4;
using Jet = TaylorSeries<double, kTaylorOrder + 1>;

template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_constant(Scalar c) {
  TaylorSeries<Scalar, Size> out = TaylorSeries<Scalar, Size>::Zero();
  out[0] = c;
  return out;
}

template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_mul(const TaylorSeries<Scalar, Size>& a,
                                       const TaylorSeries<Scalar, Size>& b) {
  TaylorSeries<Scalar, Size> out;
  for (int k = 0; k < Size; ++k) {
    Scalar s = 0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    out[k] = s;
  }
  return out;
}

template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_reciprocal(const TaylorSeries<Scalar, Size>& a) {
  TaylorSeries<Scalar, Size> out;
  out[0] = Scalar(1) / a[0];
  for (int k = 1; k < Size; ++k) {
    Scalar s = 0;
    for (int i = 1; i <= k; ++i) s += a[i] * out[k - i];
    out[k] = -s * out[0];
  }
  return out;
}

template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_exp(const TaylorSeries<Scalar, Size>& a) {
  using std::exp;
  TaylorSeries<Scalar, Size> out;
  out[0] = exp(a[0]);
  for (int k = 1; k < Size; ++k) {
    Scalar s = 0;
    for (int i = 1; i <= k; ++i) s += Scalar(i) * a[i] * out[k - i];
    out[k] = s / Scalar(k);
  }
  return out;
}

// Requires a[0] > 0; callers check the domain.
template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_log(const TaylorSeries<Scalar, Size>& a) {
  using std::log;
  TaylorSeries<Scalar, Size> out;
  out[0] = log(a[0]);
  for (int k = 1; k < Size; ++k) {
    Scalar s = 0;
    for (int i = 1; i < k; ++i) s += Scalar(i) * out[i] * a[k - i];
    out[k] = (a[k] - s / Scalar(k)) / a[0];
  }
  return out;
}

/// Series of df/dt. The top coefficient is unknown and set to NaN.
template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_derivative(const TaylorSeries<Scalar, Size>& a) {
  TaylorSeries<Scalar, Size> out;
  for (int k = 0; k + 1 < Size; ++k) out[k] = Scalar(k + 1) * a[k + 1];
  out[Size - 1] = std::numeric_limits<Scalar>::quiet_NaN();
  return out;
}

/// Series of f(c t) given the series of f at c t.
template <typename Scalar, int Size>
TaylorSeries<Scalar, Size> taylor_time_scale(TaylorSeries<Scalar, Size> a, Scalar c) {
  Scalar p = 1;
  for (int k = 0; k < Size; ++k) {
    a[k] *= p;
    p *= c;
  }
  return a;
}

}  // namespace gqtoda
