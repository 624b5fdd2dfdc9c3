"""High-precision oracle for the constants frozen into tests/frozen_values.hpp.

Evaluates the closed forms directly with mpmath at 50 digits; shares no code
with the C++ implementation.
"""
import mpmath as mp

mp.mp.dps = 50
eps = mp.log(mp.mpf("1.25"))


def beta(alpha, sign):
    return sign * mp.sqrt(mp.e ** (alpha * eps) + mp.e ** (-alpha * eps) - 2)


def P(b, a):
    return b ** 2 - mp.e ** (a * eps) - mp.e ** (-a * eps) + 2


def A(m, n):
    (a1, b1), (a2, b2) = m, n
    return -P(b1 - b2, a1 - a2) / P(b1 + b2, a1 + a2)


m1 = (mp.mpf(-5), beta(mp.mpf(-5), -1))
m2 = (mp.mpf(6), beta(mp.mpf(6), -1))
m3 = (mp.mpf("-7.9141"), beta(mp.mpf("-7.9141"), +1))

out = {
    "kEpsilon": eps,
    "kMobius_x1_k2": 1 / (1 - 2 * eps),
    "kShiftedExp_alpha_m5": mp.e ** (5 * (1 - eps)),
    "kBeta1": m1[1],
    "kBeta2": m2[1],
    "kBeta3": m3[1],
    "kP_p1_minus_p2": P(m1[1] - m2[1], m1[0] - m2[0]),
    "kA12": A(m1, m2),
    "kA13": A(m1, m3),
    "kA23": A(m2, m3),
    "kPeakV1": m1[1] ** 2 / 4,
}
num = (A(m1, m2) * P(m3[1] - m1[1] - m2[1], m3[0] - m1[0] - m2[0])
       + A(m1, m3) * P(m2[1] - m1[1] - m3[1], m2[0] - m1[0] - m3[0])
       + A(m2, m3) * P(m1[1] - m2[1] - m3[1], m1[0] - m2[0] - m3[0]))
out["kA123Direct"] = -num / P(m1[1] + m2[1] + m3[1], m1[0] + m2[0] + m3[0])
out["kA123Product"] = A(m1, m2) * A(m1, m3) * A(m2, m3)

for k, v in out.items():
    print(f"inline constexpr double {k} = {mp.nstr(v, 20)};")
