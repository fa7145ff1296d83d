"""Independent oracle for the example models (quintic, two_cycle, three_cycle).

SciPy DOP853 at rtol = atol = 1e-12 locates the fixed points of the
half-return map; brentq gives zeros of F and the amplitude bounds. Models
are re-implemented here from their closed forms, independently of the
library code.
"""
import json
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq


def quintic(k, mu=0.1):
    def F(x):
        s = math.copysign(1.0, x)
        x = abs(x)
        return s * mu * (-4 * x + 25 * x**3 - 10 * k * x**5)
    return F


def two_cycle():
    j = 0.15 + 1 / math.sqrt(101)

    def Fp(x):
        if x < 0.15:
            return -0.01 * math.sin(10 * math.pi * x)
        if x < j:
            return 0.01 * math.sqrt(max(0.0, 1 - ((x - 0.15) / 0.1) ** 2))
        return 0.02099503719021 - 0.2 * math.sqrt(x - 0.2395037190209989)
    return lambda x: math.copysign(1.0, x) * Fp(abs(x))


def three_cycle():
    a1, a2, a3 = 0.097979588, 0.197647912, 0.397273968

    def ell(x, off, sy, cx, sx, sign):
        return off + sign * sy * math.sqrt(max(0.0, 1 - ((x - cx) / sx) ** 2))

    def Fp(x):
        if x < a1:
            return ell(x, 0.005, 0.025, 0.048989794, 0.05, -1)
        if x < a2:
            return ell(x, -0.0008137888130718, 0.01, 0.14781375, 0.05, 1)
        if x < a3:
            return ell(x, 0.0009168416064002765, 0.015, 0.29746094, 0.1, -1)
        return -0.0003265987749816556 + 0.04 * math.sqrt(x - 0.3972073012751128)
    return lambda x: math.copysign(1.0, x) * Fp(abs(x))


def D(F, y0):
    def rhs(_t, s):
        return [s[1] - F(s[0]), -s[0]]

    def back(_t, s):
        return s[0]

    def escape(_t, s):
        return 50.0 - abs(s[0]) - abs(s[1])

    back.terminal = True
    back.direction = -1
    escape.terminal = True
    sol = solve_ivp(rhs, [0, 1e3], [1e-300, y0], method="DOP853", rtol=1e-12, atol=1e-12,
                    events=[back, escape])
    if len(sol.t_events[0]) == 0:
        return math.inf
    return -sol.y_events[0][0][1] - y0


def cycles(F, lo, hi, n):
    ys = np.geomspace(lo, hi, n)
    ds = [D(F, y) for y in ys]
    out = []
    for i in range(n - 1):
        if ds[i] * ds[i + 1] < 0:
            out.append(brentq(lambda y: D(F, y), ys[i], ys[i + 1], xtol=1e-13))
    return out


def alpha_bar(F, y0, lo, hi):
    r = lambda a: a * a / 2 + F(a) ** 2 / 2 - y0 * y0 / 2
    xs = np.linspace(lo, hi, 4001)
    for i in range(len(xs) - 1):
        if r(xs[i]) * r(xs[i + 1]) < 0:
            return brentq(r, xs[i], xs[i + 1], xtol=1e-15)
    return None


def zeros(F, lo, hi, n=20000):
    xs = np.linspace(lo, hi, n)
    return [brentq(F, xs[i], xs[i + 1], xtol=1e-15) for i in range(n - 1)
            if F(xs[i]) * F(xs[i + 1]) < 0]


cases = {
    "quintic_k3": (quintic(3.0), 0.3, 0.95),
    "quintic_k3.5": (quintic(3.5), 0.55, 0.75),
    "two_cycle": (two_cycle(), 0.05, 0.5),
    "three_cycle": (three_cycle(), 0.05, 0.8),
}
for name, (F, lo, hi) in cases.items():
    a = zeros(F, 1e-6, 1.2)
    ys = cycles(F, lo, hi, 400)
    bounds = []
    for y in ys:
        # bracket: the zero interval holding the cycle's alpha (first root past a_i)
        for i in range(len(a)):
            top = a[i + 1] if i + 1 < len(a) else 10.0
            ab = alpha_bar(F, y, a[i], top)
            if ab is not None and y > 0:
                bounds.append(ab)
                break
    print(json.dumps({"case": name, "zeros": a, "y_plus0": ys, "alpha_bar_first_interval_root": bounds}))
