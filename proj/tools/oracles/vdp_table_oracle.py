"""Independent oracle for the Van der Pol amplitude table.

Uses SciPy's DOP853 (a different Runge-Kutta pair than the library) at
rtol = atol = 1e-12 to locate the fixed point of the half-return map, and
brentq for the amplitude bound. Prints one JSON object per mu.
"""
import json
import math

from scipy.integrate import solve_ivp
from scipy.optimize import brentq

MUS = [0.1, 0.2, 0.3, 0.4, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4.5, 5, 10]


def half_return(mu, y0):
    def rhs(_t, s):
        x, y = s
        return [y - mu * (x**3 / 3 - x), -x]

    def back_on_axis(_t, s):
        return s[0]

    back_on_axis.terminal = True
    back_on_axis.direction = -1
    sol = solve_ivp(rhs, [0, 1e3], [1e-300, y0], method="DOP853", rtol=1e-12,
                    atol=1e-12, events=back_on_axis)
    return -sol.y_events[0][0][1]


def alpha(mu, y0):
    def r(a):
        F = mu * (a**3 / 3 - a)
        return a * a / 2 + F * F / 2 - y0 * y0 / 2

    return brentq(r, math.sqrt(3), 4, xtol=1e-15, rtol=1e-15)


for mu in MUS:
    lo, hi = 1.5, 9.0
    y = brentq(lambda v: half_return(mu, v) - v, lo, hi, xtol=1e-13)
    print(json.dumps({"mu": mu, "y_plus0": y, "alpha_bar": alpha(mu, y)}))
