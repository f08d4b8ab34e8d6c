"""High-precision reference values frozen into the C++ unit tests.

Run with mpmath installed; the output is pasted into tests/reference_values.hpp.
Every value is computed by a route independent of the library code: the
Stirling series for log-gamma, direct quadrature of the gamma density for the
incomplete gamma (cross-checked against mpmath.gammainc), the erf Maclaurin
series for the normal CDF and nested quadrature for the shock convolution.
"""
import sys

import mpmath as mp

mp.mp.dps = 40


def stirling_log_gamma(x, terms=30):
    x = mp.mpf(x)
    shift = mp.mpf(0)
    while x < 60:
        shift += mp.log(x)
        x += 1
    s = (x - mp.mpf(1) / 2) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
    for k in range(1, terms):
        s += mp.bernoulli(2 * k) / (2 * k * (2 * k - 1) * x ** (2 * k - 1))
    return s - shift


def lower_gamma_quad(shape, x):
    """P(shape, x) by quadrature of the density, split around the mode."""
    s, x = mp.mpf(shape), mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    lg = mp.loggamma(s)
    if x < s:
        # u = x e^{-y} maps the lower tail to a smooth, exponentially decaying integrand
        f = lambda y: mp.exp(-s * y - x * mp.exp(-y))
        return mp.exp(s * mp.log(x) - lg) * mp.quad(f, [0, 1, 10, mp.inf])
    dens = lambda u: mp.exp((s - 1) * mp.log(u) - u - lg)
    total = mp.mpf(0)
    lo = mp.mpf(0)
    if s < 1:
        # u = v^(1/s) on [0, min(x, 1)] removes the endpoint singularity
        cut = min(x, mp.mpf(1))
        total += mp.quad(lambda v: mp.exp(-(v ** (1 / s)) - lg) / s, [0, cut ** s])
        lo = cut
    if x > lo:
        sd = mp.sqrt(s)
        pts = [lo] + sorted({p for p in (s - 1 - 8 * sd, s - 1 - 2 * sd, s - 1, s - 1 + 2 * sd, s - 1 + 8 * sd)
                            if lo < p < x}) + [x]
        total += mp.quad(dens, pts)
    return total


def lower_gamma_series(a, z):
    a, z = mp.mpf(a), mp.mpf(z)
    if z == 0:
        return mp.mpf(0)
    if z > a + 30:
        return mp.gammainc(a, 0, z, regularized=True)
    term, acc, n = mp.mpf(1), mp.mpf(1), 0
    while True:
        n += 1
        term *= z / (a + n)
        acc += term
        if term < acc * mp.mpf(10) ** (-45):
            break
    return mp.exp(a * mp.log(z) - z - mp.loggamma(a + 1)) * acc


def normal_cdf_series(z):
    z = mp.mpf(z)
    y = z / mp.sqrt(2)
    s, term, n = mp.mpf(0), y, 0
    while True:
        t = term / (2 * n + 1)
        s += t
        if abs(t) < mp.mpf(10) ** (-50):
            break
        n += 1
        term *= -y * y / n
    return (1 + 2 / mp.sqrt(mp.pi) * s) / 2


def conv_cdf(alpha, beta, t, ya, yb, m, x):
    """P(X(t) + sum of m damages <= x) by quadrature over the damage sum."""
    a = mp.mpf(alpha) * t
    s = mp.mpf(ya) * m
    yb = mp.mpf(yb)
    x = mp.mpf(x)
    G = lambda w: lower_gamma_series(a, mp.mpf(beta) * w) if w > 0 else mp.mpf(0)
    lgs = mp.loggamma(s)
    # u = v^(1/s) removes the damage-density singularity at 0
    g = lambda v: G(x - v ** (1 / s)) * mp.exp(s * mp.log(yb) - yb * v ** (1 / s) - lgs) / s
    return mp.quad(g, mp.linspace(0, x ** s, 5))


def out(name, v):
    print(f"inline constexpr double {name} = {mp.nstr(v, 20)};")


if __name__ == "__main__":
    out("kLogGamma31_295", stirling_log_gamma("31.295"))
    out("kLogGammaHalf", stirling_log_gamma("0.5"))
    out("kLogGamma1e6", stirling_log_gamma("1e6"))
    out("kLogGamma1em6", stirling_log_gamma("1e-6"))
    out("kLogGamma3_7", stirling_log_gamma("3.7"))
    out("kLowerGamma2_5_0_75", lower_gamma_quad("2.5", "0.75"))
    out("kLowerGamma0_7_1_5", lower_gamma_quad("0.7", "1.5"))
    a = mp.mpf("0.7") * mp.mpf("44.7129")
    v = lower_gamma_quad(a, mp.mpf("0.00125") * mp.mpf("0.3"))
    out("kTable2GammaCdfTiny", v)
    print("// log10 of previous:", mp.nstr(mp.log10(v), 12))
    out("kPhi1_5", normal_cdf_series("1.5"))
    out("kPhi1_0", normal_cdf_series("1.0"))
    print("// incomplete gamma grid {shape, x, P}")
    worst = mp.mpf(0)
    for s in ["0.01", "0.4", "1.7", "7.5", "31.29903", "120", "850"]:
        for x in ["1e-4", "0.3", "2", "9", "35", "140", "900"]:
            p = lower_gamma_quad(s, x)
            q = mp.gammainc(mp.mpf(s), 0, mp.mpf(x), regularized=True)
            if p > mp.mpf(10) ** -300:
                worst = max(worst, abs(p - q) / p)
            if p < mp.mpf(10) ** -300:
                continue
            print(f"  {{{s}, {x}, {mp.nstr(p, 20)}}},")
    print("// max relative disagreement quad vs gammainc:", mp.nstr(worst, 3), file=sys.stderr)
    print("// normal grid {z, Phi}")
    for z in ["-8", "-5.5", "-2.25", "-0.3", "0.0001", "0.7", "3.1", "6"]:
        print(f"  {{{z}, {mp.nstr(normal_cdf_series(z), 20)}}},")
    out("kConvTable2Comp1_t24_m1", conv_cdf("0.7", "0.3", 24, "0.4", 1, 1, "0.00125"))
    out("kConvMidM1", conv_cdf("0.7", "0.3", 2, "0.4", 1, 1, 3))
    out("kConvMidM2", conv_cdf("0.7", "0.3", 2, "0.4", 1, 2, 3))
    out("kConvMidM3", conv_cdf("0.7", "0.3", 2, "0.4", 1, 3, 3))
