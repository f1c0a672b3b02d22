#!/usr/bin/env python3
"""Writes tests/unit/oracle_values.inc from arbitrary-precision mpmath values.

Run from the repository root:  python3 tests/oracles/make_oracles.py
The output is committed; tests never call Python.
"""
import mpmath as mp
from pathlib import Path

mp.mp.dps = 40
I = mp.mpc(0, 1)
OUT = Path(__file__).resolve().parents[1] / "unit" / "oracle_values.inc"


def c(x):
    x = mp.mpc(x)
    return "{%s, %s}" % (mp.nstr(x.real, 20, min_fixed=-mp.inf, max_fixed=mp.inf),
                         mp.nstr(x.imag, 20, min_fixed=-mp.inf, max_fixed=mp.inf))


def r(x):
    return mp.nstr(mp.mpf(x), 20)


def H1(n, z):
    return mp.hankel1(n, z)


def Hp(n, z):
    return mp.diff(lambda t: mp.hankel1(n, t), z)


def Jp(n, z):
    return mp.diff(lambda t: mp.besselj(n, t), z)


lines = ["// Generated by tests/oracles/make_oracles.py (mpmath, 40 digits). Do not edit.", ""]

# Complex Bessel/Hankel samples over the supported annulus.
args = [mp.mpc(1, 0), mp.mpc(0.01, 0), mp.mpc(0.5, 0.5), mp.mpc(2, 0.3), mp.mpc(3, -1.5),
        mp.mpc(0, 1), mp.mpc(0, 7.5), mp.mpc(-4, 2), mp.mpc(-12, 0.001), mp.mpc(7.9, 0),
        mp.mpc(8.1, 0), mp.mpc(15, 10), mp.mpc(29.9, 0.1), mp.mpc(0.3, 25), mp.mpc(2.42, -3.88),
        mp.mpc(-20, 20), mp.mpc(5, -2)]
orders = [0, 1, 2, 5, 10, 17, 25, 40]
lines.append("struct BesselSample { int order; std::complex<double> z, j, h; };")
lines.append("inline const BesselSample kBesselSamples[] = {")
for z in args:
    for n in orders:
        j = mp.besselj(n, z)
        h = H1(n, z) if not (z.imag < 0 and z.real <= 0) else None
        if h is None:
            continue
        lines.append("    {%d, %s, %s, %s}," % (n, c(z), c(j), c(h)))
lines.append("};")
lines.append("")

lines.append("struct KSample { int order; double x, k; };")
lines.append("inline const KSample kBesselKSamples[] = {")
for x in [0.01, 0.3, 1.0, 2.0, 2.5, 7.0, 19.0, 45.0]:
    for n in [0, 1, 2, 7, 20]:
        lines.append("    {%d, %s, %s}," % (n, r(x), r(mp.besselk(n, x))))
lines.append("};")
lines.append("")

# Unit-disk determinant f_l(k) = k (J K' - K J') up to the phase (2/pi) i^{-l-1}.
def g(l, k):
    return k * (mp.besselj(l, k) * mp.diff(lambda t: mp.besselk(l, t), k)
                - mp.besselk(l, k) * Jp(l, k))

lines.append("struct DiskRootSample { int ell; double k; };")
lines.append("inline const DiskRootSample kDiskRoots[] = {")
guesses = {0: [1.6, 4.7, 7.9], 1: [3.05, 6.2], 2: [4.36, 7.6], 3: [5.6], 4: [6.85]}
roots = []
for l, gs in guesses.items():
    for x0 in gs:
        roots.append((mp.findroot(lambda k: g(l, k), x0), l))
for k, l in sorted(roots):
    lines.append("    {%d, %s}," % (l, r(k)))
lines.append("};")
lines.append("")

def f(l, k):
    k = mp.mpc(k)
    return I * k * mp.besselj(l, k) * Hp(l, I * k) - k * H1(l, I * k) * Jp(l, k)

lines.append("inline const std::complex<double> kDiskDetAt2p3[] = {")
for l in range(6):
    lines.append("    %s," % c(f(l, 2.3)))
lines.append("};")
lines.append("inline const double kAbsF0AtI = %s;" % r(abs(f(0, I))))
lines.append("")

def lam(l, k):
    den = I * k * H1(l, k) * Hp(l, I * k) - k * H1(l, I * k) * Hp(l, k)
    return -f(l, k) / den

lines.append("inline const std::complex<double> kDiskLambdaAt2[] = {")
for l in range(11):
    lines.append("    %s," % c(lam(l, 2)))
lines.append("};")
lines.append("")

# Circle eigenvalues of S and D' on e^{ilt} (unit circle, tau = 2).
lines.append("struct CircleModeSample { int ell; std::complex<double> tau, single, normal_deriv; };")
lines.append("inline const CircleModeSample kCircleModes[] = {")
for tau in [mp.mpc(2, 0), mp.mpc(0, 2), mp.mpc(1.5, 0.4)]:
    for l in [0, 1, 2, 5]:
        J, H = mp.besselj(l, tau), H1(l, tau)
        s = I * mp.pi / 2 * J * H
        d = I * mp.pi / 4 * tau * (J * Hp(l, tau) + Jp(l, tau) * H)
        lines.append("    {%d, %s, %s, %s}," % (l, c(tau), c(s), c(d)))
lines.append("};")

OUT.write_text("\n".join(lines) + "\n")
print("wrote", OUT)
