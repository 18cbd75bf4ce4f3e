#!/usr/bin/env python3
"""Generate the bundled table of zeta-zero ordinates.

Sign changes of Hardy's Z function are located on a fine grid with a
vectorised Riemann-Siegel evaluation (mpmath below t = 200), then each
bracket is refined with mpmath.siegelz. The result is cross-checked
against mpmath.zetazero at several indices.

usage: gen_zeros.py COUNT OUTPUT
"""
import sys

import mpmath
import numpy as np

mpmath.mp.dps = 20


def theta(t):
    # Riemann-Siegel theta, asymptotic series
    return (t / 2) * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def z_rs(t):
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / (2 * np.pi))
    n_max = np.floor(a).astype(int)
    th = theta(t)
    out = np.zeros_like(t)
    for n in range(1, int(n_max.max()) + 1):
        mask = n <= n_max
        out += np.where(mask, np.cos(th - t * np.log(n)) / np.sqrt(n), 0.0)
    out *= 2
    p = a - n_max
    c0 = np.cos(2 * np.pi * (p * p - p - 1 / 16)) / np.cos(2 * np.pi * p)
    sign = np.where(n_max % 2 == 1, 1.0, -1.0)  # (-1)^(N-1)
    return out + sign * (2 * np.pi / t) ** 0.25 * c0


def z_exact(t):
    return float(mpmath.siegelz(t))


def brackets(top):
    lo_t = np.arange(10.0, min(250.0, top), 0.02)
    zs = [np.array([z_exact(t) for t in lo_t])]
    ts = [lo_t]
    if top > 250.0:
        hi_t = np.arange(250.0, top, 0.01)
        ts.append(hi_t)
        zs.append(z_rs(hi_t))
    ts = np.concatenate(ts)
    zs = np.concatenate(zs)
    idx = np.nonzero(np.sign(zs[:-1]) != np.sign(zs[1:]))[0]
    return [(ts[i], ts[i + 1]) for i in idx]


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    target = float(mpmath.zetazero(count).imag)
    br = brackets(target + 0.05)
    roots = []
    for a, b in br:
        r = mpmath.findroot(mpmath.siegelz, (mpmath.mpf(a), mpmath.mpf(b)), solver="anderson")
        roots.append(float(r))
    roots = sorted(r for r in roots if r <= target + 1e-6)
    if len(roots) != count:
        sys.exit(f"found {len(roots)} zeros, expected {count}")
    for k in sorted({k for k in [1, 2, 10, 100, 1000, count // 2, count] if k <= count}):
        ref = float(mpmath.zetazero(k).imag)
        if abs(ref - roots[k - 1]) > 1e-9:
            sys.exit(f"zero {k}: {roots[k - 1]} vs {ref}")
    with open(out, "w") as f:
        f.write(f"# First {count} positive ordinates of nontrivial zeros of zeta(s).\n")
        f.write("# Generated by tools/gen_zeros.py (mpmath siegelz root refinement).\n")
        for r in roots:
            f.write(f"{r:.12f}\n")


if __name__ == "__main__":
    main()
