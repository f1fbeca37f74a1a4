"""Pure-Python (numpy) implementation of the hot Mittag-Leffler kernels.

Same signatures and semantics as the compiled ``_core`` extension; used when
the extension is unavailable or ``FRACSCHRODINGER_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import numpy as np

EPS = np.finfo(float).eps


def taylor_batch(z, lc, lr, mono_from, atol, rtol):
    """Sum ``sum_n z**n * exp(lc[n])`` for every entry of ``z``.

    ``lc[n]`` is ``-loggamma(alpha*n + beta)`` (``-inf`` at poles of Gamma),
    ``lr[n] = Re(lc[n+1] - lc[n])`` and ``lr`` is finite and non-increasing
    from index ``mono_from`` on, which makes ``|t[n]| q/(1-q)`` with
    ``q = |z| exp(lr[n])`` a bound on the tail after term ``n``.

    Returns ``(values, bounds, nterms, abssum, converged)``. ``bounds`` adds
    the tail bound to a running rounding estimate. Entries of ``z`` must be
    non-zero.
    """
    z = np.ascontiguousarray(z, dtype=complex)
    lc = np.ascontiguousarray(lc, dtype=complex)
    lr = np.ascontiguousarray(lr, dtype=float)
    nz = z.size
    nmax = lc.size

    logz = np.log(z)
    absz = np.abs(z)
    labs = np.abs(logz)

    vals = np.zeros(nz, dtype=complex)
    abssum = np.zeros(nz)
    err = np.zeros(nz)
    bounds = np.full(nz, np.inf)
    nterms = np.full(nz, nmax, dtype=np.int64)
    converged = np.zeros(nz, dtype=bool)
    active = np.arange(nz)

    for n in range(nmax):
        if active.size == 0:
            break
        lcn = lc[n]
        if np.isneginf(lcn.real):
            a = np.zeros(active.size)
        else:
            t = np.exp(n * logz[active] + lcn)
            a = np.abs(t)
            vals[active] += t
            abssum[active] += a
            err[active] += a * (n * labs[active] + abs(lcn) + 4.0)
        if n < mono_from or n >= nmax - 1:
            continue

        q = absz[active] * np.exp(lr[n])
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(q < 1.0, a * q / (1.0 - q), np.inf)
        rnd = EPS * (err[active] + (n + 1) * abssum[active])
        b = tail + rnd
        bounds[active] = b
        target = np.maximum(atol, rtol * np.abs(vals[active]))
        ok = b <= target
        # tail negligible but rounding above target: more terms cannot help
        stuck = (~ok) & (tail <= 1e-3 * rnd)
        finished = ok | stuck
        if finished.any():
            idx = active[finished]
            nterms[idx] = n + 1
            converged[active[ok]] = True
            active = active[~finished]

    return vals, bounds, nterms, abssum, converged


def ray_level(z, theta, alpha, gamma, log_r, weight):
    """Node sum of the Hankel-ray integrand over the supplied nodes.

    For each ``z[i]`` with ray angle ``theta[i]`` this returns

        S = sum_j weight[j] * (g(r_j, theta) - g(r_j, -theta))
        g(r, th) = exp(r e^{i th}) r^(gamma+1) e^{i(gamma+1)th} / (r^alpha e^{i alpha th} - z)

    together with the matching sum of absolute values. ``log_r`` holds
    ``log r_j`` and ``weight`` the Jacobian factor left after absorbing one
    power of ``r`` into ``r^(gamma+1)``.
    """
    z = np.ascontiguousarray(z, dtype=complex)
    theta = np.ascontiguousarray(theta, dtype=float)
    log_r = np.ascontiguousarray(log_r, dtype=float)
    weight = np.ascontiguousarray(weight, dtype=float)
    g1 = gamma + 1.0
    r = np.exp(log_r)

    total = np.zeros(z.size, dtype=complex)
    abstotal = np.zeros(z.size)
    chunk = max(1, 200_000 // max(1, log_r.size))
    for start in range(0, z.size, chunk):
        sl = slice(start, start + chunk)
        zz = z[sl, None]
        th = theta[sl, None]
        acc = np.zeros(zz.shape[0], dtype=complex)
        accabs = np.zeros(zz.shape[0])
        for sign in (1.0, -1.0):
            ang = sign * th
            re_s = r * np.cos(ang)
            live = re_s > -745.0
            with np.errstate(all="ignore"):
                num = np.exp(re_s + 1j * r * np.sin(ang) + g1 * (log_r + 1j * ang))
                den = np.exp(alpha * (log_r + 1j * ang)) - zz
                g = np.where(live, num / den, 0.0) * weight
            g = np.where(np.isfinite(g), g, 0.0)
            acc += sign * g.sum(axis=1)
            accabs += np.abs(g).sum(axis=1)
        total[sl] = acc
        abstotal[sl] = accabs
    return total, abstotal
