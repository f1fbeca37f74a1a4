"""Generalized Mittag-Leffler function with certified error bounds.

``E_{alpha,beta}(z) = sum_n z**n / Gamma(alpha*n + beta)`` for complex ``z``
and ``Re(alpha) > 0``. Every value comes with an absolute error bound; the
evaluation tries, in a fixed order,

* a double-precision Taylor sum with a rigorous tail bound (compiled core),
* an asymptotic expansion (real ``alpha`` in (0, 2], ``|z|`` beyond the
  crossover radius),
* Hankel-contour quadrature along two rays (real ``alpha``),
* an extended-precision Taylor sum (mpmath),

and keeps the first candidate meeting the relative tolerance, else the
best candidate meeting ``max(atol, rtol*|E|)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy import integrate, special

from . import _backend
from .errors import InvalidOrder, NonConvergent, QuadratureFailure, SectorUnsupported

EPS = float(np.finfo(float).eps)
DEFAULT_ATOL = 1e-12
DEFAULT_RTOL = 1e-12
DEFAULT_RADIUS = 50.0
DEFAULT_MAX_TERMS = 100_000
DEFAULT_WEDGE = math.pi / 16

# double Taylor is attempted only while |z|**(1/Re alpha) stays below this
_TAYLOR_GROWTH_LIMIT = 60.0
_CHEAP_TERMS = 4000
_CHEAP_BITS = 2048
_FULL_BITS = 40_000
_ASYMPTOTIC_TERMS = 100
_QUAD_LEVELS = 8
_THETA_CANDIDATES = np.linspace(0.55 * math.pi, math.pi, 19)


class Method(enum.Enum):
    TAYLOR_SERIES = "TaylorSeries"
    ASYMPTOTIC = "Asymptotic"
    QUADRATURE = "Quadrature"


_METHODS = (Method.TAYLOR_SERIES, Method.ASYMPTOTIC, Method.QUADRATURE)
_TAYLOR, _ASYMPTOTIC, _QUADRATURE = 0, 1, 2


@dataclass(frozen=True)
class MLOrder:
    """Order pair ``(alpha, beta)`` with ``Re(alpha) > 0``."""

    alpha: complex
    beta: complex = 1.0

    def __post_init__(self):
        a = complex(self.alpha)
        b = complex(self.beta)
        if not (np.isfinite(a) and np.isfinite(b)):
            raise InvalidOrder(f"order must be finite, got alpha={a}, beta={b}")
        if a.real <= 0:
            raise InvalidOrder(f"Re(alpha) must be > 0, got alpha={a}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def real_alpha(self) -> bool:
        return self.alpha.imag == 0.0


@dataclass(frozen=True)
class MLResult:
    value: complex
    abs_error_bound: float
    method: Method


def as_order(order) -> MLOrder:
    """Accept an :class:`MLOrder` or an ``(alpha, beta)`` pair."""
    if isinstance(order, MLOrder):
        return order
    alpha, beta = order
    return MLOrder(alpha, beta)


# ---------------------------------------------------------------------------
# Gamma coefficients


def _exact_arg(alpha: complex, beta: complex, n: int) -> tuple[Fraction, Fraction]:
    re = Fraction(alpha.real) * n + Fraction(beta.real)
    im = Fraction(alpha.imag) * n + Fraction(beta.imag)
    return re, im


def _neg_log_gamma(alpha: complex, beta: complex, n: np.ndarray) -> np.ndarray:
    """``-loggamma(alpha*n + beta)`` with exact pole handling (``-inf`` there)."""
    x = alpha * n.astype(float) + beta
    if np.all(x.imag == 0):
        # real gammaln is ulp-accurate; complex loggamma is not
        xr = x.real
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -special.gammaln(xr) + np.where(special.gammasgn(xr) < 0, 1j * math.pi, 0.0)
    else:
        ctx = mpmath.MPContext()
        ctx.prec = 80
        out = np.array([-complex(ctx.loggamma(ctx.mpc(v.real, v.imag))) for v in x])
    near = (x.real < 0.5) & (np.abs(x - np.round(x.real)) < 1e-6)
    for i in np.flatnonzero(near):
        re, im = _exact_arg(alpha, beta, int(n[i]))
        if im == 0 and re <= 0 and re.denominator == 1:
            out[i] = complex(-np.inf, 0.0)
        else:
            # double rounding of alpha*n + beta is not small next to a pole
            ctx = mpmath.MPContext()
            ctx.prec = 120
            xm = ctx.mpc(ctx.mpf(re.numerator) / re.denominator,
                         ctx.mpf(im.numerator) / im.denominator)
            out[i] = complex(-ctx.loggamma(xm))
    return out


@lru_cache(maxsize=64)
def _taylor_coeffs(alpha: complex, beta: complex, nmax: int):
    """Cached ``(lc, lr, mono_from)`` for the first ``nmax`` Taylor terms."""
    n = np.arange(nmax + 1)
    lc_full = _neg_log_gamma(alpha, beta, n)
    with np.errstate(invalid="ignore"):
        lr = np.diff(lc_full.real)
        bad = ~np.isfinite(lr)
        bad[1:] |= lr[1:] > lr[:-1] + 1e-12 * (1.0 + np.abs(lr[:-1]))
    idx = np.flatnonzero(bad)
    mono_from = int(idx[-1]) + 1 if idx.size else 0
    lc = lc_full[:nmax]
    lc.setflags(write=False)
    lr.setflags(write=False)
    return lc, lr, mono_from


def _taylor_nmax(order: MLOrder, max_terms: int) -> int:
    ra = order.alpha.real
    n = int((250.0 + abs(order.beta)) / ra) + 50
    return max(2, min(n, max_terms))


# ---------------------------------------------------------------------------
# extended-precision Taylor sum


def _rational_step(alpha: complex):
    """``(q, p)`` with ``alpha == p/q`` exactly for small ``q``, else ``None``."""
    if alpha.imag != 0.0:
        return None
    fa = Fraction(alpha.real)
    if fa.denominator <= 8 and fa.numerator <= 64:
        return fa.denominator, fa.numerator
    return None


def _mp_partial_sum(alpha: complex, beta: complex, z: complex, nterms: int, bits: int):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    a = ctx.mpc(alpha.real, alpha.imag)
    b = ctx.mpc(beta.real, beta.imag)
    zz = ctx.mpc(z.real, z.imag)
    step = _rational_step(alpha)
    chains: dict[int, tuple] = {}
    total = ctx.mpc(0)
    zn = ctx.mpc(1)
    for n in range(nterms):
        x = a * n + b
        r = None
        if step is not None:
            q, p = step
            prev = chains.get(n % q)
            if prev is not None and prev[1] != 0 and ctx.re(prev[0]) > 0.5:
                px, pr = prev
                den = px
                for j in range(1, p):
                    den *= px + j
                r = pr / den
        if r is None:
            r = ctx.rgamma(x)
        if step is not None:
            chains[n % step[0]] = (x, r)
        total += zn * r
        zn *= zz
    return ctx, total


def _logsumexp(v: np.ndarray) -> float:
    v = v[np.isfinite(v)]
    if v.size == 0:
        return -math.inf
    m = float(v.max())
    return m + math.log(float(np.exp(v - m).sum()))


def _series_plan(lt, lr, mono_from, logz_abs, log_target):
    """Smallest term count whose tail bound is below ``target/4``."""
    n = np.arange(mono_from, lt.size - 1)
    if n.size == 0:
        return None, math.inf
    logq = logz_abs + lr[n]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q = np.exp(logq)
        logtail = np.where(q < 1.0, lt[n] + logq - np.log1p(-np.minimum(q, 0.999999999)), np.inf)
    ok = np.flatnonzero(logtail <= log_target - math.log(4.0))
    if ok.size == 0:
        return None, math.inf
    i = int(ok[0])
    return int(n[i]) + 1, float(np.exp(logtail[i]))


def _mp_series(order: MLOrder, z: complex, max_n: int, max_bits: int,
               atol: float, rtol: float, strict: bool):
    """Extended-precision Taylor sum.

    Returns ``(value, bound, ok)``; ``ok`` reports whether the bound met the
    target (strict relative target when ``strict``).
    """
    alpha, beta = order.alpha, order.beta
    nmax = max(2, max_n + 1)
    lc, lr, mono_from = _taylor_coeffs(alpha, beta, nmax)
    logz_abs = math.log(abs(z))
    lt = np.arange(nmax) * logz_abs + lc.real
    log_s = _logsumexp(lt)
    abs_t = atol if (not strict or rtol == 0.0) else 0.0

    def target_for(v):
        return max(abs_t, rtol * v)

    guess = rtol * math.exp(min(log_s, 700.0)) * 1e-20 if rtol > 0 else 0.0
    target = max(abs_t, guess) if math.isfinite(log_s) else abs_t
    best = (complex("nan"), math.inf)
    for _ in range(8):
        if not target > 0:
            break
        nterms, tail = _series_plan(lt, lr, mono_from, logz_abs, math.log(target))
        if nterms is None or nterms > max_n:
            break
        m = np.arange(nterms)
        weights = (6.0 + 3.0 * abs(alpha)) * m + 32.0
        log_round = _logsumexp(lt[:nterms] + np.log(weights))
        bits = int(math.ceil((log_round - math.log(target)) / math.log(2.0))) + 24
        bits = max(bits, 80)
        if bits > max_bits:
            break
        ctx, total = _mp_partial_sum(alpha, beta, z, nterms, bits)
        value = complex(total)
        conv = float(abs(total - ctx.mpc(value.real, value.imag)))
        bound = tail + math.exp(log_round - bits * math.log(2.0)) + conv
        if bound < best[1]:
            best = (value, bound)
        need = target_for(abs(value))
        if bound <= need:
            return value, bound, True
        if abs(value) > 2.0 * bound:
            target = 0.5 * target_for(abs(value) - bound)
        else:
            # cancellation swamped the sum; its size is unknown below the bound
            target = max(abs_t, bound * 1e-30)
    return best[0], best[1], False


def _rgamma_exact(beta: complex) -> tuple[complex, float]:
    ctx = mpmath.MPContext()
    ctx.prec = 160
    r = ctx.rgamma(ctx.mpc(beta.real, beta.imag))
    v = complex(r)
    return v, float(abs(r - ctx.mpc(v.real, v.imag)))


# ---------------------------------------------------------------------------
# pole geometry shared by the asymptotic and quadrature paths


def _pole_geometry(alpha: float, z: np.ndarray):
    """Pole angles ``phi_m`` of ``1/(s**alpha - z)`` and the chosen ray angle."""
    mm = int(math.ceil(alpha / 2.0)) + 2
    m = np.arange(-mm, mm + 1)
    phi = (np.angle(z)[:, None] + 2.0 * math.pi * m[None, :]) / alpha
    dist = np.abs(np.abs(phi)[:, :, None] - _THETA_CANDIDATES[None, None, :]).min(axis=1)
    pick = np.argmax(dist, axis=1)
    theta = _THETA_CANDIDATES[pick]
    gap = dist[np.arange(z.size), pick]
    return phi, theta, gap


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ca = 134217729.0 * a
    ah = ca - (ca - a)
    al = a - ah
    cb = 134217729.0 * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _cmul_dd(xh, xl, yh, yl):
    """Complex double-double product ``(xh + xl) * (yh + yl)``."""
    p1, e1 = _two_prod(xh.real, yh.real)
    p2, e2 = _two_prod(xh.imag, yh.imag)
    p3, e3 = _two_prod(xh.real, yh.imag)
    p4, e4 = _two_prod(xh.imag, yh.real)
    re, f1 = _two_sum(p1, -p2)
    im, f2 = _two_sum(p3, p4)
    cross = xh * yl + xl * yh
    re_lo = e1 - e2 + f1 + cross.real
    im_lo = e3 + e4 + f2 + cross.imag
    re, re_lo = _two_sum(re, re_lo)
    im, im_lo = _two_sum(im, im_lo)
    return re + 1j * im, re_lo + 1j * im_lo


def _principal_root_dd(alpha: float, z: np.ndarray):
    """``z**(1/alpha)`` as a double-double when cheaply exact, else ``None``.

    Covers ``alpha = 1/n`` (n <= 8) by repeated products and ``alpha = 2``
    by a Newton-corrected square root.
    """
    fa = Fraction(alpha)
    zero = np.zeros_like(z)
    if fa == 1:
        return z, zero
    if fa == 2:
        hi = np.sqrt(z)
        sq_hi, sq_lo = _cmul_dd(hi, zero, hi, zero)
        with np.errstate(invalid="ignore", divide="ignore"):
            lo = ((z - sq_hi) - sq_lo) / (2.0 * hi)
        return hi, np.where(np.isfinite(lo), lo, 0.0)
    if fa.numerator == 1 and fa.denominator <= 8:
        hi, lo = z, zero
        for _ in range(fa.denominator - 1):
            hi, lo = _cmul_dd(hi, lo, z, zero)
        return hi, lo
    return None


def _residues(alpha: float, beta: complex, z: np.ndarray, phi, theta):
    """Sum of ``zeta**(1-beta) exp(zeta) / alpha`` over poles inside the rays.

    Also returns the rounding bound and the summed size of the poles with
    ``theta <= |phi| <= pi`` left outside. ``exp`` magnifies the rounding of ``zeta`` by ``|zeta|``; large poles get
    ``zeta`` as a double-double when that is exact and cheap, and an
    extended-precision evaluation otherwise.
    """
    logzeta = np.log(np.abs(z))[:, None] / alpha + 1j * phi
    inside = np.abs(phi) < theta[:, None]
    with np.errstate(over="ignore", invalid="ignore"):
        zeta = np.exp(logzeta)
        res = np.exp((1.0 - beta) * logzeta + zeta) / alpha
        res = np.where(inside, res, 0.0)
        amp = np.abs(zeta) * (np.abs(logzeta) + np.abs(1.0 - beta) + 4.0) + 4.0
        rnd = EPS * (np.abs(res) * amp).sum(axis=1)
        total = res.sum(axis=1)
        outside = ~inside & (np.abs(phi) <= math.pi)
        excl = np.where(outside, np.abs(np.exp((1.0 - beta) * logzeta + zeta)) / alpha, 0.0).sum(axis=1)
    big = (np.where(inside, np.abs(zeta), 0.0).max(axis=1, initial=0.0) >= 16.0) & np.isfinite(total)
    if not big.any():
        return total, rnd, excl
    root = _principal_root_dd(alpha, z[big])
    if root is not None:
        hi, lo = root
        mm = (phi.shape[1] - 1) // 2
        # alpha = 2 roots differ by sign between branches; alpha = 1/n share one root
        sign = np.where((np.arange(phi.shape[1]) - mm) % 2 == 0, 1.0, -1.0) if alpha == 2 else 1.0
        zh = hi[:, None] * sign
        zl = lo[:, None] * sign
        with np.errstate(over="ignore", invalid="ignore"):
            # separate factors: adding (1-beta)*log(zeta) to a huge zeta would round it away
            r = np.exp((1.0 - beta) * logzeta[big]) * np.exp(zh) * (1.0 + zl) / alpha
            joint = np.exp((1.0 - beta) * logzeta[big] + zh) * (1.0 + zl) / alpha
            r = np.where(np.isfinite(r), r, joint)
            r = np.where(inside[big], r, 0.0)
            amp = np.abs(1.0 - beta) * (np.abs(logzeta[big]) + 1.0) + 8.0 + np.abs(zh) * 1e-15
            total[big] = r.sum(axis=1)
            rnd[big] = EPS * (np.abs(r) * amp).sum(axis=1)
        return total, rnd, excl
    ctx = mpmath.MPContext()
    for i in np.flatnonzero(big):
        total[i], rnd[i] = _residues_mp(ctx, alpha, beta, complex(z[i]),
                                        np.flatnonzero(inside[i]), phi.shape[1])
    return total, rnd, excl


def _residues_mp(ctx, alpha, beta, z, cols, ncols):
    mm = (ncols - 1) // 2
    zmax = abs(z) ** (1.0 / alpha)
    ctx.prec = 64 + int(math.log2(zmax * (abs(math.log(zmax)) + 8.0)))
    a = ctx.mpf(alpha)
    b = ctx.mpc(beta.real, beta.imag)
    lz = ctx.log(ctx.mpc(z.real, z.imag))
    total = ctx.mpc(0)
    for c in cols:
        lzeta = (lz + 2j * ctx.pi * (int(c) - mm)) / a
        total += ctx.exp((1 - b) * lzeta + ctx.exp(lzeta))
    total /= a
    value = complex(total)
    if not np.isfinite(value):
        return value, math.inf
    return value, 4.0 * EPS * abs(value)


def _asymptotic_batch(alpha: float, beta: complex, z: np.ndarray, atol: float = DEFAULT_ATOL,
                      rtol: float = DEFAULT_RTOL, num_terms=None, wedge: float = DEFAULT_WEDGE):
    """Exponential-plus-algebraic expansion for real ``alpha`` in (0, 2].

    Returns ``(values, bounds, supported)``. Without ``num_terms`` the
    algebraic sum stops once the next term is well below the tolerance, or
    at its smallest term.
    """
    phi, theta, gap = _pole_geometry(alpha, z)
    res, rnd, excl = _residues(alpha, beta, z, phi, theta)
    kmax = _ASYMPTOTIC_TERMS if num_terms is None else max(num_terms + 60, 1)
    k = np.arange(1, kmax + 1)
    nlg = _neg_log_gamma(complex(alpha), beta, -k)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        terms = np.exp(-k[None, :] * np.log(z)[:, None] + nlg[None, :])
    terms = np.where(np.isneginf(nlg.real)[None, :], 0.0, terms)
    mag = np.abs(terms)

    # every algebraic term vanishes when beta - alpha*k hits a pole for all k;
    # what remains of the ray integral is then of the size of the excluded poles
    fa, fb = Fraction(alpha), Fraction(beta.real)
    structural = beta.imag == 0 and fa.denominator == 1 and fb.denominator == 1 and fb <= fa
    # a term next to a pole of Gamma is accidentally tiny; any window of
    # ceil(1/alpha)+1 terms spans a unit step of beta - alpha*k and so holds
    # a representative one
    width = int(math.ceil(1.0 / alpha)) + 1
    env = mag.copy()
    for j in range(1, width):
        env[:, :-j] = np.maximum(env[:, :-j], mag[:, j:])
    nxt = np.empty((z.size, kmax + 1))
    nxt[:, kmax] = 0.0 if structural else np.inf
    for j in range(kmax - 1, -1, -1):
        nxt[:, j] = np.where(env[:, j] > 0, env[:, j], nxt[:, j + 1])

    if num_terms is not None:
        nsel = np.full(z.size, min(num_terms, kmax))
    else:
        scale = np.maximum(np.abs(res), 1.0 / np.abs(z))
        scale = np.where(np.isfinite(scale), scale, 1.0)
        tgt = rtol * scale / 16.0 if rtol > 0 else np.full(z.size, atol / 16.0)
        good = nxt[:, :kmax] <= 0.1 * tgt[:, None]
        first_good = np.where(good.any(axis=1), good.argmax(axis=1), kmax)
        nsel = np.minimum(first_good, np.argmin(nxt[:, :kmax], axis=1))
        nsel = np.where(good.any(axis=1), first_good, nsel)

    cols = np.arange(kmax)[None, :]
    keep = cols < nsel[:, None]
    alg = np.where(keep, terms, 0.0).sum(axis=1)
    alg_rnd = EPS * np.where(keep, mag * (cols + 2.0), 0.0).sum(axis=1)
    omitted = nxt[np.arange(z.size), nsel]
    values = res - alg
    bounds = 2.0 * omitted + 2.0 * excl + alg_rnd + rnd
    bounds = np.where(np.isfinite(values), bounds, np.inf)
    return values, bounds, gap >= wedge


# ---------------------------------------------------------------------------
# Hankel-ray quadrature


def _hankel_core(alpha: float, beta: complex, z: np.ndarray, target: np.ndarray, rtol: float):
    gamma = alpha - beta
    phi, theta, _ = _pole_geometry(alpha, z)
    res, rnd, _ = _residues(alpha, beta, z, phi, theta)
    g1 = gamma.real + 1.0
    u_lo = min(7.0, math.asinh(80.0 / (math.pi * g1)))
    u_hi = 4.0

    # integrand size below the first node bounds the truncated piece near r = 0
    lr0 = 0.5 * math.pi * math.sinh(-u_lo)
    _, head = _backend.ray_level(z, theta, alpha, gamma, np.array([lr0]), np.array([1.0 / g1]))
    head = head / (2.0 * math.pi)

    total = np.zeros(z.size, dtype=complex)
    abstotal = np.zeros(z.size)
    values = np.full(z.size, complex("nan"))
    bounds = np.full(z.size, np.inf)
    prev = None
    act = np.arange(z.size)
    h0 = 0.5
    for level in range(_QUAD_LEVELS + 1):
        h = h0 / 2**level
        kk = np.arange(-math.ceil(u_lo / h), math.ceil(u_hi / h) + 1)
        if level > 0:
            kk = kk[kk % 2 == 1]
        u = kk * h
        s, a = _backend.ray_level(z[act], theta[act], alpha, gamma,
                                  0.5 * math.pi * np.sinh(u), 0.5 * math.pi * np.cosh(u))
        total[act] += s
        abstotal[act] += a
        integral = h * total[act] / (2j * math.pi)
        if prev is not None:
            err = (np.abs(integral - prev) + 16.0 * EPS * h * abstotal[act] / (2.0 * math.pi)
                   + rnd[act] + head[act])
            v = res[act] + integral
            better = err < bounds[act]
            values[act] = np.where(better, v, values[act])
            bounds[act] = np.where(better, err, bounds[act])
            done = bounds[act] <= np.maximum(target[act], rtol * np.abs(values[act]))
            act = act[~done]
            integral = integral[~done]
            if act.size == 0:
                break
        prev = integral
    bounds = np.where(np.isfinite(values), bounds, np.inf)
    return values, bounds


def _hankel_batch(alpha: float, beta: complex, z: np.ndarray, target: np.ndarray, rtol: float):
    """Hankel-ray quadrature; stops at ``max(target, rtol*|E|)`` per point."""
    # the ray integrand needs Re(alpha - beta) > -1; shift beta down by alpha first
    shifts = 0
    while (alpha - beta + shifts * alpha).real <= -0.5:
        shifts += 1
    scale = np.abs(z) ** shifts
    values, bounds = _hankel_core(alpha, beta - shifts * alpha, z, target * scale, rtol)
    for i in range(shifts, 0, -1):
        r, _ = _rgamma_exact(beta - i * alpha)
        values = (values - r) / z
        bounds = (bounds + EPS * (np.abs(values * z) + abs(r))) / np.abs(z)
    return values, bounds


# ---------------------------------------------------------------------------
# driver


def _evaluate(order: MLOrder, z, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL,
              radius=DEFAULT_RADIUS, max_terms=DEFAULT_MAX_TERMS):
    """Vectorized evaluation; returns ``(values, bounds, method_codes, ok)``."""
    z = np.ascontiguousarray(z, dtype=complex).ravel()
    n = z.size
    vals = np.full(n, complex("nan"))
    bounds = np.full(n, np.inf)
    codes = np.zeros(n, dtype=np.int8)
    done = np.zeros(n, dtype=bool)
    alpha, beta = order.alpha, order.beta

    def strict(v):
        return rtol * np.abs(v) if rtol > 0 else np.full(np.shape(v), atol)

    def loose(v):
        return np.maximum(atol, rtol * np.abs(v))

    def offer(idx, v, b, code):
        b = np.where(np.isfinite(v), b, np.inf)
        better = b < bounds[idx]
        sel = idx[better]
        vals[sel] = v[better]
        bounds[sel] = b[better]
        codes[sel] = code
        done[idx] |= bounds[idx] <= strict(vals[idx])

    zero = z == 0
    if zero.any():
        r, err = _rgamma_exact(beta)
        idx = np.flatnonzero(zero)
        vals[idx] = r
        bounds[idx] = err
        done[idx] = True

    absz = np.abs(z)
    inner = ~done & (absz <= radius)
    outer = ~done & (absz > radius)
    real_alpha = order.real_alpha
    ra = alpha.real

    # stage 1: double Taylor (inner) or asymptotic (outer)
    with np.errstate(divide="ignore", over="ignore"):
        growth = absz ** (1.0 / ra)
    idx = np.flatnonzero(inner & (growth <= _TAYLOR_GROWTH_LIMIT))
    if idx.size:
        nmax = _taylor_nmax(order, max_terms)
        lc, lr, mono_from = _taylor_coeffs(alpha, beta, nmax)
        # aim below the tolerance; a few extra terms are cheap
        t_atol = 0.0 if rtol > 0 else atol / 16.0
        v, b, _, _, _ = _backend.taylor_batch(z[idx], lc, lr, mono_from, t_atol, rtol / 16.0)
        offer(idx, v, b, _TAYLOR)
    if real_alpha and 0 < ra <= 2:
        idx = np.flatnonzero(outer & ~done)
        if idx.size:
            v, b, supported = _asymptotic_batch(ra, beta, z[idx], atol, rtol)
            offer(idx[supported], v[supported], b[supported], _ASYMPTOTIC)

    # stage 2: Hankel quadrature
    if real_alpha:
        idx = np.flatnonzero(~done)
        if idx.size:
            target = np.full(idx.size, 0.0 if rtol > 0 else atol / 16.0)
            v, b = _hankel_batch(ra, beta, z[idx], target, rtol / 16.0)
            offer(idx, v, b, _QUADRATURE)

    # stage 3: capped extended-precision series
    for i in np.flatnonzero(~done):
        v, b, _ = _mp_series(order, complex(z[i]), min(_CHEAP_TERMS, max_terms), _CHEAP_BITS,
                             atol, rtol, strict=True)
        offer(np.array([i]), np.array([v]), np.array([b]), _TAYLOR)

    done |= bounds <= loose(vals)

    # stage 4: full-budget series
    for i in np.flatnonzero(~done):
        v, b, _ = _mp_series(order, complex(z[i]), max_terms, _FULL_BITS, atol, rtol, strict=False)
        offer(np.array([i]), np.array([v]), np.array([b]), _TAYLOR)
        done[i] |= bounds[i] <= loose(vals[i])

    return vals, bounds, codes, done


def _check_tol(atol, rtol):
    if atol < 0 or rtol < 0 or (atol == 0 and rtol == 0):
        raise ValueError("need atol >= 0, rtol >= 0 and not both zero")


def ml_values(order, z, *, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL,
              radius: float = DEFAULT_RADIUS, max_terms: int = DEFAULT_MAX_TERMS):
    """Evaluate ``E_{alpha,beta}`` elementwise.

    Returns ``(values, bounds)`` shaped like ``z``. Raises
    :class:`NonConvergent` for the first entry whose bound misses
    ``max(atol, rtol*|E|)``.
    """
    order = as_order(order)
    _check_tol(atol, rtol)
    z = np.asarray(z, dtype=complex)
    vals, bounds, _, ok = _evaluate(order, z, atol, rtol, radius, max_terms)
    if not ok.all():
        i = int(np.flatnonzero(~ok)[0])
        zi = complex(z.ravel()[i])
        raise NonConvergent(
            f"E_({order.alpha},{order.beta})({zi}) not certified: bound {bounds[i]:.3g}",
            complex(vals[i]), float(bounds[i]))
    return vals.reshape(z.shape), bounds.reshape(z.shape)


def ml(order, z, *, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL,
       radius: float = DEFAULT_RADIUS, max_terms: int = DEFAULT_MAX_TERMS) -> MLResult:
    """Evaluate ``E_{alpha,beta}(z)`` to ``max(atol, rtol*|E|)``.

    Parameters
    ----------
    order : MLOrder or (alpha, beta)
    z : complex
    atol, rtol : float
        Accuracy target; the looser of the two applies.
    radius : float
        Crossover radius between series and large-argument methods.
    max_terms : int
        Term budget for the extended-precision series.
    """
    order = as_order(order)
    _check_tol(atol, rtol)
    zz = np.array([complex(z)])
    vals, bounds, codes, ok = _evaluate(order, zz, atol, rtol, radius, max_terms)
    if not ok[0]:
        raise NonConvergent(
            f"E_({order.alpha},{order.beta})({complex(z)}) not certified: bound {bounds[0]:.3g}",
            complex(vals[0]), float(bounds[0]))
    return MLResult(complex(vals[0]), float(bounds[0]), _METHODS[codes[0]])


def ml_series(order, z, max_terms: int = DEFAULT_MAX_TERMS, *, atol: float = DEFAULT_ATOL,
              rtol: float = DEFAULT_RTOL) -> MLResult:
    """Truncated Taylor sum in extended precision with a rigorous tail bound.

    The tail after term ``n`` is bounded by ``|t_n| q/(1-q)`` where
    ``q = |z| |Gamma(alpha n + beta)/Gamma(alpha n + alpha + beta)|`` is
    non-increasing from the first certified index on.
    """
    order = as_order(order)
    _check_tol(atol, rtol)
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    z = complex(z)
    if z == 0:
        r, err = _rgamma_exact(order.beta)
        return MLResult(r, err, Method.TAYLOR_SERIES)
    v, b, ok = _mp_series(order, z, max_terms, _FULL_BITS, atol, rtol, strict=False)
    if not ok:
        raise NonConvergent(f"series for E_({order.alpha},{order.beta})({z}) not certified "
                            f"within {max_terms} terms", v, b)
    return MLResult(v, b, Method.TAYLOR_SERIES)


def ml_asymptotic(order, z, num_terms: int, *, radius: float = DEFAULT_RADIUS,
                  wedge: float = DEFAULT_WEDGE) -> MLResult:
    """Large-argument expansion for real ``alpha`` in (0, 2].

    Sum of the exponential contributions ``zeta**(1-beta) exp(zeta)/alpha``
    from the poles ``zeta**alpha = z`` enclosed by the Hankel contour, minus
    ``sum_{k=1}^{num_terms} z**-k / Gamma(beta - alpha k)``. The bound is
    twice the first omitted non-zero term plus rounding.
    """
    order = as_order(order)
    if not order.real_alpha or not 0 < order.alpha.real <= 2:
        raise InvalidOrder(f"asymptotic expansion needs real alpha in (0, 2], got {order.alpha}")
    if num_terms < 0:
        raise ValueError("num_terms must be >= 0")
    z = complex(z)
    if abs(z) < radius:
        raise ValueError(f"|z| = {abs(z):.6g} is below the crossover radius {radius}")
    v, b, supported = _asymptotic_batch(order.alpha.real, order.beta, np.array([z]),
                                        num_terms=num_terms, wedge=wedge)
    if not supported[0]:
        raise SectorUnsupported(f"z = {z} lies within {wedge:.3g} rad of a pole direction")
    return MLResult(complex(v[0]), float(b[0]), Method.ASYMPTOTIC)


# ---------------------------------------------------------------------------
# Laplace-transform identity


def _growth_rate(order: MLOrder, z: complex) -> float:
    """Exponential growth rate in ``x`` of ``E_{alpha,beta}(x**alpha z)``."""
    if z == 0:
        return 0.0
    if not order.real_alpha:
        return abs(z) ** (1.0 / order.alpha.real)
    alpha = order.alpha.real
    mm = int(math.ceil(alpha / 2.0)) + 2
    m = np.arange(-mm, mm + 1)
    phi = (np.angle(z) + 2.0 * math.pi * m) / alpha
    phi = phi[np.abs(phi) <= math.pi]
    if phi.size == 0:
        return 0.0
    return max(0.0, float((abs(z) ** (1.0 / alpha) * np.cos(phi)).max()))


def laplace_identity_residual(order, mu: complex, z: complex, quad_points: int = 4096, *,
                              tail_tol: float = 1e-10) -> float:
    """Relative residual of the Laplace-transform identity.

    Compares ``int_0^inf exp(-mu x) x**(beta-1) E_{alpha,beta}(x**alpha z) dx``,
    computed by tanh-sinh quadrature on ``[0, X]`` with an exponential tail
    estimate, against ``mu**(alpha-beta) / (mu**alpha - z)``.

    ``quad_points`` caps the quadrature refinement (levels ~ log2 of it).
    """
    order = as_order(order)
    alpha, beta = order.alpha, order.beta
    mu = complex(mu)
    z = complex(z)
    if mu.real <= 0:
        raise ValueError("Re(mu) must be > 0")
    log_mu = np.log(mu)
    rhs = np.exp((alpha - beta) * log_mu) / (np.exp(alpha * log_mu) - z)
    kappa = mu.real - _growth_rate(order, z)
    if kappa <= 0:
        raise QuadratureFailure("integrand does not decay: Re(mu) below the growth rate")
    xmax = 40.0 / kappa

    def f(x):
        x = np.real(np.asarray(x))
        flat = x.ravel()
        with np.errstate(divide="ignore"):
            lx = np.log(flat)
        arg = np.exp(alpha * lx) * z
        e, _ = ml_values(order, arg)
        out = np.exp(-mu * flat + (beta - 1.0) * lx) * e
        return out.reshape(x.shape)

    maxlevel = int(np.clip(math.floor(math.log2(max(quad_points, 2))), 4, 16))
    res = integrate.tanhsinh(f, 0.0, xmax, maxlevel=maxlevel, atol=0.0, rtol=1e-13)
    value = complex(res.integral)
    qerr = float(np.abs(res.error))
    tail = 2.0 * abs(complex(f(np.array([xmax]))[0])) / kappa
    scale = abs(rhs)
    if tail > tail_tol * scale:
        raise QuadratureFailure(f"tail estimate {tail:.3g} exceeds tolerance", value, tail)
    if not np.isfinite(value) or qerr > 1e-6 * scale:
        raise QuadratureFailure(f"quadrature error estimate {qerr:.3g} too large", value, qerr)
    return float(abs(value - rhs) / scale)
