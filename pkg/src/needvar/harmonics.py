"""Real spherical harmonics via stable normalized associated Legendre recurrences.

Conventions
-----------
The basis is orthonormal for the unnormalized surface measure (mass 4*pi):

    Y_{l,0}  = N_{l,0} P_l(cos theta),
    Y_{l,m}  = sqrt(2) N_{l,m} P_{l,m}(cos theta) cos(m phi),   m > 0,
    Y_{l,-m} = sqrt(2) N_{l,m} P_{l,m}(cos theta) sin(m phi),   m > 0,

with N_{l,m} = sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!).  The Condon-Shortley
phase is NOT used: P_{l,m} is taken positive on the diagonal l = m, so all
values here differ from phase-carrying tables by (-1)^m.  This flips signs
of individual coefficients coherently and never affects norms or energies.

Normalization is folded into the recurrences; no raw factorials appear, so
evaluation is stable for degrees up to a few thousand.

Coefficient arrays ("alm") are dense (lmax+1, 2*lmax+1) matrices with the
order m stored at column m + lmax.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

SQRT2 = math.sqrt(2.0)
INV_SQRT_4PI = 1.0 / math.sqrt(4.0 * math.pi)

_coeff_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


class HarmonicIndex(NamedTuple):
    """Degree/order pair with |m| <= l."""

    l: int
    m: int


def _check_index(l: int, m: int) -> None:
    if l < 0:
        raise ValueError(f"degree must be nonnegative, got l={l}")
    if abs(m) > l:
        raise ValueError(f"order out of range: |m|={abs(m)} > l={l}")


def _recurrence_coeffs(lmax: int):
    """Diagonal seeds and upward three-term coefficients for normalized P_{l,m}.

    a[l, m], b[l, m] satisfy  P~_{l,m} = a*x*P~_{l-1,m} + b*P~_{l-2,m}
    where P~ includes the full orthonormality factor N_{l,m}/sqrt over 4pi.
    """
    cached = _coeff_cache.get(lmax)
    if cached is not None:
        return cached
    diag = np.empty(lmax + 1)
    diag[0] = INV_SQRT_4PI
    for m in range(1, lmax + 1):
        diag[m] = diag[m - 1] * math.sqrt((2 * m + 1) / (2.0 * m))
    a = np.zeros((lmax + 1, lmax + 1))
    b = np.zeros((lmax + 1, lmax + 1))
    for m in range(lmax + 1):
        for l in range(m + 1, lmax + 1):
            a[l, m] = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b[l, m] = -math.sqrt(
                (2.0 * l + 1.0) * ((l - 1.0) ** 2 - m * m)
                / ((2.0 * l - 3.0) * (l * l - m * m))
            )
    _coeff_cache[lmax] = (diag, a, b)
    return diag, a, b


def assoc_legendre_normalized(l: int, m: int, x):
    """Fully normalized associated Legendre value N_{l,m} P_{l,m}(x).

    Accepts scalar or array x in [-1, 1]; 0 <= m <= l.
    """
    if m < 0:
        raise ValueError("order must be nonnegative here; negative orders only enter Y_{l,m}")
    _check_index(l, m)
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0 + 1e-14):
        raise ValueError("argument outside [-1, 1]")
    x_arr = np.clip(x_arr, -1.0, 1.0)
    diag, a, b = _recurrence_coeffs(l)
    s = np.sqrt(np.maximum(0.0, 1.0 - x_arr * x_arr))
    p_prev = np.zeros_like(x_arr)
    p = diag[m] * s**m
    for ll in range(m + 1, l + 1):
        p, p_prev = a[ll, m] * x_arr * p + b[ll, m] * p_prev, p
    if np.isscalar(x):
        return float(p)
    return p


def real_sph_harm(idx, theta, phi):
    """Real spherical harmonic Y_{l,m} at colatitude theta, longitude phi.

    idx may be a HarmonicIndex or an (l, m) pair; theta/phi may be arrays.
    """
    l, m = idx
    _check_index(l, m)
    ct = np.cos(np.asarray(theta, dtype=float))
    p = assoc_legendre_normalized(l, abs(m), ct)
    if m == 0:
        out = p
    elif m > 0:
        out = SQRT2 * p * np.cos(m * np.asarray(phi, dtype=float))
    else:
        out = SQRT2 * p * np.sin(-m * np.asarray(phi, dtype=float))
    if np.isscalar(theta) and np.isscalar(phi):
        return float(out)
    return out


def real_sph_harm_direction(idx, direction):
    """Y_{l,m} evaluated at a Direction object."""
    return real_sph_harm(idx, direction.theta, direction.phi)


def legendre_weighted_sum(weights: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Sum_l weights[l] * P_l(t) for ordinary Legendre polynomials.

    Runs the standard upward recurrence over all degrees up to len(weights)-1;
    t may be any array of values in [-1, 1].
    """
    t = np.asarray(t, dtype=float)
    lmax = len(weights) - 1
    acc = np.full_like(t, weights[0], dtype=float)
    if lmax == 0:
        return acc
    p_prev = np.ones_like(t)
    p = t.copy()
    acc = acc + weights[1] * p
    for l in range(1, lmax):
        p, p_prev = ((2 * l + 1) * t * p - l * p_prev) / (l + 1), p
        if weights[l + 1] != 0.0:
            acc += weights[l + 1] * p
    return acc


def legendre_table(lmax: int, x: np.ndarray) -> np.ndarray:
    """Normalized P~_{l,m}(x) for all 0 <= m <= l <= lmax.

    Returns an array of shape (n_pairs, len(x)) in (m, l) lexicographic
    order; use plm_index to locate a pair.  Intended for modest node counts
    (quadrature grids), not for large scattered point sets.
    """
    x = np.asarray(x, dtype=float)
    diag, a, b = _recurrence_coeffs(lmax)
    n_pairs = (lmax + 1) * (lmax + 2) // 2
    table = np.empty((n_pairs, x.size))
    s = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    idx = 0
    for m in range(lmax + 1):
        p_prev = np.zeros_like(x)
        p = diag[m] * s**m
        table[idx] = p
        idx += 1
        for l in range(m + 1, lmax + 1):
            p, p_prev = a[l, m] * x * p + b[l, m] * p_prev, p
            table[idx] = p
            idx += 1
    return table


def plm_index(l: int, m: int, lmax: int) -> int:
    """Row of (l, m) inside a legendre_table built with this lmax."""
    return m * (lmax + 1) - m * (m - 1) // 2 + (l - m)


def empty_alm(lmax: int) -> np.ndarray:
    return np.zeros((lmax + 1, 2 * lmax + 1))


def weighted_harmonic_sums(cos_theta: np.ndarray, phi: np.ndarray,
                           weights: np.ndarray, lmax: int) -> np.ndarray:
    """Sums_i W[i, q] Y_{l,m}(x_i) for every (l, m), one pass per order.

    weights has shape (n,) or (n, n_cols); the result has shape
    (n_cols, lmax+1, 2*lmax+1).  cos(m phi), sin(m phi) are advanced by the
    angle-addition recurrence, one multiply per point per order.
    """
    ct = np.asarray(cos_theta, dtype=float)
    ph = np.asarray(phi, dtype=float)
    w = np.asarray(weights, dtype=float)
    if w.ndim == 1:
        w = w[:, None]
    n_cols = w.shape[1]
    diag, a, b = _recurrence_coeffs(lmax)
    out = np.zeros((n_cols, lmax + 1, 2 * lmax + 1))
    s = np.sqrt(np.maximum(0.0, 1.0 - ct * ct))
    cos1, sin1 = np.cos(ph), np.sin(ph)
    cm = np.ones_like(ph)
    sm = np.zeros_like(ph)
    sm_pow = np.ones_like(ct)
    for m in range(lmax + 1):
        if m > 0:
            cm, sm = cm * cos1 - sm * sin1, sm * cos1 + cm * sin1
            sm_pow = sm_pow * s
        if m == 0:
            wc, ws = w, None
        else:
            wc = w * (SQRT2 * cm)[:, None]
            ws = w * (SQRT2 * sm)[:, None]
        p_prev = np.zeros_like(ct)
        p = diag[m] * sm_pow
        for l in range(m, lmax + 1):
            if l > m:
                p, p_prev = a[l, m] * ct * p + b[l, m] * p_prev, p
            out[:, l, lmax + m] += p @ wc
            if m > 0:
                out[:, l, lmax - m] += p @ ws
    return out


def harmonic_values(alm: np.ndarray, cos_theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Pointwise synthesis sum_{l,m} alm[l, m] Y_{l,m} at scattered points."""
    lmax = alm.shape[0] - 1
    ct = np.asarray(cos_theta, dtype=float)
    ph = np.asarray(phi, dtype=float)
    diag, a, b = _recurrence_coeffs(lmax)
    vals = np.zeros_like(ct)
    s = np.sqrt(np.maximum(0.0, 1.0 - ct * ct))
    cos1, sin1 = np.cos(ph), np.sin(ph)
    cm = np.ones_like(ph)
    sm = np.zeros_like(ph)
    sm_pow = np.ones_like(ct)
    for m in range(lmax + 1):
        if m > 0:
            cm, sm = cm * cos1 - sm * sin1, sm * cos1 + cm * sin1
            sm_pow = sm_pow * s
        col_c = alm[:, lmax + m]
        col_s = alm[:, lmax - m] if m > 0 else None
        if m > 0 and not np.any(col_c) and not np.any(col_s):
            continue
        g_c = np.zeros_like(ct)
        g_s = np.zeros_like(ct) if m > 0 else None
        p_prev = np.zeros_like(ct)
        p = diag[m] * sm_pow
        for l in range(m, lmax + 1):
            if l > m:
                p, p_prev = a[l, m] * ct * p + b[l, m] * p_prev, p
            if col_c[l] != 0.0:
                g_c += col_c[l] * p
            if m > 0 and col_s[l] != 0.0:
                g_s += col_s[l] * p
        if m == 0:
            vals += g_c
        else:
            vals += SQRT2 * (g_c * cm + g_s * sm)
    return vals
