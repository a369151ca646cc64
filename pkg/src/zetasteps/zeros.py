"""Gram points, Z sign-change scanning, zero refinement and statistics.

The scan walks Gram intervals with the fast first-order rs_z; brackets are
refined by guarded bisection (with secant acceleration) and then polished
against the reference oracle so every reported ordinate is a true zero of
zeta(1/2 + it) to the requested tolerance.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .evaluators import rs_z, z_reference
from .symmetry import TWOPI, rs_theta
from .steps import Argument

_GRAM_TOL = 1e-10
_GRAM_MAX_ITER = 50
_T_SCAN_FLOOR = 10.0


@dataclass(frozen=True)
class GramPoint:
    index: int
    t: float


@dataclass(frozen=True)
class ZeroRecord:
    ordinal: int
    t: float
    bracket: Tuple[float, float]
    gram_index: int
    scaled_offset: float


@lru_cache(maxsize=100_000)
def gram_point(N: int) -> GramPoint:
    """The ordinate g_N with theta_RS(g_N) = N*pi, by Newton iteration."""
    if N < 0:
        raise DomainError(f"Gram index must be >= 0, got {N}")
    target = N * math.pi
    # Seed: solve u*(log u - 1) = N + 1/8 for u = t/2pi by Newton on the
    # smooth main term, then polish on the full series.
    u = max(3.0, float(N))
    for _ in range(30):
        g = u * (math.log(u) - 1.0) - (N + 0.125)
        du = g / math.log(u)
        u -= du
        u = max(u, 2.8)
        if abs(du) < 1e-12 * u:
            break
    t = TWOPI * u
    for _ in range(_GRAM_MAX_ITER):
        resid = rs_theta(t) - target
        if abs(resid) < _GRAM_TOL:
            return GramPoint(index=N, t=t)
        deriv = 0.5 * math.log(t / TWOPI)
        t -= resid / deriv
        if t < 17.1:
            t = 17.1  # stay on the increasing branch
    raise ConvergenceError(f"gram_point({N}) did not converge")


def zero_count_main(T: float) -> float:
    """Smooth main term of the zero-counting function: theta_RS(T)/pi + 1."""
    return rs_theta(T) / math.pi + 1.0


def _gram_index_below(t: float) -> int:
    """Largest N with g_N <= t (clamped at -1 for t below g_0)."""
    if t < gram_point(0).t:
        return -1
    n = int(math.floor(rs_theta(t) / math.pi))
    while gram_point(n).t > t:
        n -= 1
    while gram_point(n + 1).t <= t:
        n += 1
    return n


def _brackets_on_grid(grid: np.ndarray, values: Sequence[float]):
    out = []
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            out.append((float(grid[i]), float(grid[i])))
        elif values[i] * values[i + 1] < 0.0:
            out.append((float(grid[i]), float(grid[i + 1])))
    return out


def scan_z_sign_changes(
    t_lo: float,
    t_hi: float,
    subdivisions_per_gram: int = 8,
    z: Callable[[float], float] = rs_z,
) -> List[Tuple[float, float]]:
    """Sign-change brackets of Z on a per-Gram-interval grid.

    A Gram interval whose running count falls >= 2 behind the smooth
    estimate is re-scanned at 4x density (close pairs, Gram-law breaks).
    """
    if t_lo < TWOPI:
        raise DomainError(f"scan needs t_lo >= 2*pi, got {t_lo}")
    if subdivisions_per_gram < 4:
        raise DomainError("subdivisions_per_gram must be >= 4")
    if t_hi <= t_lo:
        return []
    edges = [t_lo]
    n = _gram_index_below(t_lo)
    while True:
        n += 1
        g = gram_point(max(n, 0)).t if n >= 0 else None
        if g is None or g <= edges[-1]:
            continue
        if g >= t_hi:
            break
        edges.append(g)
    edges.append(t_hi)
    brackets: List[Tuple[float, float]] = []
    found = 0
    base = zero_count_main(max(t_lo, _T_SCAN_FLOOR + 5.0))
    for lo, hi in zip(edges[:-1], edges[1:]):
        grid = np.linspace(lo, hi, subdivisions_per_gram + 1)
        vals = [z(float(x)) for x in grid]
        got = _brackets_on_grid(grid, vals)
        expected = (zero_count_main(hi) - base) if hi > 10.5 else 0.0
        if (found + len(got)) - expected <= -2.0:
            grid = np.linspace(lo, hi, 4 * subdivisions_per_gram + 1)
            vals = [z(float(x)) for x in grid]
            got = _brackets_on_grid(grid, vals)
        brackets.extend(got)
        found += len(got)
    return brackets


def refine_zero(
    bracket: Tuple[float, float],
    tol: float,
    z: Callable[[float], float] = rs_z,
    ordinal: int = 0,
) -> ZeroRecord:
    """Shrink a sign-change bracket below tol; bisection with secant steps,
    bracketing maintained throughout."""
    if tol < 1e-10:
        raise DomainError("tol must be >= 1e-10")
    lo, hi = bracket
    if hi < lo:
        raise DomainError("bracket endpoints out of order")
    if hi - lo <= tol:
        t = 0.5 * (lo + hi)
        return _make_record(ordinal, t, (lo, hi))
    f_lo = z(lo)
    f_hi = z(hi)
    if f_lo == 0.0:
        return _make_record(ordinal, lo, (lo, lo))
    if f_hi == 0.0:
        return _make_record(ordinal, hi, (hi, hi))
    if f_lo * f_hi > 0.0:
        raise DomainError("Z does not change sign across the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f_hi != f_lo:
            sec = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
            if lo + 0.1 * (hi - lo) < sec < hi - 0.1 * (hi - lo):
                mid = sec
        f_mid = z(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if f_lo * f_mid < 0.0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    t = 0.5 * (lo + hi)
    return _make_record(ordinal, t, (lo, hi))


def _make_record(ordinal: int, t: float, bracket: Tuple[float, float]) -> ZeroRecord:
    idx = _gram_index_below(t)
    if idx < 0:
        return ZeroRecord(ordinal, t, bracket, -1, math.nan)
    g0 = gram_point(idx).t
    g1 = gram_point(idx + 1).t
    offset = (t - 0.5 * (g0 + g1)) / (0.5 * (g1 - g0))
    return ZeroRecord(ordinal, t, bracket, idx, offset)


def _polish_with_oracle(rec: ZeroRecord, tol: float) -> ZeroRecord:
    """Move an rs_z zero onto the oracle Z; widens the bracket until the
    oracle changes sign, then refines on it."""
    h = max(4.0 * tol, 1e-4)
    t = rec.t
    for _ in range(18):
        lo, hi = t - h, t + h
        f_lo = z_reference(lo)
        f_hi = z_reference(hi)
        if f_lo * f_hi < 0.0:
            polished = refine_zero((lo, hi), tol, z=z_reference, ordinal=rec.ordinal)
            return polished
        h *= 2.0
        if h > 1.0:
            break
    raise ConvergenceError(f"oracle polish failed near t = {rec.t}")


def find_zeros(
    t_lo: float,
    t_hi: float,
    tol: float = 1e-8,
    subdivisions_per_gram: int = 8,
    polish: bool = True,
    certify: bool = False,
    workers: int = 1,
    ordinal_offset: Optional[int] = None,
) -> List[ZeroRecord]:
    """Scan, refine and (by default) oracle-polish all zeros in [t_lo, t_hi].

    Chunks are Gram-aligned and merged by ordinate, so the result does not
    depend on the worker count.  certify=True additionally checks
    |zeta(1/2 + it)| < 1e-5 at every polished ordinate.
    """
    t_lo = max(t_lo, _T_SCAN_FLOOR)
    if ordinal_offset is None:
        ordinal_offset = (
            0 if t_lo <= 14.0 else max(0, int(round(zero_count_main(t_lo))))
        )
    chunks = _gram_aligned_chunks(t_lo, t_hi, workers)

    def scan_chunk(chunk):
        lo, hi = chunk
        return scan_z_sign_changes(lo, hi, subdivisions_per_gram)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_chunk = list(pool.map(scan_chunk, chunks))
    else:
        per_chunk = [scan_chunk(c) for c in chunks]
    brackets = sorted({b for chunk in per_chunk for b in chunk})

    def refine_one(item):
        i, bracket = item
        rec = refine_zero(bracket, tol, ordinal=ordinal_offset + i + 1)
        if polish:
            rec = _polish_with_oracle(rec, tol)
        return rec

    items = list(enumerate(brackets))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(refine_one, items))
    else:
        records = [refine_one(it) for it in items]
    records.sort(key=lambda r: r.t)
    deduped: List[ZeroRecord] = []
    for rec in records:
        if deduped and rec.t - deduped[-1].t <= 10.0 * tol:
            continue
        deduped.append(rec)
    records = [
        ZeroRecord(ordinal_offset + i + 1, r.t, r.bracket, r.gram_index, r.scaled_offset)
        for i, r in enumerate(deduped)
    ]
    if certify:
        from .evaluators import eval_reference

        for rec in records:
            resid = abs(eval_reference(Argument(0.5, rec.t)).value)
            if resid >= 1e-5:
                raise ConvergenceError(
                    f"zero at t={rec.t} failed certification (|zeta| = {resid:g})"
                )
    return records


def _gram_aligned_chunks(t_lo: float, t_hi: float, workers: int):
    if workers <= 1 or t_hi - t_lo < 50.0:
        return [(t_lo, t_hi)]
    n_chunks = min(workers * 4, max(2, int((t_hi - t_lo) / 25.0)))
    lo_idx = _gram_index_below(t_lo)
    hi_idx = _gram_index_below(t_hi)
    if hi_idx - lo_idx < 2 * n_chunks:
        return [(t_lo, t_hi)]
    cuts = [t_lo]
    for k in range(1, n_chunks):
        idx = lo_idx + (hi_idx - lo_idx) * k // n_chunks
        cuts.append(gram_point(max(idx, 0)).t)
    cuts.append(t_hi)
    return [(a, b) for a, b in zip(cuts[:-1], cuts[1:]) if b > a]


def gram_offsets(zeros: Sequence[ZeroRecord]) -> List[float]:
    """Scaled displacements from Gram-interval midpoints (NaN entries from
    pre-Gram ordinates are dropped)."""
    return [z.scaled_offset for z in zeros if not math.isnan(z.scaled_offset)]


def histogram(values: Sequence[float], bins: int):
    """Equal-width histogram over [-max|v|, +max|v|]; (centers, counts)."""
    if bins < 1:
        raise DomainError("bins must be >= 1")
    vals = np.asarray(list(values), dtype=float)
    if len(vals) == 0:
        return np.zeros(bins), np.zeros(bins, dtype=int)
    vmax = float(np.max(np.abs(vals)))
    if vmax == 0.0:
        vmax = 1.0
    counts, edges = np.histogram(vals, bins=bins, range=(-vmax, vmax))
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, counts
