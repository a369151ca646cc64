"""The symmetry frame of a step plot.

For a given ordinate t this module knows where the pendant sits (n_p, p),
the Riemann-Siegel theta phase, the symmetry factor Q(s), the pendant
center offset L, the self-conjugate center P(s), and the conjugate-region
decomposition of the steps beyond n_p.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache
from typing import NamedTuple

from .ddmath import PI_DEC, TWOPI_DEC, TWOPI
from .errors import DomainError
from .steps import Argument, partial_sum, reduced_phase

DEGENERATE_COS_EPS = 1e-3
_SNAP = 32 * 2.220446049250313e-16  # integer-sqrt snap, ~32 ulp relative

THETA_T_MIN = 10.0
_THETA_PREC = 44


@dataclass(frozen=True)
class SymmetryFrame:
    """Derived quantities of one ordinate t."""

    t: float
    n_p: int
    p: float
    theta_rs: float
    degenerate_p: bool

    @property
    def Theta(self) -> float:
        # The paper's half phase-sum; step angles are negative, hence the sign.
        return -self.theta_rs

    def q_magnitude(self, sigma: float, variant: str = "continuous") -> float:
        if variant == "continuous":
            return (self.t / TWOPI) ** (0.5 - sigma)
        if variant == "discrete":
            return float(self.n_p) ** (1.0 - 2.0 * sigma)
        raise ValueError(f"unknown Q variant {variant!r}")


@dataclass(frozen=True)
class ConjugateRegion:
    n: int
    N_lo: int
    N_center: int
    N_hi: int

    @property
    def width(self) -> int:
        return self.N_hi - self.N_lo + 1


class PredictedSum(NamedTuple):
    value: complex
    accuracy_unguaranteed: bool


@lru_cache(maxsize=100_000)
def _theta_dec(t: float) -> Decimal:
    """Riemann-Siegel theta as a 44-digit Decimal (asymptotic series)."""
    with localcontext() as ctx:
        ctx.prec = _THETA_PREC
        td = Decimal(t)
        half = td / 2
        series = half * (td / TWOPI_DEC).ln() - half - PI_DEC / 8
        series += 1 / (48 * td) + 7 / (5760 * td * td * td)
        return +series


def rs_theta(t: float) -> float:
    """theta_RS(t) = (t/2)log(t/2pi) - t/2 - pi/8 + 1/48t + 7/5760t^3."""
    if t < THETA_T_MIN:
        raise DomainError(f"rs_theta needs t >= {THETA_T_MIN}, got {t}")
    return float(_theta_dec(t))


def rs_theta_mod(t: float) -> float:
    """theta_RS(t) reduced into [0, 2*pi), accurate to the last few ulps."""
    if t < THETA_T_MIN:
        raise DomainError(f"rs_theta needs t >= {THETA_T_MIN}, got {t}")
    return _theta_mod_unchecked(t)


def _theta_mod_unchecked(t: float) -> float:
    with localcontext() as ctx:
        ctx.prec = _THETA_PREC
        m = _theta_dec(t) % TWOPI_DEC
        if m < 0:
            m += TWOPI_DEC
        return float(m)


def sqrt_t_over_twopi(t: float) -> float:
    """sqrt(t/2pi), snapped to an integer when within a few ulps.

    The snap keeps n_p/p stable at arguments constructed as 2*pi*k**2,
    where bare floating point could land infinitesimally below the integer.
    """
    r = math.sqrt(t / TWOPI)
    rn = round(r)
    if rn >= 1 and abs(r - rn) <= _SNAP * max(r, 1.0):
        return float(rn)
    return r


def frame_of(t: float) -> SymmetryFrame:
    """n_p, p, theta_RS and the degeneracy flag for one ordinate."""
    if t < TWOPI:
        raise DomainError(f"frame_of needs t >= 2*pi, got {t}")
    r = sqrt_t_over_twopi(t)
    n_p = int(math.floor(r))
    p = r - n_p
    theta = float(_theta_dec(t))
    degenerate = abs(math.cos(TWOPI * p)) < DEGENERATE_COS_EPS
    return SymmetryFrame(t=t, n_p=n_p, p=p, theta_rs=theta, degenerate_p=degenerate)


def big_q(s: Argument, variant: str = "continuous") -> complex:
    """The symmetry factor Q(s) = |Q| * exp(2i*Theta).

    Magnitude (t/2pi)**(1/2-sigma) for the continuous variant (default) or
    n_p**(1-2*sigma) for the discrete one used in conjugate-region checks.
    """
    t = s.t
    if t < TWOPI:
        raise DomainError(f"big_q needs t >= 2*pi, got {t}")
    frame = frame_of(t)
    mag = frame.q_magnitude(s.sigma, variant)
    with localcontext() as ctx:
        ctx.prec = _THETA_PREC
        ph = (-2 * _theta_dec(t)) % TWOPI_DEC
        if ph < 0:
            ph += TWOPI_DEC
        phase = float(ph)
    return mag * complex(math.cos(phase), math.sin(phase))


def pendant_offset(s: Argument) -> complex:
    """The lateral offset L from the half sum to the pendant center.

    Near p = 1/4, 3/4 the magnitude blows up along the symmetry axis; the
    condition is reported through frame_of(t).degenerate_p rather than an
    exception.
    """
    if s.t < 0.0:
        return pendant_offset(Argument(s.sigma, -s.t)).conjugate()
    frame = frame_of(s.t)
    phi = reduced_phase(s.t, frame.n_p) if frame.n_p > 1 else 0.0
    c = math.cos(TWOPI * frame.p)
    mag = float(frame.n_p) ** (-s.sigma) / (2.0 * c)
    ang = phi - TWOPI * frame.p
    return -mag * cmath.exp(1j * ang)


def center_point(s: Argument) -> complex:
    """P(s): the half sum to n_p plus the pendant offset."""
    if s.t < 0.0:
        return center_point(Argument(s.sigma, -s.t)).conjugate()
    frame = frame_of(s.t)
    return partial_sum(1, frame.n_p, s) + pendant_offset(s)


def conj_region(n: int, t: float) -> ConjugateRegion:
    """Steps whose first angle differences bracket the n-th odd multiple
    of pi; their sum mirrors the single step n."""
    frame = frame_of(t)
    if n < 1 or n > frame.n_p:
        raise DomainError(f"conjugate region index must be in [1, {frame.n_p}]")
    n_lo = int(math.floor(t / (TWOPI * (n + 0.5)))) + 1
    n_hi = int(math.floor(t / math.pi))
    if n > 1:
        n_hi = min(int(math.floor(t / (TWOPI * (n - 0.5)))), n_hi)
    n_center = int(round(t / (TWOPI * n)))
    return ConjugateRegion(n=n, N_lo=n_lo, N_center=n_center, N_hi=n_hi)


def conj_sum_direct(n: int, s: Argument) -> complex:
    region = conj_region(n, s.t)
    return partial_sum(region.N_lo, region.N_hi, s)


def conj_sum_predicted(n: int, s: Argument) -> PredictedSum:
    """First-order Cornu-spiral prediction for the conjugate-region sum.

    Magnitude n_p**(1-2*sigma) * n**(sigma-1); phase twice the center-step
    angle minus pi/4.  Reliable for n well below n_p; beyond n_p/4 the
    value is still produced but flagged.
    """
    frame = frame_of(s.t)
    region = conj_region(n, s.t)
    phi_n = reduced_phase(s.t, n) if n > 1 else 0.0
    phi_c = reduced_phase(s.t, region.N_center)
    mag = float(frame.n_p) ** (1.0 - 2.0 * s.sigma) * float(n) ** (s.sigma - 1.0)
    ang = 2.0 * phi_c - phi_n - 0.25 * math.pi
    value = mag * cmath.exp(1j * ang)
    return PredictedSum(value, accuracy_unguaranteed=(n > frame.n_p / 4))


def jacobi_g(u: complex) -> complex:
    """Truncated Jacobi theta sum G(u) = sum over n of exp(-pi n^2 u^2)."""
    u = complex(u)
    w = u * u
    if w.real <= 0.0:
        raise DomainError("jacobi_g needs Re(u^2) > 0 for convergence")
    # first omitted term below 1e-16: exp(-pi M^2 Re(w)) < 1e-16
    m_max = int(math.ceil(math.sqrt(36.9 / (math.pi * w.real)))) + 1
    total = complex(1.0, 0.0)
    for n in range(1, m_max + 1):
        total += 2.0 * cmath.exp(-math.pi * n * n * w)
    return total
