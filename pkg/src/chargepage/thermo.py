"""Local thermodynamics of the one-body charge distribution.

Everything here is a property of the one-body spectrum: the Gibbs
distribution over local weights, the inverse temperature beta*(s) that fixes
the mean charge to s, the local entropy eta(s), its derivatives, the heat
capacity c*(s), and the group prefactor alpha0(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .models import ChargeModel, GroupKind, catalog, weight_multiplicities

#: half-width excluded at each end of the density interval; beta* diverges there
BOUNDARY_EPS = 1e-9

_BISECT_WIDTH = 1e-13


class DensityDomainError(ValueError):
    pass


class DegenerateModelError(ValueError):
    pass


@dataclass(frozen=True)
class ChargeDistribution:
    """Gibbs distribution over local weights, keyed by doubled weight."""

    probs: dict[int, float]
    beta: float

    def mean(self) -> float:
        return math.fsum(0.5 * m2 * p for m2, p in self.probs.items())

    def variance(self) -> float:
        mu = self.mean()
        return math.fsum(p * (0.5 * m2 - mu) ** 2 for m2, p in self.probs.items())


@dataclass(frozen=True)
class ThermoPoint:
    """Local thermodynamic data at one charge density s."""

    s: float
    beta_star: float
    eta: float
    eta_pp: float
    c_star: float
    alpha0: float


def _weight_items(model: ChargeModel) -> list[tuple[float, int]]:
    """(physical weight, multiplicity) pairs, ascending in weight."""
    return [(0.5 * m2, a) for m2, a in sorted(weight_multiplicities(model).items())]


def gibbs(model: ChargeModel, beta: float) -> ChargeDistribution:
    """Max-entropy distribution p(m) ~ a_m exp(-beta m) over local weights.

    Overflow-safe for any finite beta via max-weight rescaling.
    """
    if not math.isfinite(beta):
        raise ValueError(f"beta = {beta} must be finite")
    weights = weight_multiplicities(model)
    shift = max(-beta * 0.5 * m2 for m2 in weights)
    raw = {m2: a * math.exp(-beta * 0.5 * m2 - shift) for m2, a in weights.items()}
    z = math.fsum(raw.values())
    return ChargeDistribution({m2: r / z for m2, r in raw.items()}, beta)


def _log_partition(model: ChargeModel, beta: float) -> float:
    weights = weight_multiplicities(model)
    shift = max(-beta * 0.5 * m2 for m2 in weights)
    s = math.fsum(a * math.exp(-beta * 0.5 * m2 - shift) for m2, a in weights.items())
    return shift + math.log(s)


def density_interval(model: ChargeModel) -> tuple[float, float]:
    """Open interval of charge densities reachable at finite temperature."""
    weights = sorted(weight_multiplicities(model))
    return 0.5 * weights[0], 0.5 * weights[-1]


def infinite_temperature_density(model: ChargeModel) -> float:
    """Mean charge at beta = 0: the density where eta'(s) vanishes."""
    weights = weight_multiplicities(model)
    k = sum(weights.values())
    return sum(0.5 * m2 * a for m2, a in weights.items()) / k


def solve_beta_star(model: ChargeModel, s: float) -> float:
    """Inverse temperature with mean local charge s.

    Bisection on the strictly decreasing mean-charge function, on a bracket
    expanded from [-1, 1] by doubling. Robust arbitrarily close to the
    boundary, where Newton iterations would overshoot.
    """
    lo_w, hi_w = density_interval(model)
    if hi_w - lo_w == 0:
        raise DegenerateModelError(
            "weight support is a single point; mean charge cannot be tuned"
        )
    if not (lo_w + BOUNDARY_EPS <= s <= hi_w - BOUNDARY_EPS):
        raise DensityDomainError(
            f"s = {s} outside open density interval ({lo_w}, {hi_w}); beta* diverges"
        )

    def mean_at(beta: float) -> float:
        return gibbs(model, beta).mean()

    lo, hi = -1.0, 1.0
    while mean_at(lo) < s:
        lo *= 2.0
    while mean_at(hi) > s:
        hi *= 2.0
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mean_at(mid) > s:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def thermo_point(model: ChargeModel, s: float) -> ThermoPoint:
    """Solve for beta*(s) and assemble the local thermodynamics at s.

    eta is evaluated both as log k minus the relative entropy to the
    infinite-temperature distribution and as log Z + beta*s; the two routes
    must agree to near machine precision.
    """
    beta = solve_beta_star(model, s)
    dist = gibbs(model, beta)
    weights = weight_multiplicities(model)
    k = model.local_dim

    # route (a): log(k) - KL(p_beta || p_0), summed weight by weight
    kl = math.fsum(
        p * math.log(p * k / weights[m2]) for m2, p in dist.probs.items() if p > 0
    )
    eta_kl = math.log(k) - kl
    # route (b): Legendre form log Z(beta) + beta * s
    eta_legendre = _log_partition(model, beta) + beta * s
    if abs(eta_kl - eta_legendre) > 1e-10 * max(1.0, abs(eta_legendre)):
        raise RuntimeError(
            f"eta routes disagree: KL form {eta_kl} vs Legendre form {eta_legendre}"
        )

    var = dist.variance()
    eta_pp = -1.0 / var  # exact identity: eta'' = -1/Var(mu) at beta*
    c_star = beta * beta * var
    alpha0 = 1.0 if model.group is GroupKind.U1 else 1.0 - math.exp(beta)
    return ThermoPoint(s=s, beta_star=beta, eta=eta_legendre, eta_pp=eta_pp,
                       c_star=c_star, alpha0=alpha0)


# ---------------------------------------------------------------------------
# Closed-form golden references for the six builtin models. These are a
# deliberately independent code path: no root solver, no Gibbs sums.

def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def _qubit_forms(s: float) -> tuple[float, float, float, float]:
    eta = -_xlogx((1 - 2 * s) / 2) - _xlogx((1 + 2 * s) / 2)
    beta = math.log((1 - 2 * s) / (1 + 2 * s))
    c = (0.25 - s * s) * beta * beta
    eta_pp = -1.0 / (0.25 - s * s)
    return eta, beta, c, eta_pp


def _qutrit_forms(s: float) -> tuple[float, float, float, float]:
    r = math.sqrt(4 - 3 * s * s)
    eta = (-_xlogx((4 - 3 * s - r) / 6)
           - _xlogx((-1 + r) / 3)
           - _xlogx((4 + 3 * s - r) / 6))
    beta = math.log((-s + r) / (2 * (1 + s)))
    c = (r * (r - 1) / 12) * math.log((4 + 3 * s - r) / (4 - 3 * s - r)) ** 2
    eta_pp = -3.0 / (r * (r - 1))
    return eta, beta, c, eta_pp


def _twobosons_forms(s: float) -> tuple[float, float, float, float]:
    eta = math.log(3) - (1 - s) * math.log(3 * (1 - s)) - s * math.log(1.5 * s)
    beta = math.log((2 - 2 * s) / s)
    c = s * (1 - s) * beta * beta
    eta_pp = -1.0 / (s * (1 - s))
    return eta, beta, c, eta_pp


def _trimer_forms(s: float) -> tuple[float, float, float, float]:
    eta = -(3 - 2 * s) / 2 * math.log((3 - 2 * s) / 6) \
        - (3 + 2 * s) / 2 * math.log((3 + 2 * s) / 6)
    beta = math.log((3 - 2 * s) / (3 + 2 * s))
    c = (0.75 - s * s / 3) * beta * beta
    eta_pp = -1.0 / (0.75 - s * s / 3)
    return eta, beta, c, eta_pp


def catalog_closed_forms(name: str, s: float) -> ThermoPoint:
    """Closed-form ThermoPoint for a builtin model at density s."""
    model = catalog(name)  # raises UnknownModelError for bad names
    lo, hi = density_interval(model)
    if not (lo + BOUNDARY_EPS <= s <= hi - BOUNDARY_EPS):
        raise DensityDomainError(
            f"s = {s} outside open density interval ({lo}, {hi}); beta* diverges"
        )
    if name in ("u1-qubit", "su2-qubit"):
        eta, beta, c, eta_pp = _qubit_forms(s)
    elif name in ("u1-qutrit", "su2-qutrit"):
        eta, beta, c, eta_pp = _qutrit_forms(s)
    elif name == "u1-2bosons":
        eta, beta, c, eta_pp = _twobosons_forms(s)
    else:
        eta, beta, c, eta_pp = _trimer_forms(s)

    if model.group is GroupKind.U1:
        alpha0 = 1.0
    elif name == "su2-qubit":
        alpha0 = 4 * s / (1 + 2 * s)
    elif name == "su2-qutrit":
        r = math.sqrt(4 - 3 * s * s)
        alpha0 = (2 + 3 * s - r) / (2 * (1 + s))
    else:  # su2-trimer
        alpha0 = 4 * s / (3 + 2 * s)
    return ThermoPoint(s=s, beta_star=beta, eta=eta, eta_pp=eta_pp,
                       c_star=c, alpha0=alpha0)
