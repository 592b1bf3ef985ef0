"""Charge models: symmetry group plus local irrep multiplicities.

Charges are stored as *doubled* integers (2q) so that half-integer spins and
magnetic numbers stay exact. All public text I/O prints physical values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping


class ModelValidationError(ValueError):
    pass


class UnknownModelError(ValueError):
    pass


class GroupKind(Enum):
    U1 = "U1"
    SU2 = "SU2"


@dataclass(frozen=True)
class ChargeModel:
    """A group kind and the multiplicity of each local irrep.

    ``multiplicities`` maps doubled local charge (2*m_loc for U1, 2*j_loc for
    SU2) to the number of copies of that irrep in the one-body space.
    """

    group: GroupKind
    multiplicities: tuple[tuple[int, int], ...]
    name: str | None = None

    def __init__(self, group, multiplicities, name=None):
        if isinstance(group, str):
            try:
                group = GroupKind[group]
            except KeyError:
                raise ModelValidationError(f"unknown group {group!r}; expected U1 or SU2")
        if isinstance(multiplicities, Mapping):
            items = tuple(sorted((int(q), int(a)) for q, a in multiplicities.items()))
        else:
            items = tuple(sorted((int(q), int(a)) for q, a in multiplicities))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "multiplicities", items)
        object.__setattr__(self, "name", name)
        self._validate()

    def _validate(self):
        if not self.multiplicities:
            raise ModelValidationError("multiplicity map must be non-empty")
        seen = set()
        for q2, a in self.multiplicities:
            if a < 1:
                raise ModelValidationError(f"multiplicity a[{q2}] = {a} must be >= 1")
            if q2 in seen:
                raise ModelValidationError(f"duplicate charge key {q2}")
            seen.add(q2)
            if self.group is GroupKind.SU2 and q2 < 0:
                raise ModelValidationError(f"SU2 local spin 2j = {q2} must be >= 0")
        if self.group is GroupKind.U1 and len(self.multiplicities) < 2:
            raise ModelValidationError("U1 model needs at least two distinct local charges")
        if self.local_dim < 2:
            raise ModelValidationError(f"local dimension k = {self.local_dim} must be >= 2")

    @property
    def local_dim(self) -> int:
        """Dimension k of the one-body Hilbert space."""
        if self.group is GroupKind.U1:
            return sum(a for _, a in self.multiplicities)
        return sum((j2 + 1) * a for j2, a in self.multiplicities)

    def as_dict(self) -> dict:
        """JSON-able echo used in config files and output metadata."""
        d = {
            "group": self.group.value,
            "multiplicities": {str(q2): a for q2, a in self.multiplicities},
        }
        if self.name is not None:
            d["name"] = self.name
        return d


@dataclass(frozen=True)
class SystemGeometry:
    """Bipartition of N bodies into N_A and N_B = N - N_A."""

    n_total: int
    n_a: int

    def __post_init__(self):
        if self.n_total < 1:
            raise ModelValidationError(f"n_total = {self.n_total} must be >= 1")
        if not 0 <= self.n_a <= self.n_total:
            raise ModelValidationError(f"n_a = {self.n_a} outside [0, {self.n_total}]")

    @property
    def n_b(self) -> int:
        return self.n_total - self.n_a

    @property
    def f(self) -> Fraction:
        """Subsystem fraction N_A / N as an exact rational."""
        return Fraction(self.n_a, self.n_total)

    @property
    def is_half(self) -> bool:
        # exact test; never compare the fraction in floating point
        return 2 * self.n_a == self.n_total


def weight_multiplicities(model: ChargeModel) -> dict[int, int]:
    """Fourier/weight coefficients of the local character, keyed by doubled weight.

    For U1 these are the multiplicities themselves. For SU2 each irrep j
    contributes its multiplicity to every magnetic weight m = -j ... +j.
    """
    weights: dict[int, int] = {}
    if model.group is GroupKind.U1:
        for m2, a in model.multiplicities:
            weights[m2] = weights.get(m2, 0) + a
    else:
        for j2, a in model.multiplicities:
            for m2 in range(-j2, j2 + 1, 2):
                weights[m2] = weights.get(m2, 0) + a
    return dict(sorted(weights.items()))


_CATALOG = {
    # name: (group, {doubled charge: multiplicity})
    "u1-qubit": (GroupKind.U1, {-1: 1, 1: 1}),
    "u1-qutrit": (GroupKind.U1, {-2: 1, 0: 1, 2: 1}),
    "u1-2bosons": (GroupKind.U1, {0: 1, 2: 2}),
    "su2-qubit": (GroupKind.SU2, {1: 1}),
    "su2-qutrit": (GroupKind.SU2, {2: 1}),
    "su2-trimer": (GroupKind.SU2, {1: 2, 3: 1}),
}


def catalog(name: str) -> ChargeModel:
    """Return one of the six builtin models by name."""
    try:
        group, mult = _CATALOG[name]
    except KeyError:
        valid = ", ".join(sorted(_CATALOG))
        raise UnknownModelError(f"unknown model {name!r}; valid names: {valid}")
    return ChargeModel(group, mult, name=name)


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def load_model(source) -> ChargeModel:
    """Build a ChargeModel from a config dict, JSON text, or a file path."""
    if isinstance(source, Mapping):
        doc = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
        else:
            with open(text, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
    if "group" not in doc or "multiplicities" not in doc:
        raise ModelValidationError("model config needs 'group' and 'multiplicities' fields")
    mult = {int(k): int(v) for k, v in doc["multiplicities"].items()}
    return ChargeModel(doc["group"], mult, name=doc.get("name"))


def charge_str(q2: int) -> str:
    """Physical (possibly half-integer) rendering of a doubled charge."""
    if q2 % 2 == 0:
        return str(q2 // 2)
    return f"{q2}/2"
