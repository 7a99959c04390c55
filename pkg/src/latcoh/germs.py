"""Weighted homogeneous hypersurface germs.

From ``(weights, degree)`` we enumerate the spectral numbers in ``(0, 1)``,
build the reduced rank-one Hilbert function and weight table on
``[0, d + 1 - Σ w_i]`` and run the lattice machinery on it.  The defining
polynomial is assumed to have an isolated singularity; that is not checked.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .cohomology import GradedModuleSummary, compute_summary, euler_characteristic
from .errors import DomainError, InvariantError, UnsupportedGermError
from .lattice import LatticeTable, Rectangle, WeightModel
from .roots import GradedRoot, build_root, root_module


@dataclass(frozen=True)
class WeightedHomogeneousGerm:
    weights: tuple[int, ...]
    degree: int

    def __post_init__(self):
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) < 2:
            raise DomainError("need at least two variables")
        if any(w <= 0 for w in weights) or self.degree <= 0:
            raise DomainError(f"weights and degree must be positive: {weights}, {self.degree}")
        if math.gcd(*weights) != 1:
            raise DomainError(f"weights {weights} are not coprime")
        if any(w > self.degree for w in weights):
            raise DomainError(f"weight exceeds degree {self.degree}: {weights}")

    @classmethod
    def brieskorn(cls, exponents: Sequence[int]) -> "WeightedHomogeneousGerm":
        """Germ of ``z_0^a_0 + ... + z_n^a_n``: ``d = lcm(a)``, ``w_i = d / a_i``."""
        if any(a < 2 for a in exponents):
            raise DomainError(f"Brieskorn exponents must be >= 2: {exponents}")
        d = math.lcm(*exponents)
        return cls(tuple(d // a for a in exponents), d)

    @property
    def reduced_corner(self) -> int:
        """``d + 1 - Σ w_i`` (the length of the reduced rectangle)."""
        return self.degree + 1 - sum(self.weights)

    def milnor_number(self) -> Fraction:
        """``Π (d - w_i) / w_i``; an integer for isolated singularities."""
        return math.prod((Fraction(self.degree - w, w) for w in self.weights), start=Fraction(1))


@dataclass(frozen=True)
class SpectrumSlice:
    """Spectral numbers in ``(0, 1)`` as a sorted tuple of exact fractions."""

    values: tuple[Fraction, ...]

    @property
    def p_g(self) -> int:
        return len(self.values)

    def as_strings(self) -> list[str]:
        return [f"{a.numerator}/{a.denominator}" for a in self.values]


def _under_hyperplane(weights: Sequence[int], bound: int):
    """Points ``k >= 0`` with ``Σ (k_i + 1) w_i <= bound``, with that sum."""

    def rec(i, used, prefix):
        if i == len(weights):
            yield tuple(prefix), used
            return
        k = 0
        while used + (k + 1) * weights[i] + sum(weights[i + 1:]) <= bound:
            prefix.append(k)
            yield from rec(i + 1, used + (k + 1) * weights[i], prefix)
            prefix.pop()
            k += 1

    yield from rec(0, 0, [])


def spectrum_unit_interval(germ: WeightedHomogeneousGerm) -> SpectrumSlice:
    """Enumerate ``α = Σ (k_i + 1) w_i / d < 1``; refuse if some ``α = 1``."""
    d = germ.degree
    values = []
    for k, total in _under_hyperplane(germ.weights, d):
        if total == d:
            raise UnsupportedGermError(
                f"lattice point {k} lies on the weight hyperplane: spectral number 1"
            )
        values.append(Fraction(total, d))
    return SpectrumSlice(tuple(sorted(values)))


def reduced_hilbert(germ: WeightedHomogeneousGerm, spectrum: SpectrumSlice | None = None) -> LatticeTable:
    """``h(l) = #{α : α < (l + Σ w_i) / d}`` on ``[0, max(0, d + 1 - Σ w_i)]``."""
    spec = spectrum if spectrum is not None else spectrum_unit_interval(germ)
    s = sum(germ.weights)
    rect = Rectangle((max(germ.reduced_corner, 0),))
    return LatticeTable.from_function(
        rect, lambda l: sum(1 for a in spec.values if a < Fraction(l[0] + s, germ.degree))
    )


def reduced_weight(germ: WeightedHomogeneousGerm, spectrum: SpectrumSlice | None = None) -> WeightModel:
    """``w(l) = h(l) + h(Z - l) - p_g`` with ``Z = d + 1 - Σ w_i``."""
    spec = spectrum if spectrum is not None else spectrum_unit_interval(germ)
    h = reduced_hilbert(germ, spec)
    top = h.rect.upper[0]
    return WeightModel(h.rect, tuple(h[(l,)] + h[(top - l,)] - spec.p_g for l in range(top + 1)))


@dataclass(frozen=True)
class AnalyticInvariants:
    germ: WeightedHomogeneousGerm
    spectrum: SpectrumSlice
    hilbert: LatticeTable
    model: WeightModel
    summary: GradedModuleSummary
    root: GradedRoot
    eu: int

    @property
    def p_g(self) -> int:
        return self.spectrum.p_g

    def to_dict(self) -> dict[str, Any]:
        return {
            "weights": list(self.germ.weights),
            "degree": self.germ.degree,
            "spectrum": self.spectrum.as_strings(),
            "p_g": self.p_g,
            "reduced_corner": self.germ.reduced_corner,
            "hilbert": list(self.hilbert.values),
            "weight": list(self.model.values),
            "eu": self.eu,
            "module": root_module(self.root).describe(),
        }


def analytic_invariants(germ: WeightedHomogeneousGerm) -> AnalyticInvariants:
    spec = spectrum_unit_interval(germ)
    h = reduced_hilbert(germ, spec)
    if h.values[-1] != spec.p_g:
        raise InvariantError(f"h at the corner is {h.values[-1]}, expected p_g={spec.p_g}")
    model = reduced_weight(germ, spec)
    summary = compute_summary(model)
    if any(any(lv.betti[1:]) for lv in summary.levels):
        raise InvariantError("rank-one lattice produced higher cohomology")
    eu = euler_characteristic(summary)
    if eu != spec.p_g:
        raise InvariantError(f"eu={eu} differs from p_g={spec.p_g}")
    return AnalyticInvariants(germ, spec, h, model, summary, build_root(model), eu)


# ---------------------------------------------------------------- oracles

def brieskorn_spectrum(exponents: Sequence[int]) -> list[Fraction]:
    """Full Brieskorn spectrum ``{Σ j_i / a_i : 1 <= j_i <= a_i - 1}``."""
    ranges = [[Fraction(j, a) for j in range(1, a)] for a in exponents]
    return sorted(sum(combo, Fraction(0)) for combo in itertools.product(*ranges))


def brieskorn_spectrum_oracle(exponents: Sequence[int]) -> SpectrumSlice:
    if any(a < 2 for a in exponents):
        raise DomainError(f"Brieskorn exponents must be >= 2: {exponents}")
    return SpectrumSlice(tuple(a for a in brieskorn_spectrum(exponents) if a < 1))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def spectrum_product_formula(germ: WeightedHomogeneousGerm) -> list[Fraction]:
    """Full spectrum from ``Π (u^w_i - u^d) / (1 - u^w_i)`` with ``u = t^(1/d)``.

    The quotient is computed by exact polynomial division; a remainder means
    the data cannot come from an isolated singularity.
    """
    d = germ.degree
    num = [1]
    den = [1]
    for w in germ.weights:
        factor = [0] * (d + 1)
        factor[w] += 1
        factor[d] -= 1
        num = _poly_mul(num, factor)
        den = _poly_mul(den, [1] + [0] * (w - 1) + [-1])
    # den has constant term 1, so long division from the bottom is exact in Z
    quotient = [0] * (len(num) - len(den) + 1) if len(num) >= len(den) else []
    rem = num[:]
    for i in range(len(quotient)):
        coef = rem[i]
        quotient[i] = coef
        if coef:
            for j, y in enumerate(den):
                rem[i + j] -= coef * y
    if any(rem):
        raise DomainError(f"{germ} does not give a polynomial spectrum")
    out = []
    for e, mult in enumerate(quotient):
        if mult < 0:
            raise DomainError(f"negative spectral multiplicity at exponent {e}/{d}")
        out.extend([Fraction(e, d)] * mult)
    return out
