"""Boundary stratification and generating functions of point counts.

The moduli of n points on a curve relative to ell marked points is
stratified by the interior length m together with, per marking, the
ordered lengths of support along the chain of bubbles.  Summing the
classes of these strata in the Grothendieck ring gives an independent
oracle for the closed-form generating function

    Z_C(t) * ((1 - L*t)(1 - t) / (1 - (L+1)*t))^ell,

and for its Euler, Hodge-Deligne and Poincare specializations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from .poly import MultiPoly, TruncSeries, ZERO

Composition = Tuple[int, ...]


class ProfileError(ValueError):
    """Invalid stratum profile."""


@dataclass(frozen=True)
class StratumProfile:
    """Interior length plus one composition of bubble supports per marking."""

    m: int
    nu: Tuple[Composition, ...]

    def __post_init__(self):
        if self.m < 0:
            raise ProfileError("interior length must be non-negative")
        for comp in self.nu:
            if any(part < 1 for part in comp):
                raise ProfileError("every bubble must support positive length")

    @property
    def total(self) -> int:
        return self.m + sum(sum(comp) for comp in self.nu)

    @property
    def codimension(self) -> int:
        return sum(len(comp) for comp in self.nu)

    def __str__(self) -> str:
        comps = ";".join("(" + ",".join(map(str, c)) + ")" for c in self.nu)
        return f"{self.m};{comps}" if self.nu else str(self.m)


@dataclass(frozen=True)
class ZetaMode:
    """Coefficient ring selector for the generating functions.

    kind "motivic-p1" works in Z[L] and requires genus 0; "hodge",
    "poincare" and "euler" are the Macdonald specializations and accept
    any genus.
    """

    kind: str
    g: int = 0

    def __post_init__(self):
        if self.kind not in ("motivic-p1", "hodge", "poincare", "euler"):
            raise ValueError(f"unknown mode kind {self.kind!r}")
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.kind == "motivic-p1" and self.g != 0:
            raise ValueError("the motivic mode is only available in genus 0")


MOTIVIC_P1 = ZetaMode("motivic-p1", 0)


def lefschetz_class(mode: ZetaMode) -> MultiPoly:
    """The class of the affine line in the mode's coefficient ring."""
    if mode.kind == "motivic-p1":
        return MultiPoly.var("L")
    if mode.kind == "hodge":
        return MultiPoly.var("u") * MultiPoly.var("v")
    if mode.kind == "poincare":
        return MultiPoly.var("x") ** 2
    return MultiPoly.const(1)


def zeta_num_den(mode: ZetaMode) -> Tuple[MultiPoly, MultiPoly]:
    """Numerator and denominator of the symmetric-power generating function."""
    t = MultiPoly.var("t")
    one = MultiPoly.const(1)
    lam = lefschetz_class(mode)
    if mode.kind == "euler":
        e = 2 * mode.g - 2
        if e >= 0:
            return (one - t) ** e, one
        return one, (one - t) ** (-e)
    if mode.kind == "motivic-p1":
        num = one
    elif mode.kind == "hodge":
        u, v = MultiPoly.var("u"), MultiPoly.var("v")
        num = ((one - u * t) * (one - v * t)) ** mode.g
    else:  # poincare
        x = MultiPoly.var("x")
        num = (one - x * t) ** (2 * mode.g)
    den = (one - t) * (one - lam * t)
    return num, den


def zeta_series(mode: ZetaMode, order: int) -> TruncSeries:
    """Truncated generating function of symmetric-power classes."""
    num, den = zeta_num_den(mode)
    return TruncSeries.from_rational(num, den, order)


def closed_form(mode: ZetaMode, ell: int, order: int) -> TruncSeries:
    """Truncated generating function of the relative-moduli classes."""
    if ell < 0:
        raise ValueError("number of markings must be non-negative")
    t = MultiPoly.var("t")
    one = MultiPoly.const(1)
    lam = lefschetz_class(mode)
    num, den = zeta_num_den(mode)
    num = num * ((one - lam * t) * (one - t)) ** ell
    den = den * (one - (lam + 1) * t) ** ell
    return TruncSeries.from_rational(num, den, order)


@lru_cache(maxsize=None)
def compositions(total: int) -> Tuple[Composition, ...]:
    """All compositions of total, sorted by length then entries."""
    if total == 0:
        return ((),)
    out: List[Composition] = []
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            out.append((first,) + rest)
    out.sort(key=lambda c: (len(c), c))
    return tuple(out)


def enumerate_profiles(n: int, ell: int) -> List[StratumProfile]:
    """All stratum profiles of total length n for ell markings."""
    if n < 0 or ell < 1:
        raise ValueError("need n >= 0 and at least one marking")

    def splits(total: int, parts: int) -> List[Tuple[int, ...]]:
        if parts == 1:
            return [(total,)]
        return [
            (a,) + rest
            for a in range(total + 1)
            for rest in splits(total - a, parts - 1)
        ]

    profiles = []
    for m in range(n, -1, -1):
        for totals in splits(n - m, ell):
            choices: List[Tuple[Composition, ...]] = [()]
            for a in totals:
                choices = [prefix + (c,) for prefix in choices for c in compositions(a)]
            for nu in choices:
                profiles.append(StratumProfile(m, nu))
    return profiles


def interior_sym_coefficients(mode: ZetaMode, ell: int, order: int) -> List[MultiPoly]:
    """Classes of symmetric powers of the curve minus the markings.

    Read from the series identity Z_{C minus D}(t) = Z_C(t) * (1-t)^ell.
    """
    num, den = zeta_num_den(mode)
    num = num * (MultiPoly.const(1) - MultiPoly.var("t")) ** ell
    return list(TruncSeries.from_rational(num, den, order).coeffs)


def stratum_class(profile: StratumProfile, mode: ZetaMode, ell: int) -> MultiPoly:
    """Grothendieck-ring class of a single locally closed stratum."""
    if len(profile.nu) != ell:
        raise ProfileError("profile does not match the number of markings")
    interior = interior_sym_coefficients(mode, ell, profile.m)[profile.m]
    lam = lefschetz_class(mode)
    cls = interior
    for comp in profile.nu:
        for part in comp:
            cls = cls * lam ** (part - 1)
    return cls


def strata_sum(n: int, ell: int, mode: ZetaMode) -> MultiPoly:
    """Brute-force class of the relative moduli space: sum over all strata."""
    interior = interior_sym_coefficients(mode, ell, n)
    lam = lefschetz_class(mode)
    lam_powers = [MultiPoly.const(1)]
    for _ in range(n):
        lam_powers.append(lam_powers[-1] * lam)
    total = ZERO
    for profile in enumerate_profiles(n, ell):
        cls = interior[profile.m]
        for comp in profile.nu:
            for part in comp:
                cls = cls * lam_powers[part - 1]
        total = total + cls
    return total


def stabilizer_bounds(profile: StratumProfile) -> List[int]:
    """Maximal cyclic stabilizer order contributed by each bubble, in order."""
    return [part for comp in profile.nu for part in comp]


def parse_profile(text: str) -> StratumProfile:
    """Parse the CLI profile syntax ``m;(a,b,...);();(c)``."""
    pieces = text.split(";")
    try:
        m = int(pieces[0])
    except ValueError as exc:
        raise ProfileError(f"bad interior length in {text!r}") from exc
    nu = []
    for piece in pieces[1:]:
        piece = piece.strip()
        if not (piece.startswith("(") and piece.endswith(")")):
            raise ProfileError(f"bad composition {piece!r}")
        inner = piece[1:-1].strip()
        if not inner:
            nu.append(())
            continue
        try:
            nu.append(tuple(int(x) for x in inner.split(",")))
        except ValueError as exc:
            raise ProfileError(f"bad composition {piece!r}") from exc
    return StratumProfile(m, tuple(nu))
