"""Simplicial stacky fans and iterated (weighted) star subdivision.

Builds the fan of projective space together with the iterated star
subdivisions that model the toric degrees of freedom of length-n
subschemes on the line relative to one or both toric fixed points.  All
ray generators are stored primitive, so no extra stacky data is carried.

Cones are stored via their maximal cones only; faces are derived on
demand.  Fans are immutable values and all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb, gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import (
    InconsistentSystemError,
    NonUniqueSolutionError,
    det,
    rational_solve,
)
from .poly import MultiPoly

Vector = Tuple[int, ...]


class FanError(ValueError):
    """Invalid fan input or failed fan invariant."""


def _vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return _vector_gcd(v) == 1


@dataclass(frozen=True)
class Ray:
    label: str
    vector: Vector

    def __post_init__(self):
        if all(x == 0 for x in self.vector):
            raise FanError(f"ray {self.label} has zero vector")
        if not is_primitive(self.vector):
            raise FanError(f"ray {self.label} vector {self.vector} is not primitive")


class StackyFan:
    """A simplicial fan with primitive ray generators.

    ``max_cones`` holds frozensets of indices into ``rays``.  Rays keep
    insertion order and cones are kept sorted for deterministic output.
    """

    __slots__ = ("dim", "rays", "max_cones")

    def __init__(self, dim: int, rays: Sequence[Ray], max_cones):
        self.dim = dim
        self.rays = tuple(rays)
        cones = [frozenset(c) for c in max_cones]
        self.max_cones = tuple(sorted(cones, key=lambda c: sorted(c)))
        for ray in self.rays:
            if len(ray.vector) != dim:
                raise FanError("ray dimension mismatch")
        for cone in self.max_cones:
            if len(cone) != dim:
                raise FanError("maximal cone is not full-dimensional")
            if det([list(self.rays[i].vector) for i in sorted(cone)]) == 0:
                raise FanError("maximal cone rays are linearly dependent")

    # -- queries -------------------------------------------------------

    def ray_index(self, v: Sequence[int]) -> Optional[int]:
        vv = tuple(v)
        for i, ray in enumerate(self.rays):
            if ray.vector == vv:
                return i
        return None

    def labels(self, cone) -> Tuple[str, ...]:
        return tuple(self.rays[i].label for i in sorted(cone))

    def all_cones(self) -> FrozenSet[FrozenSet[int]]:
        """All faces of all maximal cones, including the origin (empty set)."""
        seen = {frozenset()}
        for cone in self.max_cones:
            idx = sorted(cone)
            for mask in range(1, 1 << len(idx)):
                seen.add(frozenset(idx[i] for i in range(len(idx)) if mask >> i & 1))
        return frozenset(seen)

    def census(self) -> Tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for cone in self.all_cones():
            counts[len(cone)] += 1
        return tuple(counts)

    def is_complete(self) -> bool:
        """Every codimension-1 face must bound exactly two maximal cones."""
        facet_count: Dict[FrozenSet[int], int] = {}
        for cone in self.max_cones:
            for i in cone:
                facet = cone - {i}
                facet_count[facet] = facet_count.get(facet, 0) + 1
        return all(c == 2 for c in facet_count.values())

    def is_simplicial(self) -> bool:
        # linear independence is enforced at construction for maximal cones
        return True

    def cone_coordinates(self, cone, v: Sequence[int]):
        """Rational coordinates of v in the ray basis of a full cone's span."""
        idx = sorted(cone)
        cols = [self.rays[i].vector for i in idx]
        a = [[cols[j][k] for j in range(len(idx))] for k in range(self.dim)]
        return idx, rational_solve(a, list(v))

    def contains_in_cone(self, cone, v: Sequence[int]) -> bool:
        try:
            _, coords = self.cone_coordinates(cone, v)
        except (InconsistentSystemError, NonUniqueSolutionError):
            return False
        return all(c >= 0 for c in coords)

    def check_intersections_are_faces(self) -> bool:
        """Exhaustive pairwise check that cone intersections are faces.

        For two maximal simplicial cones this verifies that every lattice
        point expressible with non-negative coordinates in both cones is
        supported on the common ray set.  Intended for dim <= 5.
        """
        faces = self.all_cones()
        for a in self.max_cones:
            for b in self.max_cones:
                if a >= b:
                    continue
                common = a & b
                if common not in faces:
                    return False
                # rays of a outside the common face may not lie in cone(b)
                for i in a - common:
                    if self.contains_in_cone(b, self.rays[i].vector):
                        return False
                # interiors must be disjoint: the barycenter of a may lie in
                # cone(b) only when the cones coincide
                s = [0] * self.dim
                for i in a:
                    s = [x + y for x, y in zip(s, self.rays[i].vector)]
                if self.contains_in_cone(b, s) and common != a:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, StackyFan):
            return NotImplemented
        if self.dim != other.dim:
            return False
        mine = frozenset(
            frozenset(self.rays[i].vector for i in cone) for cone in self.max_cones
        )
        theirs = frozenset(
            frozenset(other.rays[i].vector for i in cone) for cone in other.max_cones
        )
        return (
            {r.vector for r in self.rays} == {r.vector for r in other.rays}
            and mine == theirs
        )

    def __hash__(self):
        return hash((self.dim, frozenset(r.vector for r in self.rays)))

    # -- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [
                {"label": r.label, "vector": list(r.vector)} for r in self.rays
            ],
            "max_cones": [sorted(c) for c in self.max_cones],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def projective_fan(n: int) -> StackyFan:
    """The standard complete fan of n-dimensional projective space."""
    if n < 1:
        raise FanError("dimension must be at least 1")
    rays = []
    for j in range(1, n + 1):
        e = tuple(1 if k == j - 1 else 0 for k in range(n))
        rays.append(Ray(f"sigma_{j}", e))
    rays.append(Ray("tau", tuple(-1 for _ in range(n))))
    cones = []
    for omit in range(n + 1):
        cones.append(frozenset(i for i in range(n + 1) if i != omit))
    return StackyFan(n, rays, cones)


def minimal_cone(fan: StackyFan, v: Sequence[int]) -> FrozenSet[int]:
    """The unique cone whose relative interior contains v."""
    vv = tuple(int(x) for x in v)
    if all(x == 0 for x in vv):
        raise FanError("zero vector has no minimal cone")
    for cone in fan.max_cones:
        try:
            idx, coords = fan.cone_coordinates(cone, vv)
        except (InconsistentSystemError, NonUniqueSolutionError):
            continue
        if all(c >= 0 for c in coords):
            return frozenset(i for i, c in zip(idx, coords) if c > 0)
    raise FanError(f"vector {vv} lies outside the support of the fan")


def star_subdivide(
    fan: StackyFan, v: Sequence[int], label: Optional[str] = None
) -> StackyFan:
    """Standard star subdivision at a primitive vector inside the support.

    Subdividing at an existing ray is a silent no-op: the corresponding
    modification of the moduli problem is an isomorphism.
    """
    vv = tuple(int(x) for x in v)
    if not is_primitive(vv):
        raise FanError(f"subdivision vector {vv} is not primitive")
    if fan.ray_index(vv) is not None:
        return fan
    center = minimal_cone(fan, vv)
    new_index = len(fan.rays)
    rays = list(fan.rays) + [Ray(label or f"ray_{new_index}", vv)]
    cones: List[FrozenSet[int]] = []
    for cone in fan.max_cones:
        if not center <= cone:
            cones.append(cone)
            continue
        for r in center:
            cones.append((cone - {r}) | {new_index})
    return StackyFan(fan.dim, rays, cones)


def rho_vector(n: int, j: int) -> Vector:
    """Primitive generator of the exceptional ray of the j-th blow-up level."""
    if not 1 <= j <= n:
        raise FanError("ray level out of range")
    return tuple(k + j - n if k >= n - j + 1 else 0 for k in range(1, n + 1))


def hilb_fan(n: int, i: int) -> StackyFan:
    """Fan of the moduli of n points on the line relative to one origin marking.

    Built by star subdivision of the projective fan at the exceptional
    rays from level n down to level i+1.  Level 0 equals level 1 because
    the last modification is an isomorphism.
    """
    if n < 1:
        raise FanError("n must be at least 1")
    if i > n or i < 0:
        raise FanError("stability level must satisfy 0 <= i <= n")
    fan = projective_fan(n)
    for j in range(n, max(i, 1), -1):
        fan = star_subdivide(fan, rho_vector(n, j), label=f"rho_{j}")
    return fan


def insert_weighted_ray(
    fan: StackyFan,
    cone,
    weights: Sequence[int],
    label: Optional[str] = None,
) -> StackyFan:
    """Star subdivision at the weighted sum of a cone's rays.

    This is the toric shadow of a weighted blow-up along the closed
    stratum of the cone.  The weighted sum must come out primitive; the
    gcd is deliberately not divided out.
    """
    idx = sorted(cone)
    if not idx:
        raise FanError("cannot blow up the origin cone")
    if frozenset(idx) not in fan.all_cones():
        raise FanError("blow-up center is not a cone of the fan")
    if len(weights) != len(idx) or any(w < 1 for w in weights):
        raise FanError("weights must be positive integers, one per ray")
    v = [0] * fan.dim
    for w, i in zip(weights, idx):
        for k in range(fan.dim):
            v[k] += w * fan.rays[i].vector[k]
    if not is_primitive(v):
        raise FanError(f"weighted ray {tuple(v)} is imprimitive")
    return star_subdivide(fan, tuple(v), label=label)


def cone_census(fan: StackyFan) -> Tuple[int, ...]:
    return fan.census()


def fan_motive(fan: StackyFan, lefschetz: str = "L") -> MultiPoly:
    """Class of the toric stack in the Grothendieck ring, as a polynomial in L.

    Each cone of dimension d contributes a torus factor (L-1)^(n-d).
    """
    if not fan.is_complete():
        raise FanError("motive of an incomplete fan is not computed here")
    lm1 = MultiPoly.var(lefschetz) - 1
    total = MultiPoly.const(0)
    for count, dim in zip(fan.census(), range(fan.dim + 1)):
        total = total + count * (lm1 ** (fan.dim - dim))
    return total


def involution_matrix(n: int) -> List[List[int]]:
    """Lattice involution induced by inverting the line's coordinate.

    On characters the involution sends the degree-k elementary symmetric
    function to the degree-(n-k) one divided by the top one; the map
    below is its adjoint on the cocharacter lattice.
    """
    m = [[0] * n for _ in range(n)]
    for k in range(1, n):
        m[n - k - 1][k - 1] = 1
    for j in range(n):
        m[j][n - 1] = -1
    return m


def apply_matrix(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def rho_inf_vector(n: int, j: int) -> Vector:
    return apply_matrix(involution_matrix(n), rho_vector(n, j))


def hilb_fan_two_sided(n: int, i_zero: int, i_inf: int) -> StackyFan:
    """Fan for points on the line relative to both toric fixed points.

    The rays on the infinity side are the images of the exceptional rays
    under the coordinate-inversion involution; correctness is accepted
    via census and Euler-characteristic cross-checks, not assumed.
    """
    if n < 1:
        raise FanError("n must be at least 1")
    for i in (i_zero, i_inf):
        if i > n or i < 0:
            raise FanError("stability level must satisfy 0 <= i <= n")
    fan = projective_fan(n)
    for j in range(n, max(i_zero, 1), -1):
        fan = star_subdivide(fan, rho_vector(n, j), label=f"rho_{j}")
    for j in range(n, max(i_inf, 1), -1):
        fan = star_subdivide(fan, rho_inf_vector(n, j), label=f"rho_inf_{j}")
    return fan


def product_p1_fan(n: int) -> StackyFan:
    """The fan of the n-fold product of the projective line (census oracle)."""
    rays = []
    for k in range(n):
        plus = tuple(1 if j == k else 0 for j in range(n))
        minus = tuple(-1 if j == k else 0 for j in range(n))
        rays.append(Ray(f"plus_{k + 1}", plus))
        rays.append(Ray(f"minus_{k + 1}", minus))
    cones = []
    for mask in range(1 << n):
        cones.append(
            frozenset(2 * k + (mask >> k & 1) for k in range(n))
        )
    return StackyFan(n, rays, cones)


def expected_product_census(n: int) -> Tuple[int, ...]:
    return tuple(comb(n, k) * 2 ** k for k in range(n + 1))
