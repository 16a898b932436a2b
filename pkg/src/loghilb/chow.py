"""Integral Chow-ring presentations and graded-group computation.

Two independent routes to the Chow ring of the relative Hilbert scheme
of points on the line are implemented:

* the Stanley-Reisner presentation read off a complete simplicial fan
  (linear relations from the lattice characters plus the squarefree
  monomials on minimal non-faces), and
* the blow-up presentation over the symmetric power, built either in one
  shot from the explicit Q-polynomial relation families or step by step
  by adjoining one exceptional-divisor generator per weighted blow-up.

Graded pieces are computed by brute monomial enumeration and Smith
normal form over the integers; torsion is reported, never dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .fan import StackyFan
from .linalg import in_row_span_z, invariant_factors
from .poly import MultiPoly, ZERO
from .strata import StratumProfile


class PresentationError(ValueError):
    """Invalid presentation input."""


@dataclass(frozen=True)
class BaseRing:
    """Coefficient ring of a presentation.

    kind "integers": plain Z.
    kind "trunc_hyperplane": Z[H]/(H^(n+1)), the Chow ring of the n-th
        symmetric power of the line, with the hyperplane class H equal to
        the first Chern class of the tautological bundle.
    kind "symbolic_curve": opaque degree-1 classes c1L_r and opaque
        kernel tokens for a positive-genus curve; relations are emitted
        symbolically and no graded computation is available.
    """

    kind: str
    n: int = 0
    hvar: str = "H"
    markings: int = 1

    def __post_init__(self):
        if self.kind not in ("integers", "trunc_hyperplane", "symbolic_curve"):
            raise PresentationError(f"unknown base ring kind {self.kind!r}")

    @staticmethod
    def integers() -> "BaseRing":
        return BaseRing("integers")

    @staticmethod
    def p1(n: int) -> "BaseRing":
        return BaseRing("trunc_hyperplane", n=n)

    @staticmethod
    def symbolic(markings: int = 1) -> "BaseRing":
        return BaseRing("symbolic_curve", markings=markings)

    def c1_name(self, r: int) -> str:
        if self.kind == "symbolic_curve":
            return f"c1L_{r}"
        return self.hvar

    def kernel_generators(self, m: int, r: int) -> Tuple[MultiPoly, ...]:
        """Generators of the kernel of restriction to the m-th symmetric power.

        For the line this is the principal ideal generated by H^(m+1); in
        symbolic mode an opaque token stands in for the whole kernel.
        """
        if self.kind == "trunc_hyperplane":
            return (MultiPoly.var(self.hvar) ** (m + 1),)
        if self.kind == "symbolic_curve":
            return (MultiPoly.var(f"kerS{m}_{r}"),)
        raise PresentationError("plain integer base has no symmetric-power maps")


@dataclass(frozen=True)
class GradedPresentation:
    """Generators of degree 1 over a base ring, modulo homogeneous relations."""

    base: BaseRing
    generators: Tuple[str, ...]
    relations: Tuple[MultiPoly, ...]
    top_degree: int

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        if self.base.kind == "trunc_hyperplane" and self.base.hvar in self.generators:
            raise PresentationError("generator name clashes with the base variable")

    def variables(self) -> Tuple[str, ...]:
        """All degree-1 variables of the ambient graded ring."""
        if self.base.kind == "trunc_hyperplane":
            return self.generators + (self.base.hvar,)
        return self.generators

    def all_relations(self) -> Tuple[MultiPoly, ...]:
        """Stated relations plus the base ring's implicit truncation."""
        if self.base.kind == "trunc_hyperplane":
            trunc = MultiPoly.var(self.base.hvar) ** (self.base.n + 1)
            return self.relations + (trunc,)
        return self.relations

    def to_json_dict(self) -> dict:
        base: dict = {"kind": self.base.kind}
        if self.base.kind == "trunc_hyperplane":
            base["n"] = self.base.n
            base["variable"] = self.base.hvar
        if self.base.kind == "symbolic_curve":
            base["markings"] = self.base.markings
        return {
            "base": base,
            "generators": [{"name": g, "degree": 1} for g in self.generators],
            "relations": [r.to_string() for r in self.relations],
            "top_degree": self.top_degree,
        }


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    rank: int
    torsion: Tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "torsion": list(self.torsion),
        }


# ---------------------------------------------------------------------------
# Stanley-Reisner presentations


def minimal_nonfaces(fan: StackyFan) -> List[Tuple[int, ...]]:
    """Minimal ray subsets spanning no cone of the fan."""
    faces = {tuple(sorted(c)) for c in fan.all_cones()}
    nrays = len(fan.rays)
    out: List[Tuple[int, ...]] = []
    for size in range(2, fan.dim + 2):
        for subset in itertools.combinations(range(nrays), size):
            if subset in faces:
                continue
            if all(
                subset[:k] + subset[k + 1:] in faces for k in range(size)
            ):
                out.append(subset)
    return out


def sr_presentation(fan: StackyFan) -> GradedPresentation:
    """Stanley-Reisner presentation of a complete simplicial stacky fan.

    One degree-1 generator per ray; one linear relation per lattice
    character; one squarefree monomial per minimal non-face.
    """
    if not fan.is_complete():
        raise PresentationError("Stanley-Reisner presentation needs a complete fan")
    gens = tuple(r.label for r in fan.rays)
    relations: List[MultiPoly] = []
    for k in range(fan.dim):
        rel = ZERO
        for ray in fan.rays:
            if ray.vector[k]:
                rel = rel + ray.vector[k] * MultiPoly.var(ray.label)
        relations.append(rel)
    for subset in minimal_nonfaces(fan):
        mono = MultiPoly.const(1)
        for i in subset:
            mono = mono * MultiPoly.var(fan.rays[i].label)
        relations.append(mono)
    return GradedPresentation(
        BaseRing.integers(), gens, tuple(relations), fan.dim
    )


# ---------------------------------------------------------------------------
# graded pieces by monomial enumeration + Smith normal form


def monomial_exponents(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """All exponent vectors of the given total degree, in a fixed order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for mono in itertools.combinations_with_replacement(range(nvars), degree):
        exp = [0] * nvars
        for i in mono:
            exp[i] += 1
        out.append(tuple(exp))
    return out


def _embed_terms(p: MultiPoly, var_order: Sequence[str]) -> Dict[Tuple[int, ...], int]:
    positions = []
    for v in p.vars:
        if v not in var_order:
            raise PresentationError(f"relation variable {v!r} not in the ring")
        positions.append(var_order.index(v))
    out: Dict[Tuple[int, ...], int] = {}
    for exp, c in p.terms.items():
        full = [0] * len(var_order)
        for pos, e in zip(positions, exp):
            full[pos] = e
        out[tuple(full)] = c
    return out


def _relation_rows(
    pres: GradedPresentation, degree: int
) -> Tuple[List[Tuple[int, ...]], List[List[int]]]:
    """Degree-k monomial basis and the matrix of (relation x monomial) rows."""
    variables = pres.variables()
    basis = monomial_exponents(len(variables), degree)
    index = {exp: i for i, exp in enumerate(basis)}
    rows: List[List[int]] = []
    for rel in pres.all_relations():
        if rel.is_zero():
            continue
        if not rel.is_homogeneous():
            raise PresentationError(
                f"inhomogeneous relation {rel.to_string()!r}"
            )
        d = rel.degree()
        if d > degree:
            continue
        embedded = _embed_terms(rel, variables)
        for shift in monomial_exponents(len(variables), degree - d):
            row = [0] * len(basis)
            for exp, c in embedded.items():
                target = tuple(x + y for x, y in zip(exp, shift))
                row[index[target]] += c
            rows.append(row)
    return basis, rows


def graded_group(pres: GradedPresentation, degree: int) -> GradedPiece:
    """Free rank and torsion of one graded piece of the presented ring."""
    if pres.base.kind == "symbolic_curve":
        raise PresentationError("no graded computation in symbolic mode")
    if not 0 <= degree <= pres.top_degree:
        raise PresentationError("degree out of range")
    basis, rows = _relation_rows(pres, degree)
    if not rows:
        return GradedPiece(degree, len(basis))
    factors = invariant_factors(rows)
    rank = len(basis) - len(factors)
    torsion = tuple(f for f in factors if f > 1)
    return GradedPiece(degree, rank, torsion)


def graded_groups(pres: GradedPresentation) -> List[GradedPiece]:
    return [graded_group(pres, k) for k in range(pres.top_degree + 1)]


def ideal_member(pres: GradedPresentation, poly: MultiPoly) -> bool:
    """Is a homogeneous polynomial in the ideal, checked at its own degree?

    Degrees above the top degree are automatically members: every class
    there vanishes, so the degree bound makes the check complete.
    """
    if poly.is_zero():
        return True
    if not poly.is_homogeneous():
        raise PresentationError("membership check needs a homogeneous polynomial")
    degree = poly.degree()
    if degree > pres.top_degree:
        return True
    variables = pres.variables()
    basis, rows = _relation_rows(pres, degree)
    index = {exp: i for i, exp in enumerate(basis)}
    target = [0] * len(basis)
    for exp, c in _embed_terms(poly, variables).items():
        target[index[exp]] = c
    return in_row_span_z(rows, target)


def ideals_equal(a: GradedPresentation, b: GradedPresentation) -> bool:
    """Mutual graded ideal membership over the same variables."""
    if set(a.variables()) != set(b.variables()):
        return False
    return all(ideal_member(b, rel) for rel in a.relations) and all(
        ideal_member(a, rel) for rel in b.relations
    )


# ---------------------------------------------------------------------------
# Q-polynomials and blow-up presentations


def eps_name(j: int, r: int = 1) -> str:
    """Exceptional-divisor generator: j points on the last bubble at marking r."""
    return f"eps{j}_{r}"


def q_polynomial(
    m: int,
    h: int,
    t_var: str,
    upper_vars: Sequence[str] = (),
    c_var: str = "H",
) -> MultiPoly:
    """Equivariant top Chern class of the blow-up center's normal bundle.

    For m > h > 0 this is the product over k = 1..h of
    (k*t + c - sum_{j=1..m-h} (k+j) * upper_j); for m = h the sum is
    empty, and the m = 0 case is formally zero.
    """
    if m == 0:
        # formally zero for every h
        return ZERO
    if m < h or h < 0:
        raise PresentationError("need m >= h >= 0")
    if len(upper_vars) != m - h:
        raise PresentationError("need one upper variable per extra level")
    t = MultiPoly.var(t_var)
    c = MultiPoly.var(c_var)
    result = MultiPoly.const(1)
    for k in range(1, h + 1):
        factor = k * t + c
        for j in range(1, m - h + 1):
            factor = factor - (k + j) * MultiPoly.var(upper_vars[j - 1])
        result = result * factor
    return result


def q_for_levels(
    n_top: int, m: int, h: int, r: int, base: BaseRing
) -> MultiPoly:
    """Blow-up relation: Q_{m,h} instantiated on the exceptional generators.

    Upper slots are the honest divisor classes of levels (n_top - m) + h + 1
    and above; the t slot receives minus the generator of level
    (n_top - m) + h, because in the blow-up formula the adjoined variable
    corresponds to the negative of the exceptional class.
    """
    shift = n_top - m
    uppers = [eps_name(shift + h + j, r) for j in range(1, m - h + 1)]
    q = q_polynomial(m, h, "_t", uppers, base.c1_name(r))
    sub: Dict[str, MultiPoly] = {v: MultiPoly.var(v) for v in q.vars}
    sub["_t"] = -MultiPoly.var(eps_name(shift + h, r))
    return q.specialize(sub)


def _effective_level(i: int, n: int) -> int:
    # level 0 and level 1 give isomorphic moduli, and level 0 of the
    # literal relation list would adjoin a generator coinciding with an
    # existing ray; the presentation for level 0 is defined to be level 1
    if i < 0 or i > n:
        raise PresentationError("stability level must satisfy 0 <= i <= n")
    return max(i, 1) if n >= 1 else i


def thmD_presentation(
    n: int, i_vector: Sequence[int], base: BaseRing
) -> GradedPresentation:
    """Blow-up presentation over the symmetric power, all markings at once.

    For each marking r and each level j from n down to i_r + 1 the three
    relation families are: the Q-polynomial of the level, the kernel of
    restriction times the level's generator, and the lifted lower-level
    Q-polynomials times the level's generator.
    """
    ell = len(i_vector)
    if ell < 1:
        raise PresentationError("need at least one marking")
    if base.kind == "symbolic_curve" and base.markings != ell:
        raise PresentationError("base ring marking count mismatch")
    levels = [_effective_level(i, n) for i in i_vector]
    gens: List[str] = []
    relations: List[MultiPoly] = []
    for r, i_r in enumerate(levels, start=1):
        gens.extend(eps_name(j, r) for j in range(i_r + 1, n + 1))
    for r, i_r in enumerate(levels, start=1):
        for j in range(n, i_r, -1):
            eps_j = MultiPoly.var(eps_name(j, r))
            relations.append(q_for_levels(n, n, j, r, base))
            for ker in base.kernel_generators(n - j, r):
                relations.append(ker * eps_j)
            for k in range(n - j, 0, -1):
                relations.append(q_for_levels(n, n - j, k, r, base) * eps_j)
    return GradedPresentation(base, tuple(gens), tuple(relations), n)


def keel_step(
    pres: GradedPresentation,
    ker_gens: Sequence[MultiPoly],
    q: MultiPoly,
    new_name: str,
) -> GradedPresentation:
    """Adjoin one exceptional-divisor generator for a weighted blow-up.

    The new relations are t times each kernel generator plus the
    Q-polynomial of the center's normal bundle, already expressed in the
    new variable.
    """
    for g in list(ker_gens) + [q]:
        if not g.is_homogeneous():
            raise PresentationError("kernel generators and Q must be homogeneous")
    if new_name in pres.variables():
        raise PresentationError(f"generator {new_name!r} already present")
    t = MultiPoly.var(new_name)
    new_rels = tuple(g * t for g in ker_gens if not g.is_zero()) + (q,)
    return GradedPresentation(
        pres.base,
        pres.generators + (new_name,),
        pres.relations + new_rels,
        pres.top_degree,
    )


def iterated_keel(n: int, i: int, base: BaseRing, r: int = 1) -> GradedPresentation:
    """Single-marking presentation built one weighted blow-up at a time.

    At the step adjoining the level-j generator the kernel of restriction
    to the center is produced by the lifting recipe: kernel of the
    symmetric-power pullback together with lifts of all relations of the
    center's own presentation.
    """
    level = _effective_level(i, n)
    pres = GradedPresentation(base, (), (), n)
    for j in range(n, level, -1):
        m = n - j
        ker: List[MultiPoly] = list(base.kernel_generators(m, r))
        for jp in range(m, 0, -1):
            ker.append(q_for_levels(n, m, jp, r, base))
            for kg in base.kernel_generators(m - jp, r):
                ker.append(kg * MultiPoly.var(eps_name(jp + j, r)))
            for k in range(m - jp, 0, -1):
                ker.append(
                    q_for_levels(n, m - jp, k, r, base)
                    * MultiPoly.var(eps_name(jp + j, r))
                )
        q = q_for_levels(n, n, j, r, base)
        pres = keel_step(pres, ker, q, eps_name(j, r))
    return pres


# ---------------------------------------------------------------------------
# boundary strata cycle classes


def stratum_cycle_class(profile: StratumProfile, n: int) -> MultiPoly:
    """Cycle class of a boundary stratum closure as a monomial in the
    exceptional-divisor generators.

    Bubble j (counted from the interior) at marking i contributes the
    generator whose index is the total length supported on the last j
    bubbles; the codimension is the total number of bubbles.
    """
    if profile.total != n:
        raise PresentationError(
            f"profile totals {profile.total}, expected {n}"
        )
    cls = MultiPoly.const(1)
    for i, comp in enumerate(profile.nu, start=1):
        k_i = len(comp)
        for j in range(1, k_i + 1):
            big_n = sum(comp[k_i - j:])
            cls = cls * MultiPoly.var(eps_name(big_n, i))
    return cls


# ---------------------------------------------------------------------------
# presentation comparison


def compare_presentations(
    a: GradedPresentation,
    b: GradedPresentation,
    gen_map: Mapping[str, MultiPoly],
) -> dict:
    """Check a degree-1 map A -> B on relations and graded groups.

    Every relation of A is pushed through the map and tested for
    membership in B's ideal at its degree; graded ranks and torsion are
    compared degree by degree.
    """
    b_vars = set(b.variables())
    substitution: Dict[str, MultiPoly] = {}
    for name, image in gen_map.items():
        if not image.is_homogeneous() or image.degree() not in (1, -1):
            raise PresentationError(f"image of {name!r} is not of degree 1")
        if not set(image.vars) <= b_vars:
            raise PresentationError(f"image of {name!r} uses unknown variables")
        substitution[name] = image
    relation_report = []
    all_ok = True
    for rel in a.relations:
        subs = dict(substitution)
        for v in rel.vars:
            if v not in subs:
                if v not in b_vars:
                    raise PresentationError(
                        f"no image for variable {v!r} of the source"
                    )
                subs[v] = MultiPoly.var(v)
        image = rel.specialize(subs)
        ok = ideal_member(b, image)
        all_ok = all_ok and ok
        relation_report.append(
            {"relation": rel.to_string(), "member": ok}
        )
    graded_report = []
    top = min(a.top_degree, b.top_degree)
    for k in range(top + 1):
        ga = graded_group(a, k)
        gb = graded_group(b, k)
        match = ga.rank == gb.rank and ga.torsion == gb.torsion
        all_ok = all_ok and match
        graded_report.append(
            {
                "degree": k,
                "source": ga.to_json_dict(),
                "target": gb.to_json_dict(),
                "match": match,
            }
        )
    return {
        "relations": relation_report,
        "graded": graded_report,
        "pass": all_ok,
    }


def find_degree1_map(
    a: GradedPresentation,
    b: GradedPresentation,
    bound: int,
) -> Optional[Dict[str, MultiPoly]]:
    """Brute-force search for a relation-preserving degree-1 map A -> B.

    Candidate images are integer combinations of B's degree-1 variables
    with coefficients in [-bound, bound].  Partial assignments are pruned
    by checking every relation of A all of whose variables are assigned.
    """
    source_vars = list(a.variables())
    target_vars = list(b.variables())
    candidates: List[MultiPoly] = []
    for coeffs in itertools.product(
        range(-bound, bound + 1), repeat=len(target_vars)
    ):
        if all(c == 0 for c in coeffs):
            continue
        img = ZERO
        for c, v in zip(coeffs, target_vars):
            if c:
                img = img + c * MultiPoly.var(v)
        candidates.append(img)

    relations_by_vars = [(rel, set(rel.vars)) for rel in a.relations]

    def search(assignment: Dict[str, MultiPoly], rest: List[str]):
        assigned = set(assignment)
        for rel, used in relations_by_vars:
            if used <= assigned:
                if not ideal_member(b, rel.specialize(assignment)):
                    return None
        if not rest:
            return dict(assignment)
        name = rest[0]
        for img in candidates:
            assignment[name] = img
            found = search(assignment, rest[1:])
            if found is not None:
                return found
            del assignment[name]
        return None

    return search({}, source_vars)
