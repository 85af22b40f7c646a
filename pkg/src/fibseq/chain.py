"""Bounded chain complexes of finitely generated free Z-modules.

Homological convention throughout: the differential lowers degree,
d_n : C_n -> C_{n-1}, and d_{n-1} d_n = 0.  Complexes are finitely
supported; degrees of rank zero are normalized away so equality of
complexes and maps is bit-exact.  Two grading variants exist:

* ``unbounded``    — support anywhere in Z;
* ``nonnegative``  — support in degrees >= 0.

The translation A[p] reindexes by +p and multiplies every differential by
(-1)^p; the mapping cone of f : A -> B is A[1] (+) B with the triangular
differential [[d_{A[1]}, 0], [f, d_B]], and 0 -> B -> Mc(f) -> A[1] -> 0 is
degreewise split exact.  Homology is returned as a Subquotient (cycles = an
integer kernel basis, boundaries = image columns), canonicalized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Mapping, Optional

from .abgrp import FgAbelianGroup, Subquotient, SubquotientHom, induced, invariants
from .errors import (
    ChainMapValidationError,
    ComplexValidationError,
    FibseqError,
    InternalCheckError,
    NegativeDegree,
    WrongVariant,
)
from .exactlin import IntMatrix, block_matrix, kernel_with_retraction

UNBOUNDED = "unbounded"
NONNEGATIVE = "nonnegative"
_VARIANTS = (UNBOUNDED, NONNEGATIVE)


class ChainComplex:
    """Finitely supported family of free-module ranks plus differentials."""

    __slots__ = ("variant", "ranks", "diffs", "_hash")

    def __init__(
        self,
        ranks: Mapping[int, int],
        diffs: Optional[Mapping[int, IntMatrix]] = None,
        variant: str = UNBOUNDED,
        check: bool = True,
    ):
        if variant not in _VARIANTS:
            raise ComplexValidationError(f"unknown variant {variant!r}")
        clean_ranks: Dict[int, int] = {}
        for n, r in ranks.items():
            n, r = int(n), int(r)
            if r < 0:
                raise ComplexValidationError(f"negative rank at degree {n}")
            if r > 0:
                if variant == NONNEGATIVE and n < 0:
                    raise ComplexValidationError(
                        f"nonnegative complex has support at degree {n}"
                    )
                clean_ranks[n] = r
        clean_diffs: Dict[int, IntMatrix] = {}
        for n, mat in (diffs or {}).items():
            n = int(n)
            expected = (clean_ranks.get(n - 1, 0), clean_ranks.get(n, 0))
            if mat.shape != expected:
                raise ComplexValidationError(
                    f"differential at degree {n} has shape {mat.shape}, expected {expected}"
                )
            if mat.rows and mat.cols and not mat.is_zero():
                clean_diffs[n] = mat
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "ranks", dict(sorted(clean_ranks.items())))
        object.__setattr__(self, "diffs", dict(sorted(clean_diffs.items())))
        object.__setattr__(self, "_hash", None)
        if check:
            for n in self.diffs:
                if self.rank(n - 2) and self.diff(n - 1) @ self.diff(n) != IntMatrix.zeros(
                    self.rank(n - 2), self.rank(n)
                ):
                    raise ComplexValidationError(f"d∘d != 0 at degree {n}")

    def __setattr__(self, name, value):
        raise AttributeError("ChainComplex is immutable")

    # -- queries -------------------------------------------------------------

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.ranks)

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> IntMatrix:
        mat = self.diffs.get(n)
        if mat is None:
            return IntMatrix.zeros(self.rank(n - 1), self.rank(n))
        return mat

    def is_zero(self) -> bool:
        return not self.ranks

    def min_degree(self) -> Optional[int]:
        return min(self.ranks) if self.ranks else None

    def max_degree(self) -> Optional[int]:
        return max(self.ranks) if self.ranks else None

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChainComplex)
            and self.variant == other.variant
            and self.ranks == other.ranks
            and self.diffs == other.diffs
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(
                (self.variant, tuple(self.ranks.items()), tuple(self.diffs.items()))
            )
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if self.is_zero():
            return f"ChainComplex(0, {self.variant})"
        spans = ", ".join(f"{n}:{r}" for n, r in self.ranks.items())
        return f"ChainComplex({{{spans}}}, {self.variant})"


ZERO_COMPLEX = ChainComplex({}, {}, UNBOUNDED)


def zero_complex(variant: str = UNBOUNDED) -> ChainComplex:
    return ChainComplex({}, {}, variant)


class ChainMap:
    """Degree-indexed matrices commuting with the differentials."""

    __slots__ = ("source", "target", "components", "_hash")

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        components: Optional[Mapping[int, IntMatrix]] = None,
        check: bool = True,
    ):
        if source.variant != target.variant:
            raise ChainMapValidationError(
                f"variant mismatch: {source.variant} -> {target.variant}"
            )
        clean: Dict[int, IntMatrix] = {}
        for n, mat in (components or {}).items():
            n = int(n)
            expected = (target.rank(n), source.rank(n))
            if mat.shape != expected:
                raise ChainMapValidationError(
                    f"component at degree {n} has shape {mat.shape}, expected {expected}"
                )
            if mat.rows and mat.cols and not mat.is_zero():
                clean[n] = mat
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", dict(sorted(clean.items())))
        object.__setattr__(self, "_hash", None)
        if check:
            degrees = set(source.degrees()) | set(target.degrees())
            for n in sorted(degrees | {n + 1 for n in degrees}):
                lhs = self.target.diff(n) @ self.component(n)
                rhs = self.component(n - 1) @ self.source.diff(n)
                if lhs != rhs:
                    raise ChainMapValidationError(
                        f"chain map fails to commute with d at degree {n}"
                    )

    def __setattr__(self, name, value):
        raise AttributeError("ChainMap is immutable")

    def component(self, n: int) -> IntMatrix:
        mat = self.components.get(n)
        if mat is None:
            return IntMatrix.zeros(self.target.rank(n), self.source.rank(n))
        return mat

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.source, self.target, tuple(self.components.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"ChainMap({self.source!r} -> {self.target!r})"


# -- elementary constructors --------------------------------------------------


def sphere(n: int, variant: str = UNBOUNDED) -> ChainComplex:
    """Z concentrated in degree n."""
    if variant == NONNEGATIVE and n < 0:
        raise NegativeDegree(f"sphere({n}) does not exist in the nonnegative variant")
    return ChainComplex({n: 1}, {}, variant)


def disk(n: int, variant: str = UNBOUNDED) -> ChainComplex:
    """Z in degrees n and n-1 with identity differential; acyclic."""
    if variant == NONNEGATIVE and n < 1:
        raise NegativeDegree(f"disk({n}) does not exist in the nonnegative variant")
    return ChainComplex({n: 1, n - 1: 1}, {n: IntMatrix([[1]])}, variant)


def identity_map(a: ChainComplex) -> ChainMap:
    comps = {n: IntMatrix.identity(r) for n, r in a.ranks.items()}
    return ChainMap(a, a, comps, check=False)


def zero_map(src: ChainComplex, tgt: ChainComplex) -> ChainMap:
    return ChainMap(src, tgt, {}, check=False)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise ChainMapValidationError("composition endpoints do not match")
    comps = {}
    for n in set(f.components) | set(g.components):
        comps[n] = g.component(n) @ f.component(n)
    return ChainMap(f.source, g.target, comps, check=False)


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    if a.variant != b.variant:
        raise WrongVariant("cannot sum complexes of different variants")
    ranks = {n: a.rank(n) + b.rank(n) for n in set(a.degrees()) | set(b.degrees())}
    diffs = {}
    for n in set(a.diffs) | set(b.diffs):
        diffs[n] = block_matrix(
            [
                [a.diff(n), IntMatrix.zeros(a.rank(n - 1), b.rank(n))],
                [IntMatrix.zeros(b.rank(n - 1), a.rank(n)), b.diff(n)],
            ]
        )
    return ChainComplex(ranks, diffs, a.variant, check=False)


# -- translation ---------------------------------------------------------------


def shift(a: ChainComplex, p: int) -> ChainComplex:
    """A[p]: ranks reindexed by +p, differentials scaled by (-1)^p."""
    if a.variant == NONNEGATIVE and a.ranks and min(a.ranks) + p < 0:
        raise NegativeDegree(
            f"shift by {p} pushes degree {min(a.ranks)} below 0 in the nonnegative variant"
        )
    sign = -1 if p % 2 else 1
    ranks = {n + p: r for n, r in a.ranks.items()}
    diffs = {n + p: (m if sign == 1 else m.scale(-1)) for n, m in a.diffs.items()}
    return ChainComplex(ranks, diffs, a.variant, check=False)


def shift_map(f: ChainMap, p: int) -> ChainMap:
    comps = {n + p: m for n, m in f.components.items()}
    return ChainMap(shift(f.source, p), shift(f.target, p), comps, check=False)


def as_unbounded(a: ChainComplex) -> ChainComplex:
    return ChainComplex(a.ranks, a.diffs, UNBOUNDED, check=False)


def as_nonnegative(a: ChainComplex) -> ChainComplex:
    if a.ranks and min(a.ranks) < 0:
        raise NegativeDegree("complex has negative support")
    return ChainComplex(a.ranks, a.diffs, NONNEGATIVE, check=False)


# -- mapping cone ---------------------------------------------------------------


def mapping_cone(f: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """Mc(f) = A[1] (+) B with d = [[d_{A[1]}, 0], [f, d_B]].

    Returns (cone, i, p): i the second-block injection B -> Mc(f), p the
    first-block projection Mc(f) -> A[1]; the 0 -> B -> Mc(f) -> A[1] -> 0
    sequence is degreewise split exact by construction.
    """
    a, b = f.source, f.target
    ranks = {}
    degrees = set(n + 1 for n in a.degrees()) | set(b.degrees())
    for n in degrees:
        ranks[n] = a.rank(n - 1) + b.rank(n)
    diffs = {}
    for n in ranks:
        ra1, rb = a.rank(n - 1), b.rank(n)
        ra0, rb0 = a.rank(n - 2), b.rank(n - 1)
        if ra0 + rb0 == 0 or ra1 + rb == 0:
            continue
        diffs[n] = block_matrix(
            [
                [a.diff(n - 1).scale(-1), IntMatrix.zeros(ra0, rb)],
                [f.component(n - 1), b.diff(n)],
            ]
        )
    cone = ChainComplex(ranks, diffs, a.variant, check=False)
    inj = {}
    proj = {}
    for n in ranks:
        ra1, rb = a.rank(n - 1), b.rank(n)
        inj[n] = block_matrix([[IntMatrix.zeros(ra1, rb)], [IntMatrix.identity(rb)]])
        proj[n] = block_matrix([[IntMatrix.identity(ra1), IntMatrix.zeros(ra1, rb)]])
    i = ChainMap(b, cone, inj, check=False)
    p = ChainMap(cone, shift(a, 1), proj, check=False)
    return cone, i, p


# -- homology --------------------------------------------------------------------


@lru_cache(maxsize=4096)
def homology(a: ChainComplex, n: int) -> Subquotient:
    """H_n(a) as a subquotient of Z^{rank(n)} with a kernel retraction."""
    cycles, retraction = kernel_with_retraction(a.diff(n))
    boundaries = a.diff(n + 1)
    return Subquotient(
        ambient_rank=a.rank(n),
        cycles=cycles,
        boundaries=boundaries,
        cycle_retraction=retraction,
    )


@lru_cache(maxsize=4096)
def homology_group(a: ChainComplex, n: int) -> FgAbelianGroup:
    return invariants(homology(a, n))


def homology_degrees(*complexes: ChainComplex) -> tuple[int, ...]:
    """Union of supports; outside it every homology group is trivial."""
    degs = set()
    for c in complexes:
        degs.update(c.degrees())
    return tuple(sorted(degs))


def has_vanishing_homology(a: ChainComplex) -> bool:
    return all(homology_group(a, n).is_trivial() for n in a.degrees())


def induced_on_homology(f: ChainMap, n: int) -> SubquotientHom:
    """H_n(f); well-definedness must hold for any valid chain map."""
    try:
        return induced(f.component(n), homology(f.source, n), homology(f.target, n))
    except FibseqError as exc:  # pragma: no cover - contract violation
        raise InternalCheckError(f"induced map on H_{n} not well defined: {exc}") from exc


def is_quasi_iso(f: ChainMap) -> bool:
    """Cone acyclicity: f is a quasi-isomorphism iff Mc(f) is acyclic."""
    cone, _, _ = mapping_cone(f)
    return has_vanishing_homology(cone)


def is_chain_iso(f: ChainMap) -> bool:
    """Degreewise unimodular (an isomorphism of complexes, not just quasi)."""
    from .exactlin import is_unimodular

    degrees = set(f.source.degrees()) | set(f.target.degrees())
    for n in degrees:
        if f.source.rank(n) != f.target.rank(n):
            return False
        if f.source.rank(n) and not is_unimodular(f.component(n)):
            return False
    return True


# -- coefficients mod p ------------------------------------------------------------


def _rank_mod_p(m: IntMatrix, p: int) -> int:
    rows = [[x % p for x in row] for row in m.data]
    rank_count = 0
    r, c = m.rows, m.cols
    pivot_row = 0
    for col in range(c):
        pivot = None
        for i in range(pivot_row, r):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        inv = pow(rows[pivot_row][col], -1, p)
        rows[pivot_row] = [(x * inv) % p for x in rows[pivot_row]]
        for i in range(r):
            if i != pivot_row and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[pivot_row])]
        rank_count += 1
        pivot_row += 1
        if pivot_row == r:
            break
    return rank_count


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ModPComplex:
    """The complex with matrices reinterpreted over the field Z/p."""

    base: ChainComplex
    p: int

    def rank(self, n: int) -> int:
        return self.base.rank(n)

    def diff_mod_p(self, n: int) -> IntMatrix:
        m = self.base.diff(n)
        return IntMatrix([[x % self.p for x in row] for row in m.data], cols=m.cols)

    def homology_dim(self, n: int) -> int:
        """dim_Fp H_n = rank(n) - rank_p(d_n) - rank_p(d_{n+1})."""
        ker_dim = self.rank(n) - _rank_mod_p(self.base.diff(n), self.p)
        im_dim = _rank_mod_p(self.base.diff(n + 1), self.p)
        return ker_dim - im_dim


def reduce_mod_p(a: ChainComplex, p: int) -> ModPComplex:
    """Reinterpret over Z/p (p prime); homology by rank over the field."""
    if not _is_prime(p):
        raise FibseqError(f"{p} is not prime; Z/{p} is not a field")
    return ModPComplex(base=a, p=p)
