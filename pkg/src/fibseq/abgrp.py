"""Finitely generated abelian groups presented as subquotients of Z^r.

A Subquotient holds two lattices Z (cycles) and B (boundaries) of an ambient
free module with B contained in the span of Z; it presents the group Z/B.
Homology groups and Hom-set values are all of this shape.  Canonical values
are FgAbelianGroup instances in invariant-factor form, so isomorphism is
structural equality and needs no search.

Maps between subquotients are ambient integer matrices that carry cycles to
cycles and boundaries to boundaries.  The exactness predicate im = ker is
decided entirely by integer kernels and span membership: a cycle combination
lies in the kernel of a hom iff its image is a boundary combination, which
turns the kernel into the integer kernel of one stacked matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import Incomposable, MalformedSubquotient, NotInvertible, NotWellDefined
from .exactlin import (
    IntMatrix,
    column_span_basis,
    columns_in_span,
    hstack,
    kernel_basis,
    snf,
    solve_matrix,
)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Invariant-factor normal form: Z^free_rank + Z/d1 + ... with d1|d2|..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be >= 0")
        torsion = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        for d in torsion:
            if d < 2:
                raise ValueError(f"torsion entry {d} < 2 is not in normal form")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {torsion} violates the divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def is_isomorphic(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    """Canonical forms are unique, so isomorphism is equality."""
    return g == h


@dataclass(frozen=True)
class Subquotient:
    """The group (column span of cycles) / (column span of boundaries).

    cycle_retraction, when present, is a matrix P with P @ cycles = I; it
    exists whenever the cycle lattice is saturated with the given columns as
    a basis (true for every homology subquotient, where cycles come from
    kernel_basis).  It lets arbitrary homology-level maps be expressed as
    ambient matrices.
    """

    ambient_rank: int
    cycles: IntMatrix
    boundaries: IntMatrix
    cycle_retraction: Optional[IntMatrix] = None

    def __post_init__(self):
        if self.cycles.rows != self.ambient_rank:
            raise MalformedSubquotient(
                f"cycles have {self.cycles.rows} rows, ambient rank is {self.ambient_rank}"
            )
        if self.boundaries.rows != self.ambient_rank:
            raise MalformedSubquotient(
                f"boundaries have {self.boundaries.rows} rows, ambient rank is {self.ambient_rank}"
            )
        if not columns_in_span(self.cycles, self.boundaries):
            raise MalformedSubquotient("boundaries are not contained in the cycle span")
        if self.cycle_retraction is not None:
            prod = self.cycle_retraction @ self.cycles
            if prod != IntMatrix.identity(self.cycles.cols):
                raise MalformedSubquotient("cycle_retraction does not retract the cycle basis")

    @staticmethod
    def full(rank: int, boundaries: Optional[IntMatrix] = None) -> "Subquotient":
        """Z^rank modulo the given boundaries (cycles = identity)."""
        if boundaries is None:
            boundaries = IntMatrix.zeros(rank, 0)
        eye = IntMatrix.identity(rank)
        return Subquotient(rank, eye, boundaries, cycle_retraction=eye)

    @staticmethod
    def trivial() -> "Subquotient":
        return Subquotient.full(0)


def invariants(sq: Subquotient) -> FgAbelianGroup:
    """Canonical form of the subquotient: torsion = invariant factors of the
    boundaries expressed in a basis of the cycle lattice."""
    basis = column_span_basis(sq.cycles)
    coords = solve_matrix(basis, sq.boundaries)
    if coords is None:
        raise MalformedSubquotient("boundaries are not contained in the cycle span")
    dec = snf(coords)
    torsion = tuple(d for d in dec.diagonal if d >= 2)
    return FgAbelianGroup(free_rank=basis.cols - dec.rank, torsion=torsion)


@dataclass(frozen=True)
class SubquotientHom:
    """A hom presented by an ambient matrix (target ambient x source ambient)."""

    source: Subquotient
    target: Subquotient
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.ambient_rank, self.source.ambient_rank):
            raise NotWellDefined(
                f"ambient matrix is {self.matrix.shape}, expected "
                f"({self.target.ambient_rank}, {self.source.ambient_rank})"
            )


def induced(f_ambient: IntMatrix, src: Subquotient, tgt: Subquotient) -> SubquotientHom:
    """Wrap an ambient matrix as a hom, verifying well-definedness."""
    hom = SubquotientHom(src, tgt, f_ambient)
    if not columns_in_span(tgt.cycles, f_ambient @ src.cycles):
        raise NotWellDefined("matrix does not carry cycles into the target cycle span")
    if not columns_in_span(tgt.boundaries, f_ambient @ src.boundaries):
        raise NotWellDefined("matrix does not carry boundaries into the target boundary span")
    return hom


def identity_hom(sq: Subquotient) -> SubquotientHom:
    return SubquotientHom(sq, sq, IntMatrix.identity(sq.ambient_rank))


def zero_hom(src: Subquotient, tgt: Subquotient) -> SubquotientHom:
    return SubquotientHom(src, tgt, IntMatrix.zeros(tgt.ambient_rank, src.ambient_rank))


def compose_homs(g: SubquotientHom, f: SubquotientHom) -> SubquotientHom:
    if g.source != f.target:
        raise Incomposable("middle subquotients differ")
    return SubquotientHom(f.source, g.target, g.matrix @ f.matrix)


def kernel_generators(h: SubquotientHom) -> IntMatrix:
    """Ambient generators of ker(h) inside the source subquotient.

    A cycle combination x is in the kernel iff h(cycles @ x) is a boundary
    combination, i.e. (x, y) solves [h @ cycles | target boundaries] = 0.
    The x-parts of a kernel basis of that stacked matrix generate the kernel.
    """
    z = h.source.cycles.cols
    stacked = hstack(h.matrix @ h.source.cycles, h.target.boundaries)
    combos = kernel_basis(stacked).take_rows(range(z))
    return h.source.cycles @ combos


@dataclass(frozen=True)
class ExactnessVerdict:
    composite_zero: bool
    ker_in_im: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.ker_in_im

    def to_json(self) -> dict:
        return {
            "composite_zero": self.composite_zero,
            "ker_in_im": self.ker_in_im,
            "exact": self.exact,
        }


def is_exact_at(f: SubquotientHom, g: SubquotientHom) -> ExactnessVerdict:
    """Exactness of source --f--> middle --g--> target at the middle node."""
    if f.target != g.source:
        raise Incomposable("f.target and g.source are different subquotients")
    middle = f.target
    image_gens = f.matrix @ f.source.cycles
    composite_zero = columns_in_span(g.target.boundaries, g.matrix @ image_gens)
    ker_gens = kernel_generators(g)
    ker_in_im = columns_in_span(hstack(image_gens, middle.boundaries), ker_gens)
    return ExactnessVerdict(composite_zero=composite_zero, ker_in_im=ker_in_im)


def hom_from_cycle_images(
    src: Subquotient, tgt: Subquotient, images: IntMatrix
) -> SubquotientHom:
    """Hom sending the j-th cycle generator of src to column j of images.

    Needs src.cycle_retraction; the resulting ambient matrix agrees with the
    requested images exactly on the cycle basis.
    """
    if src.cycle_retraction is None:
        raise NotWellDefined("source subquotient carries no cycle retraction")
    if images.shape != (tgt.ambient_rank, src.cycles.cols):
        raise NotWellDefined(
            f"images are {images.shape}, expected ({tgt.ambient_rank}, {src.cycles.cols})"
        )
    return induced(images @ src.cycle_retraction, src, tgt)


def invert_iso(h: SubquotientHom) -> SubquotientHom:
    """Inverse of an isomorphism between subquotients with retractions.

    Preimages of the target's cycle generators are found by Diophantine
    solving against [h @ cycles | target boundaries]; failure there means h
    is not surjective.  The certified inverse is checked on both composites;
    failure of either means h was not injective.
    """
    src, tgt = h.source, h.target
    z = src.cycles.cols
    stacked = hstack(h.matrix @ src.cycles, tgt.boundaries)
    combos = solve_matrix(stacked, tgt.cycles)
    if combos is None:
        raise NotInvertible("hom is not surjective")
    preimages = src.cycles @ combos.take_rows(range(z))
    try:
        inv = hom_from_cycle_images(tgt, src, preimages)
    except NotWellDefined as exc:
        raise NotInvertible(f"no ambient inverse: {exc}") from exc
    left = inv.matrix @ h.matrix - IntMatrix.identity(src.ambient_rank)
    if not columns_in_span(src.boundaries, left @ src.cycles):
        raise NotInvertible("hom is not injective")
    right = h.matrix @ inv.matrix - IntMatrix.identity(tgt.ambient_rank)
    if not columns_in_span(tgt.boundaries, right @ tgt.cycles):
        raise NotInvertible("inverse fails on the target side")
    return inv


def is_iso(h: SubquotientHom) -> bool:
    """True iff h is an isomorphism (decided constructively when possible)."""
    try:
        invert_iso(h)
        return True
    except NotInvertible:
        return False
