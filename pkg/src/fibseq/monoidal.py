"""The closed symmetric monoidal structure on unbounded chain complexes.

Tensor product with the Koszul sign on the left factor's degree,

    (A (x) B)_n = sum over mu+nu=n of A_mu (x) B_nu,
    d(a (x) b) = da (x) b + (-1)^mu a (x) db,

and the internal Hom,

    Hom(A, B)_n = prod over mu of Hom(A_mu, B_{mu+n}),
    (dF)_mu = d_B ∘ F_mu + (-1)^{n+1} F_{mu-1} ∘ d_A.

Blocks are ordered by ascending mu in every composite degree, and the block
layout is returned alongside each complex so elements can be converted back
to matrices per degree (degree-0 cycles of Hom(A, B) are exactly the chain
maps A -> B).

Applying Hom(-, A) to the two-term acyclic complex on the unit gives a
second based path functor with blocks A_n (+) A_{n+1} and differential
[[d, 0], [(-1)^{n+1} id, d]]; its loop complex is the unsigned shift and its
homotopy kernel carries the sign (-1)^{n+1} on the f block.  These differ
from the pointed-functor formulas only by the sign twist
diag(id, (-1)^{n+1} id), which compare_path_functors returns as an explicit
chain isomorphism commuting with the projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Sequence

from .abgrp import FgAbelianGroup, is_isomorphic
from .chain import (
    NONNEGATIVE,
    UNBOUNDED,
    ChainComplex,
    ChainMap,
    disk,
    mapping_cone,
    identity_map,
    sphere,
)
from .errors import FibseqError, InternalCheckError, WrongVariant
from .exactlin import IntMatrix, block_matrix, kernel_with_retraction, rank, snf


@dataclass(frozen=True)
class BlockLayout:
    """Where each (mu-indexed) summand sits inside every composite degree.

    blocks[n] is a tuple of (mu, offset, size) triples, ascending in mu and
    partitioning [0, rank_n).
    """

    blocks: Dict[int, tuple[tuple[int, int, int], ...]]

    def find(self, n: int, mu: int) -> tuple[int, int]:
        for m, offset, size in self.blocks.get(n, ()):
            if m == mu:
                return offset, size
        return 0, 0


@dataclass(frozen=True)
class GradedWithLayout:
    complex: ChainComplex
    layout: BlockLayout


def _require_unbounded(*complexes: ChainComplex) -> None:
    for c in complexes:
        if c.variant != UNBOUNDED:
            raise WrongVariant("monoidal constructions work with unbounded complexes")


def tensor(a: ChainComplex, b: ChainComplex) -> GradedWithLayout:
    """A (x) B with the Koszul differential; d∘d = 0 is asserted."""
    _require_unbounded(a, b)
    layout: Dict[int, tuple[tuple[int, int, int], ...]] = {}
    ranks: Dict[int, int] = {}
    degrees = sorted(
        {mu + nu for mu in a.degrees() for nu in b.degrees()}
    )
    for n in degrees:
        offset = 0
        blocks = []
        for mu in sorted(a.degrees()):
            size = a.rank(mu) * b.rank(n - mu)
            if size:
                blocks.append((mu, offset, size))
                offset += size
        if offset:
            ranks[n] = offset
            layout[n] = tuple(blocks)
    diffs: Dict[int, IntMatrix] = {}
    for n in ranks:
        if ranks.get(n - 1, 0) == 0:
            continue
        rows = []
        for tmu, toff, tsize in layout[n - 1]:
            row = []
            for smu, soff, ssize in layout[n]:
                if tmu == smu - 1:
                    # d_A (x) id
                    block = a.diff(smu).kron(IntMatrix.identity(b.rank(n - smu)))
                elif tmu == smu:
                    # (-1)^mu id (x) d_B
                    block = IntMatrix.identity(a.rank(smu)).kron(b.diff(n - smu))
                    if smu % 2:
                        block = block.scale(-1)
                else:
                    block = IntMatrix.zeros(tsize, ssize)
                row.append(block)
            rows.append(row)
        diffs[n] = block_matrix(rows)
    out = ChainComplex(ranks, diffs, UNBOUNDED, check=True)
    return GradedWithLayout(out, BlockLayout(layout))


def tensor_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """f (x) g on tensor products (degree-0 maps, so no Koszul sign)."""
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    comps: Dict[int, IntMatrix] = {}
    for n, rank_n in src.complex.ranks.items():
        if tgt.complex.rank(n) == 0:
            continue
        rows = []
        for tmu, toff, tsize in tgt.layout.blocks.get(n, ()):
            row = []
            for smu, soff, ssize in src.layout.blocks.get(n, ()):
                if tmu == smu:
                    row.append(f.component(smu).kron(g.component(n - smu)))
                else:
                    row.append(IntMatrix.zeros(tsize, ssize))
            rows.append(row)
        if rows:
            comps[n] = block_matrix(rows)
    return ChainMap(src.complex, tgt.complex, comps, check=True)


def internal_hom(a: ChainComplex, b: ChainComplex) -> GradedWithLayout:
    """Hom(A, B) with blocks vec(row-major) of Hom(A_mu, B_{mu+n})."""
    _require_unbounded(a, b)
    layout: Dict[int, tuple[tuple[int, int, int], ...]] = {}
    ranks: Dict[int, int] = {}
    degrees = sorted({nb - mu for mu in a.degrees() for nb in b.degrees()})
    for n in degrees:
        offset = 0
        blocks = []
        for mu in sorted(a.degrees()):
            size = a.rank(mu) * b.rank(mu + n)
            if size:
                blocks.append((mu, offset, size))
                offset += size
        if offset:
            ranks[n] = offset
            layout[n] = tuple(blocks)
    diffs: Dict[int, IntMatrix] = {}
    for n in ranks:
        if ranks.get(n - 1, 0) == 0:
            continue
        sign = -1 if n % 2 == 0 else 1  # (-1)^{n+1}
        rows = []
        for tmu, toff, tsize in layout[n - 1]:
            row = []
            for smu, soff, ssize in layout[n]:
                if tmu == smu:
                    # F_mu |-> d_B ∘ F_mu ; vec_rm(d_B X) = (d_B kron I) vec_rm(X)
                    block = b.diff(smu + n).kron(IntMatrix.identity(a.rank(smu)))
                elif tmu == smu + 1:
                    # F_mu |-> (-1)^{n+1} F_mu ∘ d_A at index mu+1
                    # vec_rm(X d_A) = (I kron d_A^T) vec_rm(X)
                    block = (
                        IntMatrix.identity(b.rank(smu + n))
                        .kron(a.diff(smu + 1).transpose())
                        .scale(sign)
                    )
                else:
                    block = IntMatrix.zeros(tsize, ssize)
                row.append(block)
            rows.append(row)
        diffs[n] = block_matrix(rows)
    out = ChainComplex(ranks, diffs, UNBOUNDED, check=True)
    return GradedWithLayout(out, BlockLayout(layout))


def hom_element_to_chain_map(
    hom: GradedWithLayout, a: ChainComplex, b: ChainComplex, vec: Sequence[int]
) -> ChainMap:
    """Interpret a degree-0 cycle of Hom(A, B) as the chain map it is."""
    comps: Dict[int, IntMatrix] = {}
    for mu, offset, size in hom.layout.blocks.get(0, ()):
        rows, cols = b.rank(mu), a.rank(mu)
        chunk = list(vec[offset : offset + size])
        comps[mu] = IntMatrix(
            [chunk[i * cols : (i + 1) * cols] for i in range(rows)], cols=cols
        )
    return ChainMap(a, b, comps, check=True)


def chain_map_group(a: ChainComplex, b: ChainComplex) -> FgAbelianGroup:
    """The group of chain maps A -> B: degree-0 cycles of Hom(A, B)."""
    hom = internal_hom(a, b)
    d0 = hom.complex.diff(0)
    return FgAbelianGroup(free_rank=d0.cols - rank(d0), torsion=())


def adjunction_check(a: ChainComplex, b: ChainComplex, c: ChainComplex) -> bool:
    """Hom(A (x) B, C) and Hom(A, Hom(B, C)) have isomorphic chain-map groups."""
    left = chain_map_group(tensor(a, b).complex, c)
    right = chain_map_group(a, internal_hom(b, c).complex)
    return is_isomorphic(left, right)


def cone_unit() -> ChainComplex:
    """The two-term acyclic complex on the unit: Z -> Z in degrees 1, 0."""
    cone = disk(1)
    mc, _, _ = mapping_cone(identity_map(sphere(0)))
    if cone != mc:
        raise InternalCheckError("unit cone differs from the cone of the identity")
    return cone


def _hom_path_blocks(a: ChainComplex) -> ChainComplex:
    """Direct block formula: A_n (+) A_{n+1}, d = [[d, 0], [(-1)^{n+1}, d]]."""
    degrees = set(a.degrees()) | {n - 1 for n in a.degrees()}
    ranks = {n: a.rank(n) + a.rank(n + 1) for n in degrees}
    diffs = {}
    for n in degrees:
        if ranks.get(n, 0) == 0 or ranks.get(n - 1, 0) == 0:
            continue
        sign = -1 if n % 2 == 0 else 1
        r0, r1 = a.rank(n), a.rank(n + 1)
        s0 = a.rank(n - 1)
        diffs[n] = block_matrix(
            [
                [a.diff(n), IntMatrix.zeros(s0, r1)],
                [IntMatrix.identity(r0).scale(sign), a.diff(n + 1)],
            ]
        )
    return ChainComplex(ranks, diffs, UNBOUNDED, check=False)


def hom_path_space(a: ChainComplex) -> tuple[ChainComplex, ChainMap]:
    """Hom(cone_unit, A), computed two ways and asserted equal.

    Returns the total complex and the first-block projection onto A (the
    image of the unit inclusion under Hom(-, A)).
    """
    _require_unbounded(a)
    direct = _hom_path_blocks(a)
    via_hom = internal_hom(cone_unit(), a).complex
    if direct != via_hom:
        raise InternalCheckError("internal-Hom path complex differs from block formula")
    proj = {
        n: block_matrix(
            [[IntMatrix.identity(a.rank(n)), IntMatrix.zeros(a.rank(n), a.rank(n + 1))]]
        )
        for n in direct.ranks
        if a.rank(n)
    }
    return direct, ChainMap(direct, a, proj, check=False)


def hom_loop_space(a: ChainComplex) -> ChainComplex:
    """(O A)_n = A_{n+1} with the unsigned differential d_{A,n+1}.

    The first call per complex certifies the block formula as the strict
    kernel of the path projection (an explicit chain isomorphism with the
    generic pullback); later calls reuse the cached certificate.
    """
    _require_unbounded(a)
    ranks = {n - 1: r for n, r in a.ranks.items()}
    diffs = {n - 1: m for n, m in a.diffs.items()}
    loop = ChainComplex(ranks, diffs, UNBOUNDED, check=False)
    _certify_hom_loop(a, loop)
    return loop


@lru_cache(maxsize=1024)
def _certify_hom_loop(a: ChainComplex, loop: ChainComplex) -> bool:
    from .chain import is_chain_iso, zero_complex, zero_map
    from .modelcat import pullback, universal_map

    total, proj = hom_path_space(a)
    zc = zero_complex(UNBOUNDED)
    pb = pullback(zero_map(zc, a), proj)
    incl_comps = {}
    for n in loop.degrees():
        r0, r1 = a.rank(n), a.rank(n + 1)
        incl_comps[n] = block_matrix(
            [[IntMatrix.zeros(r0, r1)], [IntMatrix.identity(r1)]]
        )
    incl = ChainMap(loop, total, incl_comps, check=True)
    comparison = universal_map(pb, incl, zero_map(loop, zc))
    if not is_chain_iso(comparison):
        raise InternalCheckError("loop complex is not the kernel of the path projection")
    return True


def hom_loop_space_map(f: ChainMap) -> ChainMap:
    comps = {n - 1: m for n, m in f.components.items()}
    return ChainMap(
        hom_loop_space(f.source), hom_loop_space(f.target), comps, check=False
    )


def hom_homotopy_kernel(f: ChainMap) -> tuple[ChainComplex, ChainMap]:
    """The internal-Hom homotopy kernel with its projection onto the source.

    Delegates to the generic kernel builder with the Hom path functor, which
    certifies the block formula against the pullback and the connecting map
    against the universal arrow.
    """
    from .puppe import homotopy_kernel

    hk = homotopy_kernel(f, functor="monoidal")
    return hk.complex, hk.projection


def hom_kernel_blocks(f: ChainMap) -> ChainComplex:
    """(K f)_n = A_n (+) B_{n+1} with d = [[d_A, 0], [(-1)^{n+1} f, d_B]]."""
    _require_unbounded(f.source, f.target)
    a, b = f.source, f.target
    degrees = set(a.degrees()) | {n - 1 for n in b.degrees()}
    ranks = {n: a.rank(n) + b.rank(n + 1) for n in degrees}
    diffs = {}
    for n in degrees:
        if ranks.get(n, 0) == 0 or ranks.get(n - 1, 0) == 0:
            continue
        sign = -1 if n % 2 == 0 else 1
        diffs[n] = block_matrix(
            [
                [a.diff(n), IntMatrix.zeros(a.rank(n - 1), b.rank(n + 1))],
                [f.component(n).scale(sign), b.diff(n + 1)],
            ]
        )
    return ChainComplex(ranks, diffs, UNBOUNDED, check=False)


# The closing identification between the two kernel conventions uses the
# alternative cone differential [[d_A, 0], [(-1)^n f, d_B]]; it stays an
# internal detail of the comparison below rather than a public second
# mapping-cone API.


def _sign_twist(src: ChainComplex, first_rank, second_rank) -> Dict[int, IntMatrix]:
    comps = {}
    for n in src.degrees():
        r0, r1 = first_rank(n), second_rank(n)
        sign = -1 if n % 2 == 0 else 1
        comps[n] = block_matrix(
            [
                [IntMatrix.identity(r0), IntMatrix.zeros(r0, r1)],
                [IntMatrix.zeros(r1, r0), IntMatrix.identity(r1).scale(sign)],
            ]
        )
    return comps


def compare_path_functors(a: ChainComplex) -> ChainMap:
    """The explicit iso Path(A) -> Hom-path(A): diag(id, (-1)^{n+1} id).

    Verified as a chain isomorphism commuting with both projections; the
    assertion is part of the contract.
    """
    from .chain import compose, is_chain_iso
    from .puppe import based_path_space

    pointed = based_path_space(a)
    homtotal, homproj = hom_path_space(a)
    comps = _sign_twist(pointed.complex, lambda n: a.rank(n), lambda n: a.rank(n + 1))
    phi = ChainMap(pointed.complex, homtotal, comps, check=True)
    if not is_chain_iso(phi):
        raise InternalCheckError("path comparison is not an isomorphism")
    if compose(homproj, phi) != pointed.projection:
        raise InternalCheckError("path comparison does not commute with the projections")
    return phi


def compare_kernels(f: ChainMap) -> ChainMap:
    """The explicit iso K_f -> Hom-kernel(f), the same sign twist."""
    from .chain import compose, is_chain_iso
    from .puppe import homotopy_kernel

    hk = homotopy_kernel(f)
    twisted = hom_kernel_blocks(f)
    a, b = f.source, f.target
    comps = _sign_twist(hk.complex, lambda n: a.rank(n), lambda n: b.rank(n + 1))
    phi = ChainMap(hk.complex, twisted, comps, check=True)
    if not is_chain_iso(phi):
        raise InternalCheckError("kernel comparison is not an isomorphism")
    proj = {
        n: block_matrix(
            [[IntMatrix.identity(a.rank(n)), IntMatrix.zeros(a.rank(n), b.rank(n + 1))]]
        )
        for n in twisted.ranks
        if a.rank(n)
    }
    twisted_proj = ChainMap(twisted, a, proj, check=False)
    if compose(twisted_proj, phi) != hk.projection:
        raise InternalCheckError("kernel comparison does not commute with the projections")
    return phi
