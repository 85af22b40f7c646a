"""Based path fibrations, loop functors, homotopy kernels and Puppe towers.

For a chain map f : A -> B the homotopy kernel K_f is the strict pullback of
the based path fibration over B along f; with the concrete path complex
(Path B)_n = B_n (+) B_{n+1}, d = [[d_B, 0], [-id, -d_B]], the kernel comes
out as the shifted mapping cone,

    (K_f)_n = A_n (+) B_{n+1},   d = [[d_A, 0], [-f, -d_B]],

with projection onto the A block and a connecting inclusion of the loop
complex (the shift B[-1]) into the B block.  Iterating gives Puppe's long
homotopy fiber sequence ... -> Omega X -> Omega B -> K_f -> A -> B, every
three consecutive nodes of which form a homotopy fiber square whose corner
is stored explicitly (corners cycle: Path B, 0, Path A, then their loops).

In the nonnegative variant the path and loop complexes are truncated: the
degree-0 term becomes the integer kernel of the incoming differential,
presented in its deterministic kernel basis.

A second tower builder, extend_by_fibrations, grows the sequence the way
the abstract existence proof does: factor f as quasi-iso + fibration, then
repeatedly pull the path fibration of the previous node back along the last
arrow.  Both towers extend the same morphism, so their node-by-node homology
must agree; compare_extensions checks exactly that.

Every construction is cross-checked on the spot: homotopy kernels against
the generic pullback (via an explicit chain isomorphism), connecting maps
against the universal arrow into that pullback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from . import monoidal
from .abgrp import FgAbelianGroup, is_isomorphic
from .chain import (
    NONNEGATIVE,
    UNBOUNDED,
    ChainComplex,
    ChainMap,
    compose,
    homology_degrees,
    homology_group,
    is_chain_iso,
    shift,
    shift_map,
    zero_complex,
    zero_map,
)
from .errors import (
    FibseqError,
    IncompatibleRestrictions,
    InternalCheckError,
    WrongVariant,
)
from .exactlin import IntMatrix, block_matrix, kernel_with_retraction
from .modelcat import (
    CommSquare,
    ModelSquareWitness,
    factor_we_fib,
    is_acyclic,
    is_model_square,
    pullback,
    universal_map,
)


@dataclass(frozen=True)
class PathFibration:
    """An acyclic total complex fibered over its base."""

    complex: ChainComplex
    projection: ChainMap
    base: ChainComplex
    # Truncation data in the nonnegative variant: the degree-0 term is the
    # kernel of the degree-0 path differential in this basis.
    deg0_basis: Optional[IntMatrix] = None
    deg0_retraction: Optional[IntMatrix] = None


def based_path_space(b: ChainComplex) -> PathFibration:
    """(Path B)_n = B_n (+) B_{n+1} with d = [[d, 0], [-id, -d]]."""
    if b.variant == NONNEGATIVE and b.rank(0) > 0:
        raise WrongVariant(
            "based_path_space would create degree -1; use truncated_path_space"
        )
    degrees = set(b.degrees()) | {n - 1 for n in b.degrees()}
    ranks = {n: b.rank(n) + b.rank(n + 1) for n in degrees}
    diffs = {}
    for n in degrees:
        if ranks.get(n - 1, 0) == 0 or ranks.get(n, 0) == 0:
            continue
        r0, r1 = b.rank(n), b.rank(n + 1)
        s0 = b.rank(n - 1)
        diffs[n] = block_matrix(
            [
                [b.diff(n), IntMatrix.zeros(s0, r1)],
                [IntMatrix.identity(r0).scale(-1), b.diff(n + 1).scale(-1)],
            ]
        )
    total = ChainComplex(ranks, diffs, b.variant, check=False)
    proj = {
        n: block_matrix(
            [[IntMatrix.identity(b.rank(n)), IntMatrix.zeros(b.rank(n), b.rank(n + 1))]]
        )
        for n in degrees
        if b.rank(n)
    }
    return PathFibration(
        complex=total,
        projection=ChainMap(total, b, proj, check=False),
        base=b,
    )


def _path_diff_matrix(b: ChainComplex, n: int) -> IntMatrix:
    """Ambient differential of the untruncated path complex at degree n."""
    r0, r1 = b.rank(n), b.rank(n + 1)
    s0, s1 = b.rank(n - 1), b.rank(n)
    return block_matrix(
        [
            [b.diff(n), IntMatrix.zeros(s0, r1)],
            [IntMatrix.identity(r0).scale(-1), b.diff(n + 1).scale(-1)],
        ]
    )


def truncated_path_space(b: ChainComplex) -> PathFibration:
    """Nonnegative path fibration: degrees >= 1 as in based_path_space,
    degree 0 replaced by the kernel of the degree-0 path differential."""
    if b.variant != NONNEGATIVE:
        raise WrongVariant("truncated_path_space needs a nonnegative complex")
    basis, retraction = kernel_with_retraction(_path_diff_matrix(b, 0))
    ranks = {0: basis.cols}
    degrees = set(b.degrees()) | {n - 1 for n in b.degrees()}
    for n in degrees:
        if n >= 1:
            ranks[n] = b.rank(n) + b.rank(n + 1)
    diffs = {}
    for n, r in ranks.items():
        if n <= 0 or r == 0 or ranks.get(n - 1, 0) == 0:
            continue
        ambient = _path_diff_matrix(b, n)
        if n == 1:
            coords = retraction @ ambient
            if basis @ coords != ambient:
                raise InternalCheckError("path truncation: image escapes the kernel")
            diffs[n] = coords
        else:
            diffs[n] = ambient
    total = ChainComplex(ranks, diffs, NONNEGATIVE, check=False)
    proj = {}
    for n, r in total.ranks.items():
        if b.rank(n) == 0:
            continue
        if n == 0:
            proj[n] = basis.take_rows(range(b.rank(0)))
        else:
            proj[n] = block_matrix(
                [[IntMatrix.identity(b.rank(n)), IntMatrix.zeros(b.rank(n), b.rank(n + 1))]]
            )
    return PathFibration(
        complex=total,
        projection=ChainMap(total, b, proj, check=True),
        base=b,
        deg0_basis=basis,
        deg0_retraction=retraction,
    )


def loop_space(b: ChainComplex) -> ChainComplex:
    """Omega B = B[-1], differential negated by the shift sign rule."""
    return shift(b, -1)


def loop_space_map(f: ChainMap) -> ChainMap:
    return shift_map(f, -1)


def truncated_loop_space(b: ChainComplex) -> ChainComplex:
    """Nonnegative loop complex: ... -> B_2 -> ker d_{B,1} -> 0 with -d."""
    if b.variant != NONNEGATIVE:
        raise WrongVariant("truncated_loop_space needs a nonnegative complex")
    basis, retraction = kernel_with_retraction(b.diff(1))
    ranks = {0: basis.cols}
    for n in b.degrees():
        if n >= 2:
            ranks[n - 1] = b.rank(n)
    diffs = {}
    for n in ranks:
        if n < 1 or ranks.get(n, 0) == 0 or ranks.get(n - 1, 0) == 0:
            continue
        if n == 1:
            ambient = b.diff(2).scale(-1)
            coords = retraction @ ambient
            if basis @ coords != ambient:
                raise InternalCheckError("loop truncation: image escapes the kernel")
            diffs[n] = coords
        else:
            diffs[n] = b.diff(n + 1).scale(-1)
    return ChainComplex(ranks, diffs, NONNEGATIVE, check=False)


def truncated_loop_space_map(f: ChainMap) -> ChainMap:
    src = truncated_loop_space(f.source)
    tgt = truncated_loop_space(f.target)
    ka, _ = kernel_with_retraction(f.source.diff(1))
    kb, retb = kernel_with_retraction(f.target.diff(1))
    comps = {}
    if ka.cols and kb.cols:
        image = f.component(1) @ ka
        coords = retb @ image
        if kb @ coords != image:
            raise InternalCheckError("loop map does not preserve degree-1 cycles")
        comps[0] = coords
    for n in src.degrees():
        if n >= 1:
            comps[n] = f.component(n + 1)
    return ChainMap(src, tgt, comps, check=True)


@dataclass(frozen=True)
class HomotopyKernel:
    """K_f with its projection, corner map into the path fibration, and the
    connecting inclusion of the loop complex."""

    complex: ChainComplex
    projection: ChainMap  # K -> source of f
    corner_map: ChainMap  # K -> path total complex
    path: PathFibration  # over the target of f
    connecting: ChainMap  # loop(target) -> K
    source_map: ChainMap  # f itself
    loop_of_target: ChainComplex
    # truncation data (nonnegative variant only)
    deg0_basis: Optional[IntMatrix] = None
    deg0_retraction: Optional[IntMatrix] = None


# ---------------------------------------------------------------------------
# Engine strategies: the pointed functor per variant, and the internal-Hom
# functor from the monoidal module (unbounded only).
# ---------------------------------------------------------------------------


class _Strategy:
    name: str

    def path(self, b: ChainComplex) -> PathFibration:
        raise NotImplementedError

    def loop(self, b: ChainComplex) -> ChainComplex:
        raise NotImplementedError

    def loop_map(self, f: ChainMap) -> ChainMap:
        raise NotImplementedError

    def kernel_blocks(self, f: ChainMap) -> ChainComplex:
        """The canonical block formula for the homotopy kernel."""
        raise NotImplementedError

    def path_inclusion(self, b: ChainComplex, path: PathFibration) -> ChainMap:
        """loop(b) -> path total complex, the second-block inclusion."""
        raise NotImplementedError


def _second_block_inclusion(
    loop_cx: ChainComplex, path: PathFibration, b: ChainComplex
) -> ChainMap:
    comps = {}
    for n in loop_cx.degrees():
        r0, r1 = b.rank(n), b.rank(n + 1)
        ambient = block_matrix([[IntMatrix.zeros(r0, r1)], [IntMatrix.identity(r1)]])
        if n == 0 and path.deg0_basis is not None:
            ka, _ = kernel_with_retraction(b.diff(1))
            image = ambient @ ka
            coords = path.deg0_retraction @ image
            if path.deg0_basis @ coords != image:
                raise InternalCheckError("loop inclusion escapes the truncated path kernel")
            comps[n] = coords
        else:
            comps[n] = ambient
    return ChainMap(loop_cx, path.complex, comps, check=True)


class _Standard(_Strategy):
    name = "standard"

    def __init__(self, variant: str):
        self.variant = variant

    def path(self, b: ChainComplex) -> PathFibration:
        if self.variant == NONNEGATIVE:
            return truncated_path_space(b)
        return based_path_space(b)

    def loop(self, b: ChainComplex) -> ChainComplex:
        if self.variant == NONNEGATIVE:
            return truncated_loop_space(b)
        return loop_space(b)

    def loop_map(self, f: ChainMap) -> ChainMap:
        if self.variant == NONNEGATIVE:
            return truncated_loop_space_map(f)
        return loop_space_map(f)

    def kernel_blocks(self, f: ChainMap) -> ChainComplex:
        a, b = f.source, f.target
        degrees = set(a.degrees()) | {n - 1 for n in b.degrees()}
        ranks = {n: a.rank(n) + b.rank(n + 1) for n in degrees}
        diffs = {}
        for n in degrees:
            if ranks.get(n, 0) == 0 or ranks.get(n - 1, 0) == 0:
                continue
            diffs[n] = block_matrix(
                [
                    [a.diff(n), IntMatrix.zeros(a.rank(n - 1), b.rank(n + 1))],
                    [f.component(n).scale(-1), b.diff(n + 1).scale(-1)],
                ]
            )
        return ChainComplex(ranks, diffs, UNBOUNDED, check=False)

    def path_inclusion(self, b: ChainComplex, path: PathFibration) -> ChainMap:
        return _second_block_inclusion(self.loop(b), path, b)


class _Monoidal(_Strategy):
    """Internal-Hom path functor; sign of the twist depends on the degree."""

    name = "monoidal"

    def path(self, b: ChainComplex) -> PathFibration:
        total, proj = monoidal.hom_path_space(b)
        return PathFibration(complex=total, projection=proj, base=b)

    def loop(self, b: ChainComplex) -> ChainComplex:
        return monoidal.hom_loop_space(b)

    def loop_map(self, f: ChainMap) -> ChainMap:
        return monoidal.hom_loop_space_map(f)

    def kernel_blocks(self, f: ChainMap) -> ChainComplex:
        return monoidal.hom_kernel_blocks(f)

    def path_inclusion(self, b: ChainComplex, path: PathFibration) -> ChainMap:
        return _second_block_inclusion(self.loop(b), path, b)


def _strategy(variant: str, functor: str) -> _Strategy:
    if functor == "monoidal":
        if variant != UNBOUNDED:
            raise WrongVariant("the internal-Hom path functor needs unbounded complexes")
        return _Monoidal()
    if functor != "standard":
        raise FibseqError(f"unknown path functor {functor!r}")
    return _Standard(variant)


def _truncate_kernel(
    blocks: ChainComplex, f: ChainMap
) -> tuple[ChainComplex, IntMatrix, IntMatrix]:
    """Nonnegative homotopy kernel: replace degree 0 by ker of the ambient
    degree-0 differential, in its kernel basis."""
    ambient0 = blocks.diff(0)
    basis, retraction = kernel_with_retraction(ambient0)
    ranks = {n: r for n, r in blocks.ranks.items() if n >= 1}
    if basis.cols:
        ranks[0] = basis.cols
    diffs = {n: m for n, m in blocks.diffs.items() if n >= 2}
    if ranks.get(1) and ranks.get(0):
        ambient1 = blocks.diff(1)
        coords = retraction @ ambient1
        if basis @ coords != ambient1:
            raise InternalCheckError("kernel truncation: image escapes the kernel")
        diffs[1] = coords
    return ChainComplex(ranks, diffs, NONNEGATIVE, check=False), basis, retraction


def homotopy_kernel(f: ChainMap, functor: str = "standard") -> HomotopyKernel:
    """K_f = path fibration over the target pulled back along f, presented by
    the canonical block formula and certified against the generic pullback
    by an explicit chain isomorphism."""
    strat = _strategy(f.source.variant, functor)
    a, b = f.source, f.target
    path = strat.path(b)
    blocks = strat.kernel_blocks(f)

    deg0_basis = None
    deg0_retraction = None
    if a.variant == NONNEGATIVE:
        kernel_cx, deg0_basis, deg0_retraction = _truncate_kernel(blocks, f)
    else:
        kernel_cx = blocks

    def at0(ambient_matrix: IntMatrix, n: int, into_path: bool) -> IntMatrix:
        """Convert an ambient block matrix to truncated coordinates."""
        mat = ambient_matrix
        if n == 0 and deg0_basis is not None:
            mat = mat @ deg0_basis
        if n == 0 and into_path and path.deg0_basis is not None:
            coords = path.deg0_retraction @ mat
            if path.deg0_basis @ coords != mat:
                raise InternalCheckError("corner map escapes the truncated path kernel")
            mat = coords
        return mat

    proj_comps = {}
    corner_comps = {}
    for n in kernel_cx.degrees():
        ra, rb1 = a.rank(n), b.rank(n + 1)
        proj_ambient = block_matrix(
            [[IntMatrix.identity(ra), IntMatrix.zeros(ra, rb1)]]
        )
        corner_ambient = block_matrix(
            [
                [f.component(n), IntMatrix.zeros(b.rank(n), rb1)],
                [IntMatrix.zeros(rb1, ra), IntMatrix.identity(rb1)],
            ]
        )
        if ra:
            proj_comps[n] = at0(proj_ambient, n, into_path=False)
        corner_comps[n] = at0(corner_ambient, n, into_path=True)
    projection = ChainMap(kernel_cx, a, proj_comps, check=True)
    corner_map = ChainMap(kernel_cx, path.complex, corner_comps, check=True)

    loop_b = strat.loop(b)
    incl = strat.path_inclusion(b, path)
    conn_comps = {}
    for n in loop_b.degrees():
        ra, rb1 = a.rank(n), b.rank(n + 1)
        ambient = block_matrix([[IntMatrix.zeros(ra, rb1)], [IntMatrix.identity(rb1)]])
        if n == 0 and a.variant == NONNEGATIVE:
            kb, _ = kernel_with_retraction(b.diff(1))
            image = ambient @ kb
            coords = deg0_retraction @ image if deg0_basis is not None else image
            if deg0_basis is not None and deg0_basis @ coords != image:
                raise InternalCheckError("connecting map escapes the kernel basis")
            conn_comps[n] = coords
        else:
            conn_comps[n] = ambient
    connecting = ChainMap(loop_b, kernel_cx, conn_comps, check=True)

    # Certify the block formula against the generic pullback, and the
    # connecting map against the universal arrow (phi_1 = inclusion,
    # phi_2 = 0).
    pb = pullback(path.projection, f)
    iso = universal_map(pb, projection, corner_map)
    if not is_chain_iso(iso):
        raise InternalCheckError("homotopy kernel does not match the generic pullback")
    universal_conn = universal_map(pb, zero_map(loop_b, a), incl)
    if compose(iso, connecting) != universal_conn:
        raise InternalCheckError("connecting map differs from the universal arrow")

    return HomotopyKernel(
        complex=kernel_cx,
        projection=projection,
        corner_map=corner_map,
        path=path,
        connecting=connecting,
        source_map=f,
        loop_of_target=loop_b,
        deg0_basis=deg0_basis,
        deg0_retraction=deg0_retraction,
    )


def connecting_map(f: ChainMap, functor: str = "standard") -> ChainMap:
    """The universal arrow loop(B) -> K_f (a second-block inclusion)."""
    return homotopy_kernel(f, functor).connecting


# ---------------------------------------------------------------------------
# Long fiber sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiberTriple:
    """Three consecutive nodes with their explicit corner and verdicts."""

    a2: ChainMap  # A2 -> A1
    a1: ChainMap  # A1 -> A0
    corner: ChainComplex
    to_corner: ChainMap  # A2 -> corner
    from_corner: ChainMap  # corner -> A0
    corner_acyclic: bool
    witness: ModelSquareWitness

    @property
    def square(self) -> CommSquare:
        return CommSquare(
            a_top=self.a2, a_left=self.to_corner,
            b_right=self.a1, c_bottom=self.from_corner,
        )

    @property
    def verified(self) -> bool:
        return self.corner_acyclic and self.witness.verdict


def _make_triple(
    a2: ChainMap, a1: ChainMap, corner: ChainComplex,
    to_corner: ChainMap, from_corner: ChainMap,
) -> FiberTriple:
    square = CommSquare(a_top=a2, a_left=to_corner, b_right=a1, c_bottom=from_corner)
    return FiberTriple(
        a2=a2,
        a1=a1,
        corner=corner,
        to_corner=to_corner,
        from_corner=from_corner,
        corner_acyclic=is_acyclic(corner),
        witness=is_model_square(square),
    )


def loop_fiber_triple(t: FiberTriple, functor: str = "standard") -> FiberTriple:
    """Apply the loop functor to a whole fiber triple and re-verify it."""
    strat = _strategy(t.a1.source.variant, functor)
    return _make_triple(
        a2=strat.loop_map(t.a2),
        a1=strat.loop_map(t.a1),
        corner=strat.loop(t.corner),
        to_corner=strat.loop_map(t.to_corner),
        from_corner=strat.loop_map(t.from_corner),
    )


@dataclass(frozen=True)
class LongFiberSequence:
    """Finite prefix of a long homotopy fiber sequence (index 0 = A_0)."""

    nodes: tuple[ChainComplex, ...]
    arrows: tuple[ChainMap, ...]  # arrows[k] : nodes[k+1] -> nodes[k]
    triples: tuple[FiberTriple, ...]
    provenance: Literal["puppe", "efunctor"]
    functor: str
    restriction: ChainMap
    recorded_we: Optional[ChainMap] = None

    @property
    def all_verified(self) -> bool:
        return all(t.verified for t in self.triples)

    @property
    def variant(self) -> str:
        return self.restriction.source.variant

    def node_homology(self, k: int) -> dict[int, FgAbelianGroup]:
        node = self.nodes[k]
        return {n: homology_group(node, n) for n in homology_degrees(node)}


def puppe_sequence(
    f: ChainMap, depth: int, functor: str = "standard"
) -> LongFiberSequence:
    """Puppe's tower ... -> loop(A) -> loop(B) -> K_f -> A -> B.

    depth counts nodes; node k + 3 is the loop of node k bit-exactly and
    arrow k + 3 the looped arrow, so the tower is determined by its first
    three nodes.  Every consecutive triple is verified as a homotopy fiber
    square with its corner stored explicitly.
    """
    if depth < 2:
        raise FibseqError("puppe_sequence needs depth >= 2")
    strat = _strategy(f.source.variant, functor)
    variant = f.source.variant
    hk = homotopy_kernel(f, functor)

    nodes = [f.target, f.source]
    arrows = [f]
    if depth >= 3:
        nodes.append(hk.complex)
        arrows.append(hk.projection)
    if depth >= 4:
        nodes.append(hk.loop_of_target)
        arrows.append(hk.connecting)
    for k in range(4, depth):
        nodes.append(strat.loop(nodes[k - 3]))
        arrows.append(strat.loop_map(arrows[k - 4]))

    triples: list[FiberTriple] = []
    base_triples: list[FiberTriple] = []
    if depth >= 3:
        base_triples.append(
            _make_triple(
                a2=hk.projection,
                a1=f,
                corner=hk.path.complex,
                to_corner=hk.corner_map,
                from_corner=hk.path.projection,
            )
        )
    if depth >= 4:
        zero = zero_complex(variant)
        base_triples.append(
            _make_triple(
                a2=hk.connecting,
                a1=hk.projection,
                corner=zero,
                to_corner=zero_map(nodes[3], zero),
                from_corner=zero_map(zero, nodes[1]),
            )
        )
    if depth >= 5:
        path_a = strat.path(f.source)
        incl_a = strat.path_inclusion(f.source, path_a)
        to_kernel = _corner_to_kernel(f, hk, path_a, strat)
        base_triples.append(
            _make_triple(
                a2=arrows[3],
                a1=hk.connecting,
                corner=path_a.complex,
                to_corner=incl_a,
                from_corner=to_kernel,
            )
        )
    triples.extend(base_triples)
    for k in range(3, depth - 2):
        triples.append(loop_fiber_triple(triples[k - 3], functor))

    return LongFiberSequence(
        nodes=tuple(nodes),
        arrows=tuple(arrows),
        triples=tuple(triples),
        provenance="puppe",
        functor=functor,
        restriction=f,
    )


def _corner_to_kernel(
    f: ChainMap, hk: HomotopyKernel, path_a: PathFibration, strat: _Strategy
) -> ChainMap:
    """The universal arrow Path(A) -> K_f, ambient (x, x') |-> (x, f x')."""
    a, b = f.source, f.target
    comps = {}
    for n in path_a.complex.degrees():
        ra0, ra1 = a.rank(n), a.rank(n + 1)
        ambient = block_matrix(
            [
                [IntMatrix.identity(ra0), IntMatrix.zeros(ra0, ra1)],
                [IntMatrix.zeros(b.rank(n + 1), ra0), f.component(n + 1)],
            ]
        )
        if n == 0 and path_a.deg0_basis is not None:
            ambient = ambient @ path_a.deg0_basis
        if n == 0 and hk.deg0_basis is not None:
            # target side is the truncated kernel; re-express in its basis
            coords = hk.deg0_retraction @ ambient
            if hk.deg0_basis @ coords != ambient:
                raise InternalCheckError("corner-to-kernel map escapes the kernel basis")
            ambient = coords
        comps[n] = ambient
    return ChainMap(path_a.complex, hk.complex, comps, check=True)


def extend_by_fibrations(f: ChainMap, depth: int) -> LongFiberSequence:
    """Grow a tower of fibrations extending f.

    Node 1 is the mapping path space of f (quasi-iso + fibration
    factorization); each later node is the pullback of the previous arrow
    against the path fibration of the node two steps back.  All arrows are
    fibrations; every triple is a verified homotopy fiber square.
    """
    if depth < 2:
        raise FibseqError("extend_by_fibrations needs depth >= 2")
    variant = f.source.variant
    strat = _Standard(variant)
    fact = factor_we_fib(f)
    nodes = [f.target, fact.middle]
    arrows = [fact.fib]
    triples: list[FiberTriple] = []
    for k in range(1, depth - 1):
        base = nodes[k - 1]
        path = strat.path(base)
        pb = pullback(path.projection, arrows[k - 1])
        nodes.append(pb.complex)
        arrows.append(pb.pr_b)
        triples.append(
            _make_triple(
                a2=pb.pr_b,
                a1=arrows[k - 1],
                corner=path.complex,
                to_corner=pb.pr_c,
                from_corner=path.projection,
            )
        )
    return LongFiberSequence(
        nodes=tuple(nodes),
        arrows=tuple(arrows),
        triples=tuple(triples),
        provenance="efunctor",
        functor="standard",
        restriction=f,
        recorded_we=fact.we,
    )


@dataclass(frozen=True)
class NodeComparison:
    index: int
    degree: int
    left: FgAbelianGroup
    right: FgAbelianGroup

    @property
    def match(self) -> bool:
        return is_isomorphic(self.left, self.right)


@dataclass(frozen=True)
class ComparisonReport:
    entries: tuple[NodeComparison, ...]

    @property
    def all_match(self) -> bool:
        return all(e.match for e in self.entries)

    def mismatches(self) -> tuple[NodeComparison, ...]:
        return tuple(e for e in self.entries if not e.match)

    def to_json(self) -> dict:
        return {
            "all_match": self.all_match,
            "entries": [
                {
                    "node": e.index,
                    "degree": e.degree,
                    "left": e.left.to_json(),
                    "right": e.right.to_json(),
                    "match": e.match,
                }
                for e in self.entries
            ],
        }


def compare_extensions(s: LongFiberSequence, t: LongFiberSequence) -> ComparisonReport:
    """Node-by-node homology comparison of two towers over the same map."""
    if s.restriction != t.restriction:
        raise IncompatibleRestrictions("the towers do not extend the same morphism")
    entries = []
    for k in range(min(len(s.nodes), len(t.nodes))):
        degrees = homology_degrees(s.nodes[k], t.nodes[k])
        for n in degrees:
            entries.append(
                NodeComparison(
                    index=k,
                    degree=n,
                    left=homology_group(s.nodes[k], n),
                    right=homology_group(t.nodes[k], n),
                )
            )
    return ComparisonReport(entries=tuple(entries))
