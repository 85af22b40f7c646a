"""Hom-sets out of spheres and mechanically verified long exact sequences.

For the sphere source R[n] the Hom-set in the homotopy category is H_n, so
hom_set simply returns the homology subquotient.  The long exact sequence
attached to a chain map f : A -> B strings together

    ... -> H_{n+1}(B) -> H_n(K_f) -> H_n(A) -> H_n(B) -> H_{n-1}(K_f) -> ...

where the connecting map is induced by the second-block inclusion of B into
the homotopy kernel.  Reports hold one node per homology group inside the
requested degree window; the connecting maps that cross the window boundary
are materialized (their outside endpoints are computed but not listed), so
every listed node carries an exactness verdict.

For an arbitrary verified homotopy fiber sequence X -> Y -> Z the connecting
map is transported through an explicit zigzag of chain quasi-isomorphisms

    X --> P <-- ker <-- ... --> K_g

built from the model-square witness (P), the strict kernel of the fibration
replacement, and the generic homotopy kernel; on homology every leg is an
isomorphism of subquotients-with-retractions, hence invertible as an
ambient matrix, and Delta = eps ∘ H(connecting inclusion).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abgrp import (
    ExactnessVerdict,
    FgAbelianGroup,
    Subquotient,
    SubquotientHom,
    compose_homs,
    induced,
    invariants,
    invert_iso,
    is_exact_at,
)
from .chain import (
    NONNEGATIVE,
    ChainComplex,
    ChainMap,
    compose,
    homology,
    induced_on_homology,
    is_quasi_iso,
    zero_complex,
    zero_map,
)
from .errors import FibseqError, InternalCheckError, NotFiberSequence
from .exactlin import IntMatrix, block_matrix
from .modelcat import pullback, universal_map
from .puppe import FiberTriple, HomotopyKernel, homotopy_kernel


def hom_set(n: int, a: ChainComplex) -> Subquotient:
    """[R[n], a] realized as H_n(a); the identification is definitional."""
    return homology(a, n)


def hom_set_group(n: int, a: ChainComplex) -> FgAbelianGroup:
    return invariants(hom_set(n, a))


@dataclass(frozen=True)
class LesReport:
    """A window of a long exact sequence with per-node verdicts.

    maps[j] enters nodes[j] and maps[j + 1] leaves it; maps crossing the
    window boundary are materialized, so len(maps) == len(nodes) + 1.  A
    verdict of None marks a terminal node of the ambient sequence (the
    degree-0 target node in the nonnegative variant), where exactness is
    not asserted because nothing follows it.
    """

    labels: tuple[str, ...]
    groups: tuple[FgAbelianGroup, ...]
    maps: tuple[SubquotientHom, ...]
    verdicts: tuple[Optional[ExactnessVerdict], ...]
    degree_window: tuple[int, int]

    @property
    def nodes(self) -> tuple[tuple[str, FgAbelianGroup], ...]:
        return tuple(zip(self.labels, self.groups))

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.verdicts if v is not None)

    def to_json(self) -> dict:
        return {
            "window": list(self.degree_window),
            "nodes": [
                {
                    "label": lab,
                    "group": grp.to_json(),
                    "verdict": None if v is None else v.to_json(),
                }
                for lab, grp, v in zip(self.labels, self.groups, self.verdicts)
            ],
            "exact": self.exact,
        }

    def to_text(self) -> str:
        width_l = max((len(lab) for lab in self.labels), default=5)
        width_g = max((len(str(g)) for g in self.groups), default=1)
        lines = []
        for lab, grp, v in zip(self.labels, self.groups, self.verdicts):
            if v is None:
                status = "terminal"
            elif v.exact:
                status = "exact"
            elif not v.composite_zero:
                status = "NOT exact (composite != 0)"
            else:
                status = "NOT exact (ker !⊆ im)"
            lines.append(f"  --> {lab.ljust(width_l)}  {str(grp).ljust(width_g)}  {status}")
        header = f"long exact sequence window [{self.degree_window[0]}, {self.degree_window[1]}]"
        return "\n".join([header] + lines)


def verify(report: LesReport) -> bool:
    """Conjunction of all interior exactness verdicts."""
    return report.exact


def _connecting_hom(hk: HomotopyKernel, n: int) -> SubquotientHom:
    """H_{n+1}(target of f) -> H_n(K_f), induced by the B-block inclusion."""
    f = hk.source_map
    a, b = f.source, f.target
    src = homology(b, n + 1)
    tgt = homology(hk.complex, n)
    ra, rb1 = a.rank(n), b.rank(n + 1)
    ambient = block_matrix(
        [[IntMatrix.zeros(ra, rb1)], [IntMatrix.identity(rb1)]]
    )
    if hk.complex.rank(n) == 0:
        ambient = IntMatrix.zeros(0, rb1)
    elif n == 0 and hk.deg0_basis is not None:
        ambient = hk.deg0_retraction @ ambient
    return induced(ambient, src, tgt)


def _assemble(
    labels: list[str],
    groups: list[FgAbelianGroup],
    maps: list[SubquotientHom],
    window: tuple[int, int],
    terminal: frozenset[int] = frozenset(),
) -> LesReport:
    verdicts = tuple(
        None if j in terminal else is_exact_at(maps[j], maps[j + 1])
        for j in range(len(labels))
    )
    return LesReport(
        labels=tuple(labels),
        groups=tuple(groups),
        maps=tuple(maps),
        verdicts=verdicts,
        degree_window=window,
    )


def _terminal_nodes(variant: str, window: tuple[int, int]) -> frozenset[int]:
    """In the nonnegative variant the sequence ends at the degree-0 node of
    the base object; that node carries no exactness claim."""
    low, high = window
    if variant == NONNEGATIVE and low <= 0 <= high:
        return frozenset({3 * high + 2})
    return frozenset()


def les_of_map(
    f: ChainMap,
    window: tuple[int, int],
    names: tuple[str, str, str] = ("K_f", "A", "B"),
) -> LesReport:
    """The long exact homology sequence of f over the degree window."""
    low, high = window
    if low > high:
        raise FibseqError(f"empty window {window}")
    hk = homotopy_kernel(f)
    k_name, a_name, b_name = names
    labels: list[str] = []
    groups: list[FgAbelianGroup] = []
    maps: list[SubquotientHom] = [_connecting_hom(hk, high)]
    for n in range(high, low - 1, -1):
        labels += [f"H_{n}({k_name})", f"H_{n}({a_name})", f"H_{n}({b_name})"]
        groups += [
            invariants(homology(hk.complex, n)),
            invariants(homology(f.source, n)),
            invariants(homology(f.target, n)),
        ]
        maps.append(induced_on_homology(hk.projection, n))
        maps.append(induced_on_homology(f, n))
        maps.append(_connecting_hom(hk, n - 1))
    return _assemble(labels, groups, maps, window, _terminal_nodes(f.source.variant, window))


@dataclass(frozen=True)
class _Zigzag:
    """Chain-level quasi-isomorphisms relating K_g to the triple's fiber X."""

    universal: ChainMap  # X -> P (from the model-square witness)
    mu1: ChainMap  # ker -> P
    mu2: ChainMap  # ker -> P'
    uprime: ChainMap  # K_g -> P'

    def epsilon(self, n: int) -> SubquotientHom:
        """H_n(K_g) -> H_n(X) through the zigzag."""
        hu = induced_on_homology(self.universal, n)
        hm1 = induced_on_homology(self.mu1, n)
        hm2 = induced_on_homology(self.mu2, n)
        hu2 = induced_on_homology(self.uprime, n)
        return compose_homs(
            invert_iso(hu), compose_homs(hm1, compose_homs(invert_iso(hm2), hu2))
        )


def _fiber_zigzag(t: FiberTriple, hk: HomotopyKernel) -> _Zigzag:
    wit = t.witness
    if not t.verified:
        raise NotFiberSequence("the square is not a homotopy fiber sequence")
    g = t.a1
    fib = wit.factorization.fib
    w = wit.factorization.we
    base = g.target
    variant = base.variant
    # P' = replacement pulled back against the path fibration of the base.
    pprime = pullback(hk.path.projection, fib)
    uprime = universal_map(pprime, compose(w, hk.projection), hk.corner_map)
    # Strict kernel of the fibration replacement.
    zc = zero_complex(variant)
    ker = pullback(zero_map(zc, base), fib)
    mu1 = universal_map(wit.pullback, ker.pr_b, zero_map(ker.complex, t.corner))
    mu2 = universal_map(pprime, ker.pr_b, zero_map(ker.complex, hk.path.complex))
    for name, m in (("u'", uprime), ("mu1", mu1), ("mu2", mu2)):
        if not is_quasi_iso(m):
            raise InternalCheckError(f"zigzag leg {name} is not a quasi-isomorphism")
    return _Zigzag(universal=wit.universal, mu1=mu1, mu2=mu2, uprime=uprime)


def les_of_fiber_sequence(
    t: FiberTriple,
    window: tuple[int, int],
    names: tuple[str, str, str] = ("X", "Y", "Z"),
) -> LesReport:
    """The long exact sequence of an arbitrary verified fiber triple.

    The connecting map Delta is eps ∘ H(inclusion), with eps transported
    from the homotopy kernel of the triple's base map through chain-level
    quasi-isomorphisms; exactness of the assembled window is then checked
    mechanically at every node.
    """
    low, high = window
    if low > high:
        raise FibseqError(f"empty window {window}")
    g = t.a1
    f = t.a2
    hk = homotopy_kernel(g)
    zig = _fiber_zigzag(t, hk)

    def delta(n: int) -> SubquotientHom:
        # H_{n+1}(Z) -> H_n(X)
        return compose_homs(zig.epsilon(n), _connecting_hom(hk, n))

    x_name, y_name, z_name = names
    labels: list[str] = []
    groups: list[FgAbelianGroup] = []
    maps: list[SubquotientHom] = [delta(high)]
    for n in range(high, low - 1, -1):
        labels += [f"H_{n}({x_name})", f"H_{n}({y_name})", f"H_{n}({z_name})"]
        groups += [
            invariants(homology(f.source, n)),
            invariants(homology(g.source, n)),
            invariants(homology(g.target, n)),
        ]
        maps.append(induced_on_homology(f, n))
        maps.append(induced_on_homology(g, n))
        maps.append(delta(n - 1))
    return _assemble(labels, groups, maps, window, _terminal_nodes(g.source.variant, window))
