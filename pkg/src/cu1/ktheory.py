"""K1 of ideals and the maps induced by ideal inclusions.

An ideal of C(X) (X the point, interval or circle) is an open set ``V``; its
K1 group is a free module over the arcs of ``V`` that carry K1:

* interval: the arcs that touch neither 0 nor 1 (``C_0`` of an arc touching
  an end is contractible);
* circle: every arc, including the whole circle;
* point: the whole point, provided the model declares a K1 group at all.

Coefficients live in a coefficient group (Z, Z[1/p] or a finitely generated
abelian group).  A vector is a plain tuple with one coefficient per carrier.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import arcs
from .arcs import OpenSet, Space
from .errors import NotContained


@dataclass(frozen=True)
class K1Group:
    ideal: OpenSet
    carriers: tuple[int, ...]
    ring: object = None

    @property
    def rank(self) -> int:
        return len(self.carriers)

    @property
    def zero(self) -> tuple:
        return (self.ring.zero,) * self.rank if self.ring is not None else ()

    def check(self, vec) -> tuple:
        vec = tuple(vec)
        if len(vec) != self.rank:
            raise ValueError(f"K1 vector of length {len(vec)} over {self.rank} carriers")
        return tuple(self.ring.check(x) for x in vec) if vec else ()

    def add(self, a, b) -> tuple:
        return tuple(self.ring.add(x, y) for x, y in zip(a, b))

    def neg(self, a) -> tuple:
        return tuple(self.ring.neg(x) for x in a)


def carrier_indices(v: OpenSet, has_group: bool = True) -> tuple[int, ...]:
    if not has_group:
        return ()
    if v.space is Space.INTERVAL:
        return tuple(i for i, arc in enumerate(v.arcs) if arc.kind == arcs.PROPER)
    return tuple(range(len(v.arcs)))


def k1_of_ideal(space: Space, v: OpenSet, ring=None) -> K1Group:
    """K1 of the ideal ``C_0(V)``; ``ring=None`` means K1 vanishes identically."""
    if v.space is not space:
        raise ValueError("ideal lives in a different space")
    return K1Group(v, carrier_indices(v, ring is not None), ring)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between K1 groups given by an integer matrix acting on
    coefficient vectors (rows index codomain carriers)."""

    domain: K1Group
    codomain: K1Group
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, vec) -> tuple:
        ring = self.codomain.ring
        if ring is None:
            return ()
        out = []
        for row in self.matrix:
            acc = ring.zero
            for m, x in zip(row, vec):
                if m:
                    acc = ring.add(acc, ring.mul(m, x))
            out.append(acc)
        return tuple(out)

    def compose(self, first: GroupHom) -> GroupHom:
        """``self o first``."""
        inner = len(first.matrix)
        cols = first.domain.rank
        mat = tuple(
            tuple(sum(self.matrix[i][j] * first.matrix[j][c] for j in range(inner)) for c in range(cols))
            for i in range(len(self.matrix))
        )
        return GroupHom(first.domain, self.codomain, mat)

    @property
    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.domain.rank == n and all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )


def delta_hom(vg: K1Group, wg: K1Group, *, fault: str | None = None) -> GroupHom:
    """The map K1(V) -> K1(W) induced by ``V`` inside ``W``.

    A carrier arc of ``V`` goes to the basis vector of the arc of ``W``
    containing it when that arc carries K1, and to zero otherwise.

    ``fault="delta-nonfunctorial"`` doubles every strictly enlarging entry; it
    is a deliberately broken variant used by negative controls.
    """
    pairs = arcs.match_components(vg.ideal, wg.ideal)
    if pairs is None:
        raise NotContained(f"{vg.ideal!r} is not inside {wg.ideal!r}")
    where = dict(pairs)
    col = {arc_i: c for c, arc_i in enumerate(vg.carriers)}
    mat = [[0] * vg.rank for _ in wg.carriers]
    for r, arc_j in enumerate(wg.carriers):
        for arc_i, c in col.items():
            if where[arc_i] == arc_j:
                entry = 1
                if fault == "delta-nonfunctorial" and vg.ideal.arcs[arc_i] != wg.ideal.arcs[arc_j]:
                    entry = 2
                mat[r][c] = entry
    return GroupHom(vg, wg, tuple(tuple(row) for row in mat))


def identity_hom(g: K1Group) -> GroupHom:
    n = g.rank
    return GroupHom(g, g, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))
