"""Framed representations ``(M, f)``, the base-change action and path rows."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import FieldMismatchError, MissingRow, ShapeMismatch, SingularMatrixError
from .kernel import QQ, Field, Matrix, RowSpace, vecmat
from .quiver import ExtendedQuiver, FramedPath, FramedShape, Quiver


def _as_matrix(value, nrows: int, ncols: int, field: Field) -> Matrix:
    if isinstance(value, Matrix):
        if value.field != field:
            raise FieldMismatchError(f"matrix over {value.field!r}, expected {field!r}")
        m = value
    else:
        m = Matrix(field, list(value), ncols)
    if m.shape != (nrows, ncols):
        raise ShapeMismatch(f"expected a {nrows}x{ncols} matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


@dataclass(frozen=True)
class FramedRep:
    """Matrices ``M_a`` (``alpha_{h(a)} x alpha_{t(a)}``) and ``f_i`` (``zeta_i x alpha_i``)."""

    quiver: Quiver
    shape: FramedShape
    field: Field
    maps: tuple[Matrix, ...]
    framing: tuple[Matrix, ...]

    def __post_init__(self):
        self.shape.check(self.quiver)
        al, ze = self.shape.alpha, self.shape.zeta
        if len(self.maps) != len(self.quiver.arrows) or len(self.framing) != self.quiver.n:
            raise ShapeMismatch("wrong number of matrices for this quiver")
        for a, m in zip(self.quiver.arrows, self.maps):
            if m.field != self.field:
                raise FieldMismatchError(f"arrow {a.name} over {m.field!r}")
            if m.shape != (al[a.head - 1], al[a.tail - 1]):
                raise ShapeMismatch(f"arrow {a.name}: expected {al[a.head - 1]}x{al[a.tail - 1]}, got {m.shape}")
        for i, m in enumerate(self.framing):
            if m.field != self.field:
                raise FieldMismatchError(f"framing at vertex {i + 1} over {m.field!r}")
            if m.shape != (ze[i], al[i]):
                raise ShapeMismatch(f"framing at vertex {i + 1}: expected {ze[i]}x{al[i]}, got {m.shape}")

    @classmethod
    def build(cls, quiver: Quiver, shape: FramedShape, arrows: Mapping | None = None,
              framing: Mapping | None = None, field: Field = QQ) -> "FramedRep":
        """Assemble from name-keyed arrow matrices and 1-based vertex-keyed framings.

        Missing entries default to zero matrices.
        """
        shape.check(quiver)
        arrows = dict(arrows or {})
        framing = {int(k): v for k, v in (framing or {}).items()}
        al, ze = shape.alpha, shape.zeta
        unknown = set(arrows) - {a.name for a in quiver.arrows}
        if unknown:
            raise ShapeMismatch(f"unknown arrows {sorted(unknown)}")
        maps = []
        for a in quiver.arrows:
            r, c = al[a.head - 1], al[a.tail - 1]
            maps.append(_as_matrix(arrows[a.name], r, c, field) if a.name in arrows else Matrix.zeros(r, c, field))
        fr = []
        for i in range(1, quiver.n + 1):
            r, c = ze[i - 1], al[i - 1]
            fr.append(_as_matrix(framing[i], r, c, field) if i in framing else Matrix.zeros(r, c, field))
        return cls(quiver, shape, field, tuple(maps), tuple(fr))

    @cached_property
    def extended(self) -> ExtendedQuiver:
        return ExtendedQuiver(self.quiver, self.shape.zeta)

    def arrow_map(self, name: str) -> Matrix:
        return self.maps[self.quiver.arrow_index(name)]

    def framing_map(self, vertex: int) -> Matrix:
        return self.framing[vertex - 1]


@dataclass(frozen=True)
class GroupElement:
    """An element of GL(alpha): one invertible matrix per vertex."""

    mats: tuple[Matrix, ...]
    inverses: tuple[Matrix, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        if not self.inverses:
            object.__setattr__(self, "inverses", tuple(m.inverse() for m in self.mats))

    @classmethod
    def identity(cls, alpha: Sequence[int], field: Field = QQ) -> "GroupElement":
        mats = tuple(Matrix.identity(n, field) for n in alpha)
        return cls(mats, mats)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a @ b for a, b in zip(self.mats, other.mats)),
                            tuple(b @ a for a, b in zip(self.inverses, other.inverses)))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.inverses, self.mats)


def act(g: GroupElement, rep: FramedRep) -> FramedRep:
    """``M_a -> g_{h(a)} M_a g_{t(a)}^{-1}`` and ``f_i -> f_i g_i^{-1}``."""
    if len(g.mats) != rep.quiver.n or any(m.shape != (n, n) for m, n in zip(g.mats, rep.shape.alpha)):
        raise ShapeMismatch("group element does not match the dimension vector")
    maps = tuple(g.mats[a.head - 1] @ m @ g.inverses[a.tail - 1] for a, m in zip(rep.quiver.arrows, rep.maps))
    framing = tuple(f @ gi for f, gi in zip(rep.framing, g.inverses))
    return FramedRep(rep.quiver, rep.shape, rep.field, maps, framing)


def row_of_path(rep: FramedRep, p: FramedPath) -> tuple:
    """``(row q of f_i) · M_{a_1} ··· M_{a_k}``, a vector of length ``alpha_{start}``."""
    f = rep.framing[p.vertex - 1]
    if not 1 <= p.slot <= f.nrows:
        raise ShapeMismatch(f"slot {p.slot} outside framing of vertex {p.vertex}")
    row = f.row(p.slot - 1)
    for k in p.word:
        row = vecmat(row, rep.maps[k])
    return row


def path_rows(rep: FramedRep, paths: Iterable[FramedPath], cache: dict | None = None) -> dict:
    """Rows for many paths, reusing the row of each path's parent when known."""
    cache = {} if cache is None else cache
    eq = rep.extended
    for p in sorted(paths):
        if p in cache:
            continue
        par = eq.parent(p)
        if par is not None and par in cache:
            cache[p] = vecmat(cache[par], rep.maps[p.word[-1]])
        else:
            cache[p] = row_of_path(rep, p)
    return cache


@dataclass(frozen=True)
class RowBundle:
    """Per-vertex matrices ``B^(i)`` whose rows are indexed by framed paths starting at ``i``."""

    field: Field
    alpha: tuple[int, ...]
    blocks: tuple[tuple[tuple[FramedPath, tuple], ...], ...]

    @cached_property
    def _index(self) -> dict[FramedPath, tuple]:
        return {p: r for block in self.blocks for p, r in block}

    def __contains__(self, p: FramedPath) -> bool:
        return p in self._index

    def row(self, p: FramedPath) -> tuple:
        try:
            return self._index[p]
        except KeyError:
            raise MissingRow(f"bundle has no row for path {p}") from None

    def paths(self, vertex: int) -> tuple[FramedPath, ...]:
        return tuple(p for p, _ in self.blocks[vertex - 1])

    def all_paths(self) -> list[FramedPath]:
        return [p for block in self.blocks for p, _ in block]

    def matrix(self, vertex: int) -> Matrix:
        return Matrix(self.field, [r for _, r in self.blocks[vertex - 1]], self.alpha[vertex - 1], coerce=False)

    def submatrix(self, paths: Sequence[FramedPath], vertex: int | None = None) -> Matrix:
        """Rows for ``paths`` in the given order."""
        if vertex is None:
            vertex = paths[0].start if paths else 1
        return Matrix(self.field, [self.row(p) for p in paths], self.alpha[vertex - 1], coerce=False)

    def replace_row(self, p: FramedPath, row: Sequence) -> "RowBundle":
        if p not in self:
            raise MissingRow(f"bundle has no row for path {p}")
        row = tuple(self.field.coerce(x) for x in row)
        blocks = tuple(tuple((q, row if q == p else r) for q, r in block) for block in self.blocks)
        return RowBundle(self.field, self.alpha, blocks)

    def scaled(self, g: GroupElement) -> "RowBundle":
        """Each ``B^(i)`` right-multiplied by ``g_i^{-1}``."""
        blocks = tuple(tuple((p, vecmat(r, g.inverses[i])) for p, r in block) for i, block in enumerate(self.blocks))
        return RowBundle(self.field, self.alpha, blocks)


def build_row_bundle(rep: FramedRep, universe: Iterable[FramedPath]) -> RowBundle:
    universe = sorted(set(universe))
    rows = path_rows(rep, universe)
    blocks = tuple(tuple((p, rows[p]) for p in universe if p.start == i) for i in range(1, rep.quiver.n + 1))
    return RowBundle(rep.field, rep.shape.alpha, blocks)


@dataclass(frozen=True)
class GradedSubspace:
    """Per vertex, a matrix whose columns form a basis of a subspace of k^{alpha_i}."""

    bases: tuple[Matrix, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(b.ncols for b in self.bases)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims)


@dataclass
class Saturation:
    """Result of growing the path-row span one arrow at a time until it stops growing."""

    spaces: list[RowSpace]
    selected: list[list[FramedPath]]
    rounds: int

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(s.rank for s in self.spaces)


def saturate(rep: FramedRep) -> Saturation:
    eq = rep.extended
    al = rep.shape.alpha
    spaces = [RowSpace(rep.field, n) for n in al]
    selected: list[list[FramedPath]] = [[] for _ in al]
    rows: dict[FramedPath, tuple] = {}
    frontier = []
    for p in eq.framing_arrows:
        r = row_of_path(rep, p)
        if spaces[p.start - 1].add(r):
            rows[p] = r
            selected[p.start - 1].append(p)
            frontier.append(p)
    rounds = 0
    while frontier:
        rounds += 1
        nxt = []
        for p in sorted(frontier):
            for e in eq.extensions(p):
                r = vecmat(rows[p], rep.maps[e.word[-1]])
                if spaces[e.start - 1].add(r):
                    rows[e] = r
                    selected[e.start - 1].append(e)
                    nxt.append(e)
        frontier = nxt
    # every round but the last raises the total rank
    assert rounds <= sum(al) + 1
    return Saturation(spaces, selected, rounds)


def max_submodule_in_kernel(rep: FramedRep) -> GradedSubspace:
    """The largest subrepresentation inside ker f: the common kernel of all path rows, per vertex."""
    sat = saturate(rep)
    bases = []
    for n, space in zip(rep.shape.alpha, sat.spaces):
        if space.rank == 0:
            bases.append(Matrix.identity(n, rep.field))
            continue
        cols = space.matrix().kernel_basis()
        bases.append(Matrix(rep.field, [[c[k, 0] for c in cols] for k in range(n)], len(cols), coerce=False))
    return GradedSubspace(tuple(bases))


def is_stable(rep: FramedRep) -> bool:
    return saturate(rep).ranks == rep.shape.alpha


def random_group_element(alpha: Sequence[int], field: Field, rng, entry_bound: int = 3) -> GroupElement:
    """A uniformly drawn (rejection-sampled) invertible matrix per vertex."""
    mats = []
    for n in alpha:
        while True:
            if field.is_rational:
                m = Matrix(field, [[rng.randint(-entry_bound, entry_bound) for _ in range(n)] for _ in range(n)], n)
            else:
                m = Matrix(field, [[rng.randrange(field.p) for _ in range(n)] for _ in range(n)], n)
            try:
                mats.append((m, m.inverse()))
                break
            except SingularMatrixError:
                continue
    return GroupElement(tuple(m for m, _ in mats), tuple(i for _, i in mats))
