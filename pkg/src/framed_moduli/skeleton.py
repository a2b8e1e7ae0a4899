"""Skeleta: greedy construction, abstract enumeration and the path universes."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import NotStable, SchemaError
from .kernel import RowSpace, vecmat
from .quiver import ExtendedQuiver, FramedPath, FramedShape, Quiver
from .rep import FramedRep, path_rows, row_of_path


@dataclass(frozen=True)
class Skeleton:
    """Per vertex ``i`` the canonically sorted paths ``S_i`` starting at ``i``."""

    eq: ExtendedQuiver = field(repr=False)
    alpha: tuple[int, ...] = field(repr=False)
    blocks: tuple[tuple[FramedPath, ...], ...]

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.eq, self.alpha, self.blocks))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def from_paths(cls, eq: ExtendedQuiver, alpha: Sequence[int], paths: Iterable[FramedPath]) -> "Skeleton":
        """Group paths by start vertex and check both skeleton conditions."""
        paths = sorted(set(paths))
        blocks = tuple(tuple(p for p in paths if p.start == i) for i in range(1, eq.quiver.n + 1))
        s = cls(eq, tuple(alpha), blocks)
        problem = s.violation()
        if problem:
            raise SchemaError(f"not a skeleton: {problem}")
        return s

    @classmethod
    def parse(cls, eq: ExtendedQuiver, alpha: Sequence[int], labels: Iterable[str]) -> "Skeleton":
        return cls.from_paths(eq, alpha, (eq.parse(t) for t in labels))

    @cached_property
    def paths(self) -> tuple[FramedPath, ...]:
        return tuple(sorted(p for b in self.blocks for p in b))

    @property
    def key(self) -> tuple[FramedPath, ...]:
        return self.paths

    def __contains__(self, p: FramedPath) -> bool:
        return p in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.paths)

    def at(self, vertex: int) -> tuple[FramedPath, ...]:
        return self.blocks[vertex - 1]

    def violation(self) -> str | None:
        """None when both conditions hold, else a description of the first failure."""
        for i, (b, n) in enumerate(zip(self.blocks, self.alpha), start=1):
            if len(b) != n:
                return f"vertex {i} has {len(b)} paths, expected {n}"
            if any(p.start != i for p in b):
                return f"a path in block {i} does not start at {i}"
            if list(b) != sorted(set(b)):
                return f"block {i} not in canonical order"
        for p in self.paths:
            if not 1 <= p.slot <= self.eq.zeta[p.vertex - 1]:
                return f"slot out of range in {self.eq.format(p)}"
            par = self.eq.parent(p)
            if par is not None and par not in self._set:
                return f"prefix of {self.eq.format(p)} missing"
        return None

    def is_valid(self) -> bool:
        return self.violation() is None

    def labels(self) -> list[str]:
        return [self.eq.format(p) for p in self.paths]

    def to_json(self) -> dict:
        return {"paths": self.labels()}

    def __str__(self) -> str:
        return "{" + ", ".join(self.labels()) + "}"


def greedy_skeleton(rep: FramedRep) -> Skeleton:
    """Seed independent framing rows, then add the smallest independent extension until full."""
    eq = rep.extended
    al = rep.shape.alpha
    spaces = [RowSpace(rep.field, n) for n in al]
    rows: dict[FramedPath, tuple] = {}
    chosen: list[FramedPath] = []
    heap: list[FramedPath] = []

    def take(p: FramedPath, r: tuple):
        rows[p] = r
        chosen.append(p)
        for e in eq.extensions(p):
            heapq.heappush(heap, e)

    for p in eq.framing_arrows:
        v = p.start - 1
        if spaces[v].rank < al[v]:
            r = row_of_path(rep, p)
            if spaces[v].add(r):
                take(p, r)
    while heap and any(s.rank < n for s, n in zip(spaces, al)):
        p = heapq.heappop(heap)
        v = p.start - 1
        if spaces[v].rank >= al[v]:
            continue
        r = vecmat(rows[eq.parent(p)], rep.maps[p.word[-1]])
        if spaces[v].add(r):
            take(p, r)
    short = [i + 1 for i, (s, n) in enumerate(zip(spaces, al)) if s.rank < n]
    if short:
        raise NotStable(f"path rows do not span at vertices {short}")
    return Skeleton.from_paths(eq, al, chosen)


def _enumerate(eq: ExtendedQuiver, alpha: tuple[int, ...]) -> Iterator[list[FramedPath]]:
    roots = [p for p in eq.framing_arrows if alpha[p.start - 1] > 0]
    target = sum(alpha)
    counts = [0] * len(alpha)
    chosen: list[FramedPath] = []

    def rec(pool: list[FramedPath]):
        if len(chosen) == target:
            yield list(chosen)
            return
        for k, c in enumerate(pool):
            v = c.start - 1
            if counts[v] >= alpha[v]:
                continue
            chosen.append(c)
            counts[v] += 1
            # later candidates are all greater than c, so pass only the tail plus c's extensions
            nxt = sorted(pool[k + 1:] + eq.extensions(c))
            yield from rec(nxt)
            counts[v] -= 1
            chosen.pop()

    yield from rec(sorted(roots))


@lru_cache(maxsize=256)
def _abstract_skeleta(quiver: Quiver, shape: FramedShape) -> tuple[Skeleton, ...]:
    eq = ExtendedQuiver(quiver, shape.zeta)
    out = [Skeleton.from_paths(eq, shape.alpha, ps) for ps in _enumerate(eq, shape.alpha)]
    out.sort(key=lambda s: s.key)
    return tuple(out)


def enumerate_abstract_skeleta(quiver: Quiver, shape: FramedShape) -> list[Skeleton]:
    """All prefix-closed sets with ``alpha_i`` paths starting at each ``i``, sorted by path key."""
    shape.check(quiver)
    return list(_abstract_skeleta(quiver, shape))


def skeleta_of_rep(rep: FramedRep) -> list[Skeleton]:
    """The abstract skeleta whose blocks ``B(S_i)`` are all invertible for ``rep``."""
    return list(_skeleta_of_rep(rep))


@lru_cache(maxsize=4096)
def _skeleta_of_rep(rep: FramedRep) -> tuple[Skeleton, ...]:
    skels = _abstract_skeleta(rep.quiver, rep.shape)
    gamma = {p for s in skels for p in s.paths}
    rows = path_rows(rep, gamma)
    out = []
    for s in skels:
        ok = True
        for i, block in enumerate(s.blocks):
            if not block:
                continue
            space = RowSpace(rep.field, rep.shape.alpha[i])
            if not all(space.add(rows[p]) for p in block):
                ok = False
                break
        if ok:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class PathUniverse:
    """``gamma``: paths occurring in skeleta; ``gamma_tilde``: plus their one-arrow extensions."""

    eq: ExtendedQuiver
    gamma: tuple[FramedPath, ...]
    gamma_tilde: tuple[FramedPath, ...]

    @cached_property
    def index(self) -> dict[FramedPath, int]:
        return {p: k for k, p in enumerate(self.gamma_tilde)}

    def at(self, vertex: int) -> tuple[FramedPath, ...]:
        return tuple(p for p in self.gamma_tilde if p.start == vertex)

    def to_json(self) -> dict:
        return {"gamma": [self.eq.format(p) for p in self.gamma],
                "gamma_tilde": [self.eq.format(p) for p in self.gamma_tilde]}


def _close(eq: ExtendedQuiver, gamma: Iterable[FramedPath]) -> PathUniverse:
    gamma = sorted(set(gamma))
    tilde = set(gamma)
    for p in gamma:
        tilde.update(eq.extensions(p))
    return PathUniverse(eq, tuple(gamma), tuple(sorted(tilde)))


@lru_cache(maxsize=256)
def path_universe(quiver: Quiver, shape: FramedShape, mode: str = "exact") -> PathUniverse:
    """``mode="exact"`` unions the abstract skeleta; ``"superset"`` takes every path of plain
    length below ``sum(alpha)`` whose prefixes all start at vertices with ``alpha_i > 0``."""
    shape.check(quiver)
    eq = ExtendedQuiver(quiver, shape.zeta)
    if mode == "exact":
        return _close(eq, (p for s in _abstract_skeleta(quiver, shape) for p in s.paths))
    if mode != "superset":
        raise ValueError(f"unknown universe mode {mode!r}")
    al = shape.alpha
    level = [p for p in eq.framing_arrows if al[p.start - 1] > 0]
    gamma = []
    for _ in range(max(sum(al), 1)):
        gamma.extend(level)
        level = [e for p in level for e in eq.extensions(p) if al[e.start - 1] > 0]
    return _close(eq, gamma)
