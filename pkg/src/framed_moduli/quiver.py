"""Quivers, framed paths and the extended quiver with the sink vertex.

Vertices are numbered ``1..n``.  A framed path ``f_{iq}·a_1···a_k`` is stored
head-first: framing vertex ``i``, slot ``q`` and the word of arrow indices
``(a_1, ..., a_k)``.  It starts at ``t(a_k)`` (or at ``i`` for the bare
framing arrow) and its row is ``(row q of f_i)·M_{a_1}···M_{a_k}``.
"""
from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import NotComposable, PathSyntaxError, ShapeMismatch, SlotOutOfRange, UnknownArrow

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: int
    head: int


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.n < 1:
            raise ValueError("a quiver needs at least one vertex")
        seen = set()
        for a in self.arrows:
            if not _NAME_RE.match(a.name):
                raise ValueError(f"bad arrow name {a.name!r}")
            if a.name in seen:
                raise ValueError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            for v in (a.tail, a.head):
                if not 1 <= v <= self.n:
                    raise ValueError(f"arrow {a.name} touches vertex {v} outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[str, int, int]]) -> "Quiver":
        """``edges`` are ``(name, tail, head)`` triples."""
        return cls(n, tuple(Arrow(*e) for e in edges))

    @classmethod
    def loops(cls, q: int) -> "Quiver":
        """The one-vertex quiver with ``q`` loops named ``a, b, c, ...``."""
        if q <= 26:
            names = string.ascii_lowercase[:q]
        else:
            names = [f"a{j}" for j in range(1, q + 1)]
        return cls(1, tuple(Arrow(nm, 1, 1) for nm in names))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a.name: k for k, a in enumerate(self.arrows)}

    def arrow_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownArrow(f"no arrow named {name!r}") from None

    def arrows_into(self, v: int) -> tuple[int, ...]:
        """Indices of arrows with head ``v``: the ones that can extend a path starting at ``v``."""
        return tuple(k for k, a in enumerate(self.arrows) if a.head == v)

    def to_json(self) -> dict:
        return {"vertices": self.n,
                "arrows": [{"name": a.name, "tail": a.tail, "head": a.head} for a in self.arrows]}

    @classmethod
    def from_json(cls, d: dict) -> "Quiver":
        return cls(int(d["vertices"]), tuple(Arrow(str(a["name"]), int(a["tail"]), int(a["head"]))
                                             for a in d.get("arrows", [])))


@dataclass(frozen=True)
class FramedShape:
    alpha: tuple[int, ...]
    zeta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        object.__setattr__(self, "zeta", tuple(int(x) for x in self.zeta))
        if len(self.alpha) != len(self.zeta):
            raise ShapeMismatch("alpha and zeta have different lengths")
        if any(x < 0 for x in self.alpha + self.zeta):
            raise ShapeMismatch("dimension vectors must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.alpha)

    def check(self, quiver: Quiver):
        if len(self.alpha) != quiver.n:
            raise ShapeMismatch(f"shape has {len(self.alpha)} entries, quiver has {quiver.n} vertices")


@dataclass(frozen=True)
class PlainPath:
    """A path in the base quiver: ``e_v`` when ``word`` is empty."""

    head: int
    tail: int
    word: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)


def trivial_path(v: int) -> PlainPath:
    return PlainPath(v, v, ())


def arrow_path(quiver: Quiver, name: str) -> PlainPath:
    k = quiver.arrow_index(name)
    a = quiver.arrows[k]
    return PlainPath(a.head, a.tail, (k,))


def compose(sigma: PlainPath, tau: PlainPath) -> PlainPath:
    """The product ``sigma·tau``, defined when ``t(sigma) = h(tau)``."""
    if sigma.tail != tau.head:
        raise NotComposable(f"t(sigma)={sigma.tail} differs from h(tau)={tau.head}")
    return PlainPath(sigma.head, tau.tail, sigma.word + tau.word)


@dataclass(frozen=True, order=True)
class FramedPath:
    """``f_{vertex,slot}·word``.

    Field order gives the canonical total order: length first, then
    framing vertex, slot, and the arrow-index word read left to right.
    """

    length: int
    vertex: int
    slot: int
    word: tuple[int, ...]
    start: int = field(compare=False)

    @property
    def plain(self) -> PlainPath:
        return PlainPath(self.vertex, self.start, self.word)


def framing_path(vertex: int, slot: int) -> FramedPath:
    return FramedPath(1, vertex, slot, (), vertex)


def canonical_compare(p1: FramedPath, p2: FramedPath) -> int:
    """-1, 0 or 1 according to the canonical order."""
    return (p1 > p2) - (p1 < p2)


_PATH_RE = re.compile(r"\s*f(\d+)\.(\d+)((?:\s*\*\s*[A-Za-z_][A-Za-z0-9_]*)*)\s*\Z")


@dataclass(frozen=True)
class ExtendedQuiver:
    """The base quiver plus a sink and ``zeta_i`` framing arrows at each vertex ``i``."""

    quiver: Quiver
    zeta: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(self.zeta))
        if len(self.zeta) != self.quiver.n:
            raise ShapeMismatch(f"zeta has {len(self.zeta)} entries, quiver has {self.quiver.n} vertices")

    @property
    def framing_arrows(self) -> tuple[FramedPath, ...]:
        return tuple(framing_path(i, q) for i in range(1, self.quiver.n + 1)
                     for q in range(1, self.zeta[i - 1] + 1))

    def extend(self, p: FramedPath, arrow: str | int) -> FramedPath:
        k = arrow if isinstance(arrow, int) else self.quiver.arrow_index(arrow)
        a = self.quiver.arrows[k]
        if a.head != p.start:
            raise NotComposable(f"arrow {a.name} has head {a.head}, path starts at {p.start}")
        return FramedPath(p.length + 1, p.vertex, p.slot, p.word + (k,), a.tail)

    def extensions(self, p: FramedPath) -> list[FramedPath]:
        """All one-arrow extensions of ``p``, in canonical order."""
        return [self.extend(p, k) for k in self.quiver.arrows_into(p.start)]

    def parent(self, p: FramedPath) -> FramedPath | None:
        if not p.word:
            return None
        k = p.word[-1]
        return FramedPath(p.length - 1, p.vertex, p.slot, p.word[:-1], self.quiver.arrows[k].head)

    def make_path(self, vertex: int, slot: int, arrows: Sequence[str] = ()) -> FramedPath:
        if not 1 <= vertex <= self.quiver.n:
            raise SlotOutOfRange(f"vertex {vertex} outside 1..{self.quiver.n}")
        if not 1 <= slot <= self.zeta[vertex - 1]:
            raise SlotOutOfRange(f"slot {slot} outside 1..{self.zeta[vertex - 1]} at vertex {vertex}")
        p = framing_path(vertex, slot)
        for name in arrows:
            p = self.extend(p, name)
        return p

    def parse(self, text: str) -> FramedPath:
        """Parse ``f<i>.<q>`` followed by ``*<arrow>`` factors."""
        m = _PATH_RE.match(text)
        if m is None:
            raise PathSyntaxError(f"cannot parse path {text!r}")
        names = [s.strip() for s in m.group(3).split("*") if s.strip()]
        return self.make_path(int(m.group(1)), int(m.group(2)), names)

    def format(self, p: FramedPath) -> str:
        return f"f{p.vertex}.{p.slot}" + "".join("*" + self.quiver.arrows[k].name for k in p.word)

    def enumerate_framed_paths(self, max_plain_length: int) -> list[FramedPath]:
        """Every framed path whose plain part has length at most the bound, canonically ordered."""
        out = []
        level = list(self.framing_arrows)
        for _ in range(max_plain_length + 1):
            out.extend(level)
            level = [e for p in level for e in self.extensions(p)]
        out.sort()
        return out


def build_extended_quiver(quiver: Quiver, shape: FramedShape) -> ExtendedQuiver:
    shape.check(quiver)
    return ExtendedQuiver(quiver, shape.zeta)


def parse_path(eq: ExtendedQuiver, text: str) -> FramedPath:
    return eq.parse(text)


def format_path(eq: ExtendedQuiver, p: FramedPath) -> str:
    return eq.format(p)


def enumerate_framed_paths(eq: ExtendedQuiver, max_plain_length: int) -> list[FramedPath]:
    return eq.enumerate_framed_paths(max_plain_length)


def iter_prefixes(eq: ExtendedQuiver, p: FramedPath) -> Iterator[FramedPath]:
    """``p`` and all of its proper prefixes, longest first."""
    while p is not None:
        yield p
        p = eq.parent(p)
