"""Seeded rejection sampling of stable framed representations."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GaveUp
from .kernel import QQ, Field, Matrix
from .quiver import FramedShape, Quiver
from .rep import FramedRep, is_stable


@dataclass(frozen=True)
class SampleConfig:
    entry_bound: int = 10
    max_tries: int = 1000


@dataclass(frozen=True)
class Sample:
    rep: FramedRep
    rejections: int
    seed: int


def _random_matrix(rng: random.Random, r: int, c: int, field: Field, bound: int) -> Matrix:
    if field.is_rational:
        return Matrix(field, [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)], c)
    return Matrix(field, [[rng.randrange(field.p) for _ in range(c)] for _ in range(r)], c)


def random_rep(quiver: Quiver, shape: FramedShape, rng: random.Random, field: Field = QQ,
               entry_bound: int = 10) -> FramedRep:
    """Integer entries in ``[-entry_bound, entry_bound]`` over the rationals, uniform residues otherwise."""
    al, ze = shape.alpha, shape.zeta
    maps = tuple(_random_matrix(rng, al[a.head - 1], al[a.tail - 1], field, entry_bound) for a in quiver.arrows)
    framing = tuple(_random_matrix(rng, ze[i], al[i], field, entry_bound) for i in range(quiver.n))
    return FramedRep(quiver, shape, field, maps, framing)


def random_stable(quiver: Quiver, shape: FramedShape, seed: int, entry_bound: int = 10,
                  field: Field = QQ, max_tries: int = 1000) -> Sample:
    """Draw until stable; raises ``GaveUp`` after ``max_tries`` draws."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be at least 1")
    shape.check(quiver)
    rng = random.Random(seed)
    for k in range(max_tries):
        rep = random_rep(quiver, shape, rng, field, entry_bound)
        if is_stable(rep):
            return Sample(rep, k, seed)
    raise GaveUp(f"no stable representation after {max_tries} draws")
