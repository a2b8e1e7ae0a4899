"""Shared builders for the test modules."""
from __future__ import annotations

import itertools
import random

from framed_moduli import FramedRep, FramedShape, Matrix, QQ, Quiver
from framed_moduli.sampling import random_stable


def loop_rep(a, f, field=QQ):
    """One-vertex loop representation; ``a`` may be a dict of loop matrices."""
    arrows = a if isinstance(a, dict) else {"a": a}
    q = len(arrows)
    m = len(next(iter(arrows.values())))
    return FramedRep.build(Quiver.loops(q), FramedShape((m,), (len(f),)), arrows, {1: f}, field)


def example21_quiver() -> Quiver:
    """Three vertices, a: 1->3, b: 1->2, c: 2->3."""
    return Quiver.from_edges(3, [("a", 1, 3), ("b", 1, 2), ("c", 2, 3)])


def example21_rep(seed: int = 0) -> FramedRep:
    rng = random.Random(seed)
    q = example21_quiver()
    shape = FramedShape((2, 2, 1), (1, 2, 3))
    arrows = {a.name: [[rng.randint(-3, 3) for _ in range(shape.alpha[a.tail - 1])]
                       for _ in range(shape.alpha[a.head - 1])] for a in q.arrows}
    framing = {1: [[1, 5]], 2: [[3, 1], [4, 2]], 3: [[3], [0], [1]]}
    return FramedRep.build(q, shape, arrows, framing)


def all_reps(quiver: Quiver, shape: FramedShape, field):
    """Every representation over a prime field, in lexicographic order of entries."""
    al, ze = shape.alpha, shape.zeta
    shapes = [(al[a.head - 1], al[a.tail - 1]) for a in quiver.arrows] + [(ze[i], al[i]) for i in range(quiver.n)]
    n = sum(r * c for r, c in shapes)
    na = len(quiver.arrows)
    for vals in itertools.product(range(field.p), repeat=n):
        k, mats = 0, []
        for r, c in shapes:
            mats.append(Matrix(field, [vals[k + i * c:k + (i + 1) * c] for i in range(r)], c))
            k += r * c
        yield FramedRep(quiver, shape, field, tuple(mats[:na]), tuple(mats[na:]))


SHAPES = [
    (Quiver.loops(1), FramedShape((3,), (1,))),
    (Quiver.loops(1), FramedShape((2,), (2,))),
    (Quiver.loops(2), FramedShape((2,), (1,))),
    (Quiver.loops(2), FramedShape((3,), (2,))),
    (example21_quiver(), FramedShape((2, 2, 1), (1, 2, 3))),
    (Quiver.from_edges(2, [("a", 1, 2), ("b", 2, 1)]), FramedShape((1, 2), (0, 1))),
]


def stable_sample(trial: int, field=QQ):
    quiver, shape = SHAPES[trial % len(SHAPES)]
    return random_stable(quiver, shape, seed=trial, field=field).rep
