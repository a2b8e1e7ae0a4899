"""Worked examples on one-vertex loop quivers, with closed-form chart transitions.

``L(q, k, m)`` is the one-vertex quiver with ``q`` loops, framing ``k`` and dimension ``m``.
Chart coordinates below are written as matrices whose rows follow the listed path labels;
the library itself keys rows by label, so the row order here is only a presentation choice.
"""
from __future__ import annotations

import json
from importlib import resources
from typing import Callable

from .atlas import RelationPoly, load_relations
from .quiver import FramedShape, Quiver

Mat = list[list]


def loop_example(q: int, k: int, m: int) -> tuple[Quiver, FramedShape]:
    return Quiver.loops(q), FramedShape((m,), (k,))


# one loop, two framings, m = 2: three charts
L12_SKELETA = {1: ("f1.1", "f1.1*a"), 2: ("f1.2", "f1.2*a"), 3: ("f1.1", "f1.2")}
L12_ROWS = {1: ("f1.2", "f1.1*a*a"), 2: ("f1.1", "f1.2*a*a"), 3: ("f1.1*a", "f1.2*a")}

# two loops, one framing, m = 2: two charts
L21_SKELETA = {1: ("f1.1", "f1.1*a"), 2: ("f1.1", "f1.1*b")}
L21_ROWS = {1: ("f1.1*a*a", "f1.1*b", "f1.1*a*b"), 2: ("f1.1*a", "f1.1*b*a", "f1.1*b*b")}


def _swap(x: Mat) -> Mat:
    """Conjugate a 2x2 matrix by the coordinate swap."""
    return [[x[1][1], x[1][0]], [x[0][1], x[0][0]]]


def l12_3_to_1(x: Mat) -> Mat:
    return [[-x[0][0] / x[0][1], 1 / x[0][1]],
            [x[0][1] * x[1][0] - x[0][0] * x[1][1], x[0][0] + x[1][1]]]


def _d(x: Mat):
    return x[0][1] ** 2 * x[1][0] - x[0][0] ** 2 - x[0][0] * x[0][1] * x[1][1]


def l12_1_to_3(x: Mat) -> Mat:
    return [[-x[0][0] / x[0][1], 1 / x[0][1]],
            [_d(x) / x[0][1], (x[0][0] + x[0][1] * x[1][1]) / x[0][1]]]


def l12_1_to_2(x: Mat) -> Mat:
    d = _d(x)
    return [[-(x[0][0] + x[0][1] * x[1][1]) / d, x[0][1] / d], [x[1][0], x[1][1]]]


def l12_3_to_2(x: Mat) -> Mat:
    return l12_3_to_1(_swap(x))


def l12_2_to_3(x: Mat) -> Mat:
    return _swap(l12_1_to_3(x))


L12_TRANSITIONS: dict[tuple[int, int], Callable[[Mat], Mat]] = {
    (3, 1): l12_3_to_1, (1, 3): l12_1_to_3, (1, 2): l12_1_to_2,
    (2, 1): l12_1_to_2, (3, 2): l12_3_to_2, (2, 3): l12_2_to_3,
}


def l21_2_to_1(x: Mat) -> Mat:
    return [[x[0][1] * x[1][0] - x[0][0] * x[1][1], x[0][0] + x[1][1]],
            [-x[0][0] / x[0][1], 1 / x[0][1]],
            [(x[0][1] ** 2 * x[2][0] - x[0][0] ** 2 - x[0][0] * x[0][1] * x[2][1]) / x[0][1],
             (x[0][0] + x[0][1] * x[2][1]) / x[0][1]]]


def l21_1_to_2(x: Mat) -> Mat:
    return [[-x[1][0] / x[1][1], 1 / x[1][1]],
            [(x[1][1] ** 2 * x[0][0] - x[1][0] ** 2 - x[0][1] * x[1][1] * x[1][0]) / x[1][1],
             (x[1][0] + x[0][1] * x[1][1]) / x[1][1]],
            [x[1][1] * x[2][0] - x[1][0] * x[2][1], x[1][0] + x[2][1]]]


L21_TRANSITIONS: dict[tuple[int, int], Callable[[Mat], Mat]] = {(2, 1): l21_2_to_1, (1, 2): l21_1_to_2}


RELATION_FILES = ("l12_m2_relations", "l12_m2_exceed", "l21_m2_relations")


def load_relation_file(name: str) -> list[RelationPoly]:
    """One of ``RELATION_FILES``, shipped as package data."""
    if name not in RELATION_FILES:
        raise KeyError(f"unknown relation set {name!r}; choose from {RELATION_FILES}")
    text = resources.files("framed_moduli").joinpath("data", f"{name}.json").read_text()
    return load_relations(json.loads(text))
