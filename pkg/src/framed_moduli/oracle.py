"""Brute-force ground truth over small prime fields.

Both oracles enumerate everything literally: all graded subspaces for stability, all of
GL(alpha) for isomorphism.  They refuse to start when the enumeration would exceed the budget.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded, FieldMismatchError
from .kernel import Field, Matrix
from .rep import FramedRep, GroupElement, act


@dataclass(frozen=True)
class OracleBudget:
    max_total_dim: int = 6
    max_elements: int = 200_000


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for j in range(k):
        num *= p ** (n - j) - 1
        den *= p ** (j + 1) - 1
    return num // den


def gl_order(n: int, p: int) -> int:
    out = 1
    for j in range(n):
        out *= p ** n - p ** j
    return out


def _check_field(rep: FramedRep) -> int:
    if rep.field.is_rational:
        raise FieldMismatchError("oracles work over prime fields only")
    return rep.field.p


def _check_budget(total_dim: int, count: int, budget: OracleBudget):
    if total_dim > budget.max_total_dim:
        raise BudgetExceeded(f"total dimension {total_dim} exceeds {budget.max_total_dim}")
    if count > budget.max_elements:
        raise BudgetExceeded(f"{count} elements to enumerate exceeds {budget.max_elements}")


def rref_subspaces(n: int, field: Field) -> Iterator[tuple[tuple, ...]]:
    """Every subspace of ``k^n`` once, as the rows of its reduced echelon basis."""
    p = field.p
    for d in range(n + 1):
        for pivots in itertools.combinations(range(n), d):
            free = [(r, c) for r in range(d) for c in range(pivots[r] + 1, n) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for r, c in enumerate(pivots):
                    rows[r][c] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                yield tuple(tuple(r) for r in rows)


def _in_span(vec: Sequence[int], basis: tuple[tuple, ...], pivots: tuple[int, ...], p: int) -> bool:
    v = list(vec)
    for row, c in zip(basis, pivots):
        if v[c]:
            t = v[c]
            v = [(x - t * y) % p for x, y in zip(v, row)]
    return not any(v)


def _pivots(basis: tuple[tuple, ...]) -> tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(r) if x) for r in basis)


def _apply(m: Matrix, v: Sequence[int], p: int) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in m.rows)


def stability_bruteforce(rep: FramedRep, budget: OracleBudget = OracleBudget()) -> bool:
    """True iff the only subrepresentation inside ker f is zero, checked over all graded subspaces."""
    p = _check_field(rep)
    al = rep.shape.alpha
    count = 1
    for n in al:
        count *= sum(gaussian_binomial(n, d, p) for d in range(n + 1))
    _check_budget(sum(al), count, budget)
    per_vertex = [list(rref_subspaces(n, rep.field)) for n in al]
    arrows = rep.quiver.arrows
    for combo in itertools.product(*per_vertex):
        if all(len(b) == 0 for b in combo):
            continue
        if any(any(_apply(rep.framing[i], v, p)) for i, b in enumerate(combo) for v in b):
            continue
        piv = [_pivots(b) for b in combo]
        invariant = True
        for a, m in zip(arrows, rep.maps):
            src, dst = combo[a.tail - 1], a.head - 1
            if not all(_in_span(_apply(m, v, p), combo[dst], piv[dst], p) for v in src):
                invariant = False
                break
        if invariant:
            return False
    return True


def invertible_matrices(n: int, field: Field) -> list[tuple[Matrix, Matrix]]:
    """All of GL_n over the field with inverses: identity first, then lexicographic by entries."""
    ident = Matrix.identity(n, field)
    out = [(ident, ident)]
    for vals in itertools.product(range(field.p), repeat=n * n):
        m = Matrix(field, [vals[r * n:(r + 1) * n] for r in range(n)], n)
        if m == ident or m.rank < n:
            continue
        out.append((m, m.inverse()))
    return out


def group_elements(alpha: Sequence[int], field: Field) -> Iterator[GroupElement]:
    per = [invertible_matrices(n, field) for n in alpha]
    for combo in itertools.product(*per):
        yield GroupElement(tuple(m for m, _ in combo), tuple(i for _, i in combo))


def _group_budget(rep: FramedRep, budget: OracleBudget) -> None:
    p = rep.field.p
    size = 1
    for n in rep.shape.alpha:
        size *= gl_order(n, p)
    _check_budget(sum(rep.shape.alpha), size, budget)


def orbit_iso_bruteforce(rep1: FramedRep, rep2: FramedRep,
                         budget: OracleBudget = OracleBudget()) -> tuple[bool, GroupElement | None]:
    """First ``g`` in the fixed enumeration order with ``act(g, rep1) == rep2``."""
    _check_field(rep1)
    _check_field(rep2)
    _group_budget(rep1, budget)
    if rep1.quiver != rep2.quiver or rep1.shape != rep2.shape or rep1.field != rep2.field:
        return False, None
    for g in group_elements(rep1.shape.alpha, rep1.field):
        if act(g, rep1) == rep2:
            return True, g
    return False, None


def orbit_partition_bruteforce(reps: Sequence[FramedRep], budget: OracleBudget = OracleBudget()) -> list[int]:
    """Orbit labels for a batch: ``labels[x] == labels[y]`` iff ``reps[y]`` is in the orbit of ``reps[x]``.

    Same enumeration as ``orbit_iso_bruteforce``, applied once per orbit instead of once per pair.
    """
    if not reps:
        return []
    _check_field(reps[0])
    _group_budget(reps[0], budget)
    group = list(group_elements(reps[0].shape.alpha, reps[0].field))
    where: dict[FramedRep, int] = {}
    labels = []
    count = 0
    for rep in reps:
        if rep not in where:
            for g in group:
                where.setdefault(act(g, rep), count)
            count += 1
        labels.append(where[rep])
    return labels
