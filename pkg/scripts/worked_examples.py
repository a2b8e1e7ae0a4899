"""Walk through the small loop-quiver examples: skeleta, charts, transitions and relations.

    python3 scripts/worked_examples.py
"""
from __future__ import annotations

from fractions import Fraction

from framed_moduli import QQ, Matrix
from framed_moduli.atlas import chart_dimension, classify_coordinates, verify_relations
from framed_moduli.charts import ChartPoint, normal_form, section, transition
from framed_moduli.fixtures import L12_ROWS, L12_SKELETA, L21_ROWS, L21_SKELETA, load_relation_file, loop_example
from framed_moduli.quiver import ExtendedQuiver
from framed_moduli.rep import FramedRep
from framed_moduli.sampling import random_stable
from framed_moduli.skeleton import Skeleton, enumerate_abstract_skeleta, path_universe


def show_matrix(m: Matrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.rows) + "]"


def single_loop(m: int = 3) -> None:
    quiver, shape = loop_example(1, 1, m)
    a = [[(i + 2 * j) % 5 - 2 for j in range(m)] for i in range(m)]
    f = [[1] + [0] * (m - 1)]
    rep = FramedRep.build(quiver, shape, {"a": a}, {1: f})
    nf = normal_form(rep)
    print(f"single loop, m={m}: a = {show_matrix(rep.arrow_map('a'))}")
    print(f"  normal form a = {show_matrix(nf.arrow_map('a'))}, f = {show_matrix(nf.framing_map(1))}")


def shape_summary(q: int, k: int) -> None:
    quiver, shape = loop_example(q, k, 2)
    skels = enumerate_abstract_skeleta(quiver, shape)
    u = path_universe(quiver, shape)
    total, ess, exc = classify_coordinates(quiver, shape).counts
    print(f"{q} loop(s), {k} framing(s), m=2: {len(skels)} charts, |gamma~| = {len(u.gamma_tilde)}, "
          f"dimension {chart_dimension(quiver, shape).value}, Pluecker {total} = {ess} essential + {exc} exceed")
    for s in skels:
        print("   ", s)


def transition_demo(q: int, k: int, skeleta: dict, rows: dict, src: int, dst: int, x) -> None:
    quiver, shape = loop_example(q, k, 2)
    eq = ExtendedQuiver(quiver, shape.zeta)
    s = Skeleton.parse(eq, shape.alpha, skeleta[src])
    t = Skeleton.parse(eq, shape.alpha, skeleta[dst])
    c = ChartPoint.from_rows(s, QQ, {eq.parse(p): r for p, r in zip(rows[src], x)})
    y = transition(s, t, c)
    before = [[str(v) for v in r] for r in x]
    after = [[str(v) for v in y.row(eq.parse(p))] for p in rows[dst]]
    print(f"  chart {src} -> {dst}: {before} -> {after}")
    rep = section(s, c)
    print(f"  section on chart {src}: a = {show_matrix(rep.arrow_map('a'))}")


def relation_check(name: str, q: int, k: int, n: int = 20) -> None:
    quiver, shape = loop_example(q, k, 2)
    samples = [random_stable(quiver, shape, seed=s).rep for s in range(n)]
    report = verify_relations(load_relation_file(name), samples)
    print(f"  {name}: {len(report.names)} relations vanish on {n} samples: {report.all_zero}")


def main() -> None:
    single_loop()
    print()
    shape_summary(1, 2)
    transition_demo(1, 2, L12_SKELETA, L12_ROWS, 3, 1, [[1, 1], [0, 1]])
    relation_check("l12_m2_relations", 1, 2)
    relation_check("l12_m2_exceed", 1, 2)
    print()
    shape_summary(2, 1)
    transition_demo(2, 1, L21_SKELETA, L21_ROWS, 2, 1, [[1, 2], [Fraction(1, 2), 3], [0, -1]])
    relation_check("l21_m2_relations", 2, 1)


if __name__ == "__main__":
    main()
