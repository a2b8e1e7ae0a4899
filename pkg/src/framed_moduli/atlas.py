"""Chart membership, Plücker coordinates, essential/exceed classification, dimensions, relations."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .charts import complement_paths, chart_size, recover_arrow_maps
from .errors import FramedModuliError, SchemaError, UnknownVariable
from .kernel import Field, vecmat
from .quiver import ExtendedQuiver, FramedPath, FramedShape, Quiver
from .rep import FramedRep, RowBundle, build_row_bundle
from .skeleton import PathUniverse, Skeleton, enumerate_abstract_skeleta, path_universe

Key = tuple[FramedPath, ...]


def verify_chart_membership(b: RowBundle, s: Skeleton) -> bool:
    """Check ``B_{tau a} = B_tau M_a`` for every extension row whose parent row is present,
    with ``M_a`` recovered from the skeleton blocks."""
    eq = s.eq
    maps = recover_arrow_maps(b, s)
    for p in b.all_paths():
        par = eq.parent(p)
        if par is None or par not in b:
            continue
        m = maps[eq.quiver.arrows[p.word[-1]].name]
        if vecmat(b.row(par), m) != b.row(p):
            return False
    return True


def _sign_to_sort(seq: Sequence[FramedPath]) -> int:
    """Parity of the permutation sorting ``seq`` canonically."""
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class PlueckerVector:
    """Per vertex, maximal minors of ``B^(i)`` keyed by canonically increasing path tuples."""

    eq: ExtendedQuiver
    field: Field
    coords: tuple[dict, ...]

    def __getitem__(self, key: Iterable[FramedPath]):
        """Look up a coordinate; the key is read as a set, so order does not matter."""
        key = tuple(sorted(key))
        if not key:
            raise UnknownVariable("empty Plücker key")
        v = key[0].start
        if any(p.start != v for p in key) or key not in self.coords[v - 1]:
            raise UnknownVariable(f"no Plücker coordinate p[{','.join(self.eq.format(p) for p in key)}]")
        return self.coords[v - 1][key]

    def keys(self) -> list[Key]:
        return [k for block in self.coords for k in block]

    def replace(self, key: Iterable[FramedPath], value) -> "PlueckerVector":
        key = tuple(sorted(key))
        self[key]
        v = key[0].start
        coords = list(dict(c) for c in self.coords)
        coords[v - 1][key] = self.field.coerce(value)
        return PlueckerVector(self.eq, self.field, tuple(coords))

    def label(self, key: Key) -> str:
        return "p[" + ",".join(self.eq.format(p) for p in key) + "]"

    def to_json(self) -> dict:
        return {str(i + 1): {self.label(k): self.field.format(x) for k, x in block.items()}
                for i, block in enumerate(self.coords)}


def pluecker(b: RowBundle, eq: ExtendedQuiver) -> PlueckerVector:
    """All maximal minors per vertex; vertices with ``alpha_i = 0`` carry no coordinates."""
    coords = []
    for i, n in enumerate(b.alpha, start=1):
        block = {}
        if n > 0:
            paths = b.paths(i)
            for key in itertools.combinations(paths, n):
                block[key] = b.submatrix(key, i).det()
        coords.append(block)
    return PlueckerVector(eq, b.field, tuple(coords))


def pluecker_of_rep(rep: FramedRep, mode: str = "exact") -> PlueckerVector:
    u = path_universe(rep.quiver, rep.shape, mode)
    return pluecker(build_row_bundle(rep, u.gamma_tilde), rep.extended)


@dataclass(frozen=True)
class Provenance:
    """Where an essential key comes from.

    ``kind`` is ``"skeleton"`` or ``"replacement"``.  For a replacement, the chart coordinate
    in row ``by`` and column ``position`` equals ``sign * p_key / p_skeleton``.
    """

    skeleton: Skeleton
    kind: str
    replaced: FramedPath | None = None
    by: FramedPath | None = None
    position: int | None = None
    sign: int = 1


@dataclass(frozen=True)
class CoordinateClassification:
    universe: PathUniverse
    keys: tuple[Key, ...]
    essential: frozenset
    exceed: frozenset
    provenance: Mapping[Key, Provenance] = field(repr=False)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.keys), len(self.essential), len(self.exceed)

    def to_json(self) -> dict:
        eq = self.universe.eq

        def lab(k):
            return "p[" + ",".join(eq.format(p) for p in k) + "]"

        prov = {}
        for k in sorted(self.essential):
            pv = self.provenance[k]
            d = {"skeleton": pv.skeleton.labels(), "kind": pv.kind}
            if pv.kind == "replacement":
                d.update(replaced=eq.format(pv.replaced), by=eq.format(pv.by), position=pv.position, sign=pv.sign)
            prov[lab(k)] = d
        return {"total": len(self.keys), "essential": [lab(k) for k in sorted(self.essential)],
                "exceed": [lab(k) for k in sorted(self.exceed)], "provenance": prov}


def classify_coordinates(quiver: Quiver, shape: FramedShape, mode: str = "exact") -> CoordinateClassification:
    """Essential keys: skeleton blocks and one-element replacements by complement paths."""
    u = path_universe(quiver, shape, mode)
    keys = []
    for i, n in enumerate(shape.alpha, start=1):
        if n > 0:
            keys.extend(itertools.combinations(u.at(i), n))
    prov: dict[Key, Provenance] = {}
    for s in enumerate_abstract_skeleta(quiver, shape):
        comp = complement_paths(s)
        for i, block in enumerate(s.blocks):
            if not block:
                continue
            prov.setdefault(block, Provenance(s, "skeleton"))
            for pos, x in enumerate(block):
                for y in comp[i]:
                    row_order = block[:pos] + (y,) + block[pos + 1:]
                    k = tuple(sorted(row_order))
                    if k not in prov:
                        prov[k] = Provenance(s, "replacement", x, y, pos, _sign_to_sort(row_order))
    allkeys = set(keys)
    unknown = set(prov) - allkeys
    if unknown:
        raise AssertionError("replacement produced a key outside the universe")
    ess = frozenset(prov)
    return CoordinateClassification(u, tuple(sorted(keys)), ess, frozenset(allkeys - ess), prov)


@dataclass(frozen=True)
class ChartDimension:
    value: int
    negative: bool
    per_chart: tuple[tuple[Skeleton, int], ...]

    def to_json(self) -> dict:
        return {"dimension": self.value, "negative": self.negative,
                "per_chart": [{"skeleton": s.labels(), "entries": n} for s, n in self.per_chart]}


def dimension_formula(quiver: Quiver, shape: FramedShape) -> int:
    al, ze = shape.alpha, shape.zeta
    return (sum(al[a.head - 1] * al[a.tail - 1] for a in quiver.arrows)
            + sum(z * n for z, n in zip(ze, al)) - sum(n * n for n in al))


def chart_dimension(quiver: Quiver, shape: FramedShape) -> ChartDimension:
    """The closed-form count, cross-checked against the coordinate count of every chart."""
    d = dimension_formula(quiver, shape)
    per = tuple((s, chart_size(s)) for s in enumerate_abstract_skeleta(quiver, shape))
    for s, n in per:
        if n != d:
            raise AssertionError(f"chart {s} has {n} coordinates, formula gives {d}")
    return ChartDimension(d, d < 0, per)


_KEY_RE = re.compile(r"p\[([^\]]*)\]")
_FACTOR_RE = re.compile(r"\s*(p\[[^\]]*\]|\d+)\s*(?:\^\s*(\d+))?\s*")


@dataclass(frozen=True)
class RelationPoly:
    """Integer-coefficient polynomial in Plücker variables, keys held as path-label tuples."""

    terms: tuple[tuple[Fraction, tuple[tuple[tuple[str, ...], int], ...]], ...]
    name: str = ""

    @staticmethod
    def _key(label: str) -> tuple[str, ...]:
        m = _KEY_RE.fullmatch(label.strip())
        if m is None:
            raise SchemaError(f"bad Plücker variable {label!r}")
        return tuple(x.strip() for x in m.group(1).split(","))

    @classmethod
    def from_json(cls, doc: dict) -> "RelationPoly":
        try:
            terms = []
            for t in doc["terms"]:
                mono = tuple(sorted((cls._key(k), int(e)) for k, e in t["monomial"].items()))
                terms.append((Fraction(str(t["coef"])), mono))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad relation document: {exc}") from None
        return cls(tuple(terms), str(doc.get("name", "")))

    def to_json(self) -> dict:
        out: dict = {"terms": [{"coef": str(c),
                                "monomial": {"p[" + ",".join(k) + "]": e for k, e in mono}}
                               for c, mono in self.terms]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "RelationPoly":
        """Parse ``"2*p[f1.1,f1.2]^2 - p[f1.1,f1.1*a]*p[f1.2,f1.2*a]"``; no parentheses."""
        terms = []
        for sign, body in _split_terms(text):
            coef = Fraction(sign)
            mono: dict[tuple[str, ...], int] = {}
            for part in _split_factors(body):
                m = _FACTOR_RE.fullmatch(part)
                if m is None:
                    raise SchemaError(f"cannot parse factor {part!r}")
                e = int(m.group(2) or 1)
                if m.group(1).startswith("p["):
                    k = cls._key(m.group(1))
                    mono[k] = mono.get(k, 0) + e
                else:
                    coef *= Fraction(int(m.group(1))) ** e
            terms.append((coef, tuple(sorted(mono.items()))))
        return cls(tuple(terms), name)

    def variables(self) -> set[tuple[str, ...]]:
        return {k for _, mono in self.terms for k, _ in mono}

    def evaluate(self, pv: PlueckerVector):
        f = pv.field
        total = f.zero
        cache = {}
        for k in self.variables():
            try:
                paths = [pv.eq.parse(x) for x in k]
            except FramedModuliError as exc:
                raise UnknownVariable(f"cannot resolve p[{','.join(k)}]: {exc}") from None
            cache[k] = pv[paths]
        for c, mono in self.terms:
            t = f.coerce(c)
            for k, e in mono:
                for _ in range(e):
                    t = f.norm(t * cache[k])
            total = f.norm(total + t)
        return total


def _split_terms(text: str) -> list[tuple[int, str]]:
    out, depth, cur, sign = [], 0, "", 1
    for ch in text.strip():
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur.strip()))
            sign = -1 if ch == "-" else 1
            cur = ""
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    return out


def _split_factors(body: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch == "*":
            out.append(cur)
            cur = ""
            continue
        cur += ch
    out.append(cur)
    return [x for x in out if x.strip()]


def load_relations(doc: list) -> list[RelationPoly]:
    if not isinstance(doc, list):
        raise SchemaError("a relation file is a JSON list")
    return [RelationPoly.from_json(d) for d in doc]


@dataclass(frozen=True)
class RelationReport:
    """``values[r][s]`` is relation ``r`` evaluated at sample ``s``."""

    names: tuple[str, ...]
    values: tuple[tuple, ...]
    field: Field

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for row in self.values for v in row)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(r, s) for r, row in enumerate(self.values) for s, v in enumerate(row) if v != 0]

    def to_json(self) -> dict:
        return {"all_zero": self.all_zero,
                "relations": [{"name": n, "zero": [v == 0 for v in row],
                               "values": [self.field.format(v) for v in row]}
                              for n, row in zip(self.names, self.values)]}


def evaluate_relations(relations: Sequence[RelationPoly], points: Sequence[PlueckerVector],
                       field: Field) -> RelationReport:
    values = tuple(tuple(r.evaluate(pv) for pv in points) for r in relations)
    names = tuple(r.name or f"r{k + 1}" for k, r in enumerate(relations))
    return RelationReport(names, values, field)


def verify_relations(relations: Sequence[RelationPoly], samples: Sequence[FramedRep],
                     mode: str = "exact") -> RelationReport:
    """Evaluate every relation on the Plücker vector of every sample."""
    if not samples:
        return RelationReport(tuple(r.name for r in relations), tuple(() for _ in relations), Field())
    pts = [pluecker_of_rep(s, mode) for s in samples]
    return evaluate_relations(relations, pts, samples[0].field)
