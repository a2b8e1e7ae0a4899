"""Chart projection, its section, normal forms, isomorphism decisions and transitions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .errors import IndexMismatch, NotInChart, NotStable, SchemaError, ShapeMismatch, SingularMatrixError
from .kernel import Field, Matrix
from .quiver import ExtendedQuiver, FramedPath, FramedShape
from .rep import FramedRep, GroupElement, RowBundle, act, build_row_bundle
from .skeleton import Skeleton, skeleta_of_rep


@lru_cache(maxsize=1024)
def complement_paths(s: Skeleton) -> tuple[tuple[FramedPath, ...], ...]:
    """Per vertex: one-arrow extensions of skeleton paths not in the skeleton, plus unused framing arrows."""
    eq = s.eq
    extra: list[set] = [set() for _ in s.blocks]
    for p in s.paths:
        for e in eq.extensions(p):
            if e not in s:
                extra[e.start - 1].add(e)
    for f in eq.framing_arrows:
        if f not in s:
            extra[f.start - 1].add(f)
    return tuple(tuple(sorted(x)) for x in extra)


def chart_size(s: Skeleton) -> int:
    """Number of local coordinates: sum over vertices of ``T_i * alpha_i``."""
    return sum(len(c) * n for c, n in zip(complement_paths(s), s.alpha))


@dataclass(frozen=True)
class ChartPoint:
    """Local coordinates on the chart of ``skeleton``: one row per complement path."""

    skeleton: Skeleton
    field: Field
    coords: tuple[tuple[tuple[FramedPath, tuple], ...], ...]

    @cached_property
    def _index(self) -> dict[FramedPath, tuple]:
        return {p: r for block in self.coords for p, r in block}

    def row(self, p: FramedPath) -> tuple:
        return self._index[p]

    def matrix(self, vertex: int) -> Matrix:
        return Matrix(self.field, [r for _, r in self.coords[vertex - 1]], self.skeleton.alpha[vertex - 1],
                      coerce=False)

    def entries(self) -> list:
        return [x for block in self.coords for _, r in block for x in r]

    @property
    def size(self) -> int:
        return sum(len(r) for block in self.coords for _, r in block)

    @classmethod
    def from_rows(cls, s: Skeleton, field: Field, rows: Mapping[FramedPath, Sequence]) -> "ChartPoint":
        """Build from path-keyed rows; the key set must be exactly the complement set."""
        comp = complement_paths(s)
        want = {p for block in comp for p in block}
        if set(rows) != want:
            missing = sorted(s.eq.format(p) for p in want - set(rows))
            extra = sorted(s.eq.format(p) for p in set(rows) - want)
            raise IndexMismatch(f"chart rows do not match the complement set (missing {missing}, extra {extra})")
        coords = []
        for i, block in enumerate(comp):
            n = s.alpha[i]
            out = []
            for p in block:
                r = tuple(field.coerce(x) for x in rows[p])
                if len(r) != n:
                    raise IndexMismatch(f"row {s.eq.format(p)} has length {len(r)}, expected {n}")
                out.append((p, r))
            coords.append(tuple(out))
        return cls(s, field, tuple(coords))

    def to_json(self) -> dict:
        eq = self.skeleton.eq
        return {"skeleton": self.skeleton.labels(),
                "coords": {str(i + 1): {eq.format(p): [self.field.format(x) for x in r] for p, r in block}
                           for i, block in enumerate(self.coords)}}

    @classmethod
    def from_json(cls, eq: ExtendedQuiver, alpha: Sequence[int], field: Field, doc: dict) -> "ChartPoint":
        try:
            s = Skeleton.parse(eq, alpha, doc["skeleton"])
            rows = {}
            for v, block in doc["coords"].items():
                for label, r in block.items():
                    p = eq.parse(label)
                    if p.start != int(v):
                        raise IndexMismatch(f"path {label} listed under vertex {v} starts at {p.start}")
                    rows[p] = [field.parse(str(x)) for x in r]
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"bad chart point document: {exc}") from None
        return cls.from_rows(s, field, rows)


def _inverse_blocks(b: RowBundle, s: Skeleton) -> list[Matrix]:
    out = []
    for i, block in enumerate(s.blocks, start=1):
        out.append(b.submatrix(block, i).inverse())
    return out


def recover_arrow_maps(b: RowBundle, s: Skeleton) -> dict[str, Matrix]:
    """``M_a = B(S_{h(a)})^{-1} B(S_{h(a)} a)``, the extension rows read at vertex ``t(a)``."""
    eq = s.eq
    inv = _inverse_blocks(b, s)
    out = {}
    for k, a in enumerate(eq.quiver.arrows):
        ext = [eq.extend(p, k) for p in s.at(a.head)]
        rows = b.submatrix(ext, a.tail) if ext else Matrix(b.field, [], s.alpha[a.tail - 1])
        out[a.name] = inv[a.head - 1] @ rows
    return out


def _bundle_for(rep: FramedRep, s: Skeleton) -> RowBundle:
    comp = complement_paths(s)
    return build_row_bundle(rep, list(s.paths) + [p for block in comp for p in block])


@lru_cache(maxsize=65536)
def project_chart(rep: FramedRep, s: Skeleton) -> ChartPoint:
    """Rows of ``B^(i) B(S_i)^{-1}`` indexed by the complement set."""
    b = _bundle_for(rep, s)
    try:
        inv = _inverse_blocks(b, s)
    except SingularMatrixError:
        raise NotInChart(f"representation is outside the chart of {s}") from None
    coords = []
    for i, block in enumerate(complement_paths(s)):
        if block:
            m = b.submatrix(block, i + 1) @ inv[i]
            coords.append(tuple(zip(block, m.rows)))
        else:
            coords.append(())
    return ChartPoint(s, rep.field, tuple(coords))


def section(s: Skeleton, c: ChartPoint) -> FramedRep:
    """The representation with ``B(S_i) = E`` whose chart coordinates are ``c``."""
    if c.skeleton != s:
        raise IndexMismatch(f"chart point belongs to {c.skeleton}, not {s}")
    eq, field, al = s.eq, c.field, s.alpha
    tilde: dict[FramedPath, tuple] = dict(c._index)
    for i, block in enumerate(s.blocks):
        n = al[i]
        for k, p in enumerate(block):
            tilde[p] = tuple(field.one if j == k else field.zero for j in range(n))
    maps = []
    for k, a in enumerate(eq.quiver.arrows):
        rows = [tilde[eq.extend(p, k)] for p in s.at(a.head)]
        maps.append(Matrix(field, rows, al[a.tail - 1], coerce=False))
    framing = []
    for i in range(1, eq.quiver.n + 1):
        rows = [tilde[FramedPath(1, i, q, (), i)] for q in range(1, eq.zeta[i - 1] + 1)]
        framing.append(Matrix(field, rows, al[i - 1], coerce=False))
    return FramedRep(eq.quiver, FramedShape(al, eq.zeta), field, tuple(maps), tuple(framing))


def default_skeleton(rep: FramedRep) -> Skeleton:
    skels = skeleta_of_rep(rep)
    if not skels:
        raise NotStable("representation is not stable")
    return skels[0]


@lru_cache(maxsize=65536)
def _normal_form(rep: FramedRep, s: Skeleton) -> FramedRep:
    return section(s, project_chart(rep, s))


def normal_form(rep: FramedRep, s: Skeleton | None = None) -> FramedRep:
    """``section(s, project_chart(rep, s))``; without ``s`` the least skeleton of ``rep`` is used."""
    return _normal_form(rep, default_skeleton(rep) if s is None else s)


ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not-isomorphic"
UNDECIDED = "both-unstable-undecided"


@dataclass(frozen=True)
class IsoDecision:
    verdict: str
    witness: GroupElement | None = None
    skeleton: Skeleton | None = None
    reason: str = ""

    @property
    def isomorphic(self) -> bool:
        return self.verdict == ISOMORPHIC

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict, "reason": self.reason}
        if self.skeleton is not None:
            out["skeleton"] = self.skeleton.labels()
        if self.witness is not None:
            out["witness"] = {str(i + 1): m.tolist(as_str=True) for i, m in enumerate(self.witness.mats)}
        return out


def iso_check(rep1: FramedRep, rep2: FramedRep, strict: bool = True) -> IsoDecision:
    """Decide whether ``rep2`` lies in the orbit of ``rep1``, with a verified witness when it does.

    With ``strict`` an unstable input raises ``NotStable``; otherwise a single unstable input
    gives not-isomorphic and two give an undecided verdict.
    """
    if rep1.quiver != rep2.quiver or rep1.shape != rep2.shape:
        raise ShapeMismatch("representations have different quivers or shapes")
    if rep1.field != rep2.field:
        raise ShapeMismatch("representations live over different fields")
    sk1, sk2 = skeleta_of_rep(rep1), skeleta_of_rep(rep2)
    if not sk1 or not sk2:
        if strict:
            raise NotStable("input is not stable", which="first" if not sk1 else "second")
        if not sk1 and not sk2:
            return IsoDecision(UNDECIDED, reason="both inputs unstable")
        return IsoDecision(NOT_ISOMORPHIC, reason="exactly one input is stable")
    second = set(sk2)
    common = [s for s in sk1 if s in second]
    if not common:
        return IsoDecision(NOT_ISOMORPHIC, reason="no common skeleton")
    s = common[0]
    if project_chart(rep1, s) != project_chart(rep2, s):
        return IsoDecision(NOT_ISOMORPHIC, skeleton=s, reason="normal forms differ")
    b1, b2 = build_row_bundle(rep1, s.paths), build_row_bundle(rep2, s.paths)
    mats, invs = [], []
    for i, block in enumerate(s.blocks, start=1):
        m1, m2 = b1.submatrix(block, i), b2.submatrix(block, i)
        mats.append(m2.inverse() @ m1)
        invs.append(m1.inverse() @ m2)
    g = GroupElement(tuple(mats), tuple(invs))
    if act(g, rep1) != rep2:
        raise AssertionError("witness failed verification")
    return IsoDecision(ISOMORPHIC, witness=g, skeleton=s, reason="normal forms agree")


def transition(s: Skeleton, t: Skeleton, c: ChartPoint) -> ChartPoint:
    """Coordinates on the chart of ``t`` of the point with coordinates ``c`` on ``s``."""
    return project_chart(section(s, c), t)
