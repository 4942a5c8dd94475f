"""Core data model: finite windows of an extriangulated category.

A :class:`Window` fixes a finite list of indecomposable objects (by
coordinates) together with a safe core, and exposes exact scalar arithmetic
for morphisms and extension classes between direct sums of them.

The key simplification, validated at runtime: in the categories this package
models, every Hom and every E-group between two indecomposables has dimension
at most one.  Morphisms between direct sums are therefore matrices of
rationals over canonical generators, and composition / pushforward /
pullback reduce to cached structure constants.  Whenever a dimension larger
than one shows up, the window refuses to continue rather than silently
producing garbage.

Concrete windows live in the backend modules; this module only knows the
shared algebra.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ._linalg import Mat

Q = Fraction

Coord = tuple[int, int]


class ConfigError(ValueError):
    """A window or fixture description is inconsistent."""


class ScalarHypothesisError(RuntimeError):
    """A hom or E-group between indecomposables came out bigger than one."""


# ---------------------------------------------------------------------------
# objects, morphisms, extension classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Obj:
    """Direct sum of window indecomposables, as a sorted tuple of indices."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.parts)) != self.parts:
            raise ValueError("parts must be sorted")

    @property
    def n(self) -> int:
        return len(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def plus(self, other: "Obj") -> "Obj":
        return Obj(tuple(sorted(self.parts + other.parts)))

    def multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out


ZERO_OBJ = Obj(())


def obj_of(parts: Iterable[int]) -> Obj:
    return Obj(tuple(sorted(parts)))


@dataclass(frozen=True)
class Mor:
    """Morphism between sums: ``mat[r][c]`` scales the canonical generator
    ``src.parts[c] → dst.parts[r]`` (zero where no generator exists)."""

    src: Obj
    dst: Obj
    mat: Mat

    def __post_init__(self) -> None:
        if (self.mat.rows, self.mat.cols) != (self.dst.n, self.src.n):
            raise ValueError("matrix shape does not match objects")

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def scale(self, c) -> "Mor":
        return Mor(self.src, self.dst, self.mat.scale(c))


@dataclass(frozen=True)
class ExtClass:
    """Element of ``E^degree(base, fiber)`` with the same matrix convention
    as morphisms: ``mat[r][c]`` scales the generator of
    ``E^degree(base.parts[c], fiber.parts[r])``."""

    base: Obj
    fiber: Obj
    mat: Mat
    degree: int = 1

    def __post_init__(self) -> None:
        if (self.mat.rows, self.mat.cols) != (self.fiber.n, self.base.n):
            raise ValueError("matrix shape does not match objects")
        if self.degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are modelled")

    def is_zero(self) -> bool:
        return self.mat.is_zero()


@dataclass(frozen=True)
class Triangle:
    """An E-triangle ``fiber → total → base`` realizing ``delta``."""

    fiber: Obj
    total: Obj
    base: Obj
    f: Mor  # fiber → total (inflation)
    g: Mor  # total → base (deflation)
    delta: ExtClass  # in E(base, fiber)


# ---------------------------------------------------------------------------
# bounded-check budgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Budget:
    """Caps for enumerative checks.

    Results computed under a budget are sound but possibly incomplete: a
    failed search within the caps means "not found below the caps", which
    callers must report as inconclusive rather than false.
    """

    max_summands: int = 2
    coeff_grid: tuple[int, ...] = (-1, 0, 1)
    max_positions: int = 6
    max_objects: int | None = None

    @staticmethod
    def preset(name: str) -> "Budget":
        if name == "quick":
            return Budget(max_summands=1, coeff_grid=(-1, 0, 1), max_positions=4)
        if name == "default":
            return Budget()
        if name == "deep":
            return Budget(max_summands=3, coeff_grid=(-2, -1, 0, 1, 2), max_positions=8)
        raise ConfigError(f"unknown budget preset {name!r}")


# ---------------------------------------------------------------------------
# the window
# ---------------------------------------------------------------------------


class Window(ABC):
    """A finite window of indecomposables with scalar-level exact arithmetic.

    Subclasses supply the category-specific raw computations (dimension of a
    hom or E-group between two indecomposables, structure constants, triangle
    realization); this base class supplies caching, the matrix calculus on
    direct sums, and the long-exact-sequence checks.
    """

    kind: str = "abstract"

    def __init__(self, coords: Sequence[Coord], core_coords: Iterable[Coord]):
        self.coords: tuple[Coord, ...] = tuple(coords)
        if len(set(self.coords)) != len(self.coords):
            raise ConfigError("duplicate coordinates in window")
        self.index: dict[Coord, int] = {c: i for i, c in enumerate(self.coords)}
        core = frozenset(core_coords)
        missing = core - set(self.coords)
        if missing:
            raise ConfigError(f"core coordinates outside window: {sorted(missing)}")
        self.core: frozenset[int] = frozenset(self.index[c] for c in core)
        self._dims: dict[tuple[int, int, int], int] = {}
        self._comp: dict[tuple[int, int, int], Fraction] = {}
        self._push: dict[tuple[int, int, int, int], Fraction] = {}
        self._pull: dict[tuple[int, int, int, int], Fraction] = {}
        self._yon: dict[tuple[int, int, int], Fraction] = {}

    # -- indecomposables ----------------------------------------------

    @property
    def n_indecs(self) -> int:
        return len(self.coords)

    def indec(self, coord: Coord) -> int:
        try:
            return self.index[coord]
        except KeyError:
            raise ConfigError(f"coordinate {coord} not in window") from None

    def label(self, i: int) -> str:
        return str(self.coords[i])

    def obj(self, coords_or_indices: Iterable) -> Obj:
        parts = []
        for x in coords_or_indices:
            parts.append(x if isinstance(x, int) else self.indec(tuple(x)))
        return obj_of(parts)

    def in_core(self, x: Obj | int) -> bool:
        if isinstance(x, int):
            return x in self.core
        return all(p in self.core for p in x.parts)

    # -- raw layer (supplied by backends) ------------------------------

    @abstractmethod
    def _dim_pair(self, i: int, j: int, s: int) -> int:
        """dim Hom(i, j) for s = 0, dim E^s(i, j) for s = 1, 2."""

    @abstractmethod
    def _comp_scalar(self, i: int, j: int, k: int) -> Fraction:
        """gen(j→k) ∘ gen(i→j) = c · gen(i→k)."""

    @abstractmethod
    def _push_scalar(self, c: int, a: int, a2: int, s: int) -> Fraction:
        """gen(a→a2)_* gen_E^s(c, a) = t · gen_E^s(c, a2)."""

    @abstractmethod
    def _pull_scalar(self, c2: int, c: int, a: int, s: int) -> Fraction:
        """gen(c2→c)^* gen_E^s(c, a) = t · gen_E^s(c2, a)."""

    @abstractmethod
    def _yoneda_scalar(self, c: int, b: int, a: int) -> Fraction:
        """gen_E(b, a) ∘ gen_E(c, b) = t · gen_E²(c, a)."""

    @abstractmethod
    def realize(self, delta: ExtClass) -> Triangle:
        """Realize a degree-1 class as an E-triangle."""

    @abstractmethod
    def is_inflation(self, f: Mor) -> bool: ...

    @abstractmethod
    def is_deflation(self, f: Mor) -> bool: ...

    @abstractmethod
    def cone_of(self, f: Mor) -> Triangle:
        """Complete an inflation ``f`` to an E-triangle."""

    @abstractmethod
    def cocone_of(self, g: Mor) -> Triangle:
        """Complete a deflation ``g`` to an E-triangle."""

    @abstractmethod
    def mor_is_iso(self, f: Mor) -> bool: ...

    # -- cached dimensions --------------------------------------------

    def dim_pair(self, i: int, j: int, s: int = 0) -> int:
        key = (i, j, s)
        if key not in self._dims:
            d = self._dim_pair(i, j, s)
            if d > 1:
                raise ScalarHypothesisError(
                    f"dim^{s}({self.label(i)}, {self.label(j)}) = {d} > 1"
                )
            self._dims[key] = d
        return self._dims[key]

    def hom_dim(self, x: Obj, y: Obj) -> int:
        return sum(self.dim_pair(i, j, 0) for i in x.parts for j in y.parts)

    def ext_dim(self, x: Obj, y: Obj, s: int = 1) -> int:
        return sum(self.dim_pair(i, j, s) for i in x.parts for j in y.parts)

    def comp_scalar(self, i: int, j: int, k: int) -> Fraction:
        if not (self.dim_pair(i, j) and self.dim_pair(j, k)):
            return Q(0)
        key = (i, j, k)
        if key not in self._comp:
            c = self._comp_scalar(i, j, k)
            if c != 0 and self.dim_pair(i, k) == 0:
                raise ScalarHypothesisError("nonzero composite into a zero hom space")
            self._comp[key] = c
        return self._comp[key]

    def push_scalar(self, c: int, a: int, a2: int, s: int = 1) -> Fraction:
        if not (self.dim_pair(c, a, s) and self.dim_pair(a, a2)):
            return Q(0)
        key = (c, a, a2, s)
        if key not in self._push:
            self._push[key] = self._push_scalar(c, a, a2, s)
        return self._push[key]

    def pull_scalar(self, c2: int, c: int, a: int, s: int = 1) -> Fraction:
        if not (self.dim_pair(c, a, s) and self.dim_pair(c2, c)):
            return Q(0)
        key = (c2, c, a, s)
        if key not in self._pull:
            self._pull[key] = self._pull_scalar(c2, c, a, s)
        return self._pull[key]

    def yoneda_scalar(self, c: int, b: int, a: int) -> Fraction:
        if not (self.dim_pair(c, b, 1) and self.dim_pair(b, a, 1)):
            return Q(0)
        key = (c, b, a)
        if key not in self._yon:
            self._yon[key] = self._yoneda_scalar(c, b, a)
        return self._yon[key]

    # -- morphism calculus --------------------------------------------

    def zero_mor(self, x: Obj, y: Obj) -> Mor:
        return Mor(x, y, Mat.zeros(y.n, x.n))

    def identity(self, x: Obj) -> Mor:
        return Mor(x, x, Mat.identity(x.n))

    def mor(self, x: Obj, y: Obj, entries: Sequence[Sequence]) -> Mor:
        f = Mor(x, y, Mat.from_rows(entries, cols=x.n))
        self._check_mor_support(f)
        return f

    def _check_mor_support(self, f: Mor) -> None:
        for r, j in enumerate(f.dst.parts):
            for c, i in enumerate(f.src.parts):
                if f.mat.data[r][c] != 0 and self.dim_pair(i, j) == 0:
                    raise ConfigError(
                        f"entry at a pair with zero hom: {self.label(i)} → {self.label(j)}"
                    )

    def mor_basis(self, x: Obj, y: Obj) -> list[Mor]:
        out = []
        for r, j in enumerate(y.parts):
            for c, i in enumerate(x.parts):
                if self.dim_pair(i, j):
                    m = [[Q(0)] * x.n for _ in range(y.n)]
                    m[r][c] = Q(1)
                    out.append(Mor(x, y, Mat.from_rows(m, cols=x.n)))
        return out

    def ext_basis(self, base: Obj, fiber: Obj, s: int = 1) -> list[ExtClass]:
        out = []
        for r, j in enumerate(fiber.parts):
            for c, i in enumerate(base.parts):
                if self.dim_pair(i, j, s):
                    m = [[Q(0)] * base.n for _ in range(fiber.n)]
                    m[r][c] = Q(1)
                    out.append(ExtClass(base, fiber, Mat.from_rows(m, cols=base.n), s))
        return out

    def compose(self, g: Mor, f: Mor) -> Mor:
        """``g ∘ f`` for f: X → Y, g: Y → Z."""
        if f.dst != g.src:
            raise ValueError("composition mismatch")
        x, y, z = f.src, f.dst, g.dst
        rows = []
        for r, k in enumerate(z.parts):
            row = []
            for c, i in enumerate(x.parts):
                acc = Q(0)
                for m, j in enumerate(y.parts):
                    fv = f.mat.data[m][c]
                    gv = g.mat.data[r][m]
                    if fv != 0 and gv != 0:
                        acc += fv * gv * self.comp_scalar(i, j, k)
                row.append(acc)
            rows.append(row)
        return Mor(x, z, Mat.from_rows(rows, cols=x.n))

    def add_mor(self, f: Mor, g: Mor) -> Mor:
        if f.src != g.src or f.dst != g.dst:
            raise ValueError("addition mismatch")
        return Mor(f.src, f.dst, f.mat + g.mat)

    def push(self, f: Mor, delta: ExtClass) -> ExtClass:
        """``f_* delta`` for f: fiber → fiber', delta in E^s(base, fiber)."""
        if f.src != delta.fiber:
            raise ValueError("push mismatch")
        base, a, a2 = delta.base, delta.fiber, f.dst
        rows = []
        for r, k in enumerate(a2.parts):
            row = []
            for c, i in enumerate(base.parts):
                acc = Q(0)
                for m, j in enumerate(a.parts):
                    dv = delta.mat.data[m][c]
                    fv = f.mat.data[r][m]
                    if dv != 0 and fv != 0:
                        acc += dv * fv * self.push_scalar(i, j, k, delta.degree)
                row.append(acc)
            rows.append(row)
        return ExtClass(base, a2, Mat.from_rows(rows, cols=base.n), delta.degree)

    def pull(self, g: Mor, delta: ExtClass) -> ExtClass:
        """``g^* delta`` for g: base' → base, delta in E^s(base, fiber)."""
        if g.dst != delta.base:
            raise ValueError("pull mismatch")
        base2, a = g.src, delta.fiber
        rows = []
        for r, j in enumerate(a.parts):
            row = []
            for c, i2 in enumerate(base2.parts):
                acc = Q(0)
                for m, i in enumerate(delta.base.parts):
                    dv = delta.mat.data[r][m]
                    gv = g.mat.data[m][c]
                    if dv != 0 and gv != 0:
                        acc += dv * gv * self.pull_scalar(i2, i, j, delta.degree)
                row.append(acc)
            rows.append(row)
        return ExtClass(base2, a, Mat.from_rows(rows, cols=base2.n), delta.degree)

    def yoneda(self, delta: ExtClass, eps: ExtClass) -> ExtClass:
        """Composite ``delta ∘ eps`` in E²: eps in E(C, B), delta in E(B, A)."""
        if delta.degree != 1 or eps.degree != 1:
            raise ValueError("yoneda composite needs two degree-1 classes")
        if delta.base != eps.fiber:
            raise ValueError("yoneda mismatch")
        c_obj, b_obj, a_obj = eps.base, eps.fiber, delta.fiber
        rows = []
        for r, a in enumerate(a_obj.parts):
            row = []
            for c, cc in enumerate(c_obj.parts):
                acc = Q(0)
                for m, b in enumerate(b_obj.parts):
                    ev = eps.mat.data[m][c]
                    dv = delta.mat.data[r][m]
                    if ev != 0 and dv != 0:
                        acc += ev * dv * self.yoneda_scalar(cc, b, a)
                row.append(acc)
            rows.append(row)
        return ExtClass(c_obj, a_obj, Mat.from_rows(rows, cols=c_obj.n), 2)

    # -- hom/ext spaces as explicit coordinate spaces ------------------

    def _space_basis(self, x: Obj, y: Obj, s: int) -> list[tuple[int, int]]:
        """Index pairs (pos in x, pos in y) carrying a generator."""
        return [
            (c, r)
            for c in range(x.n)
            for r in range(y.n)
            if self.dim_pair(x.parts[c], y.parts[r], s)
        ]

    def _post_matrix(self, x: Obj, f: Mor, s: int) -> Mat:
        """Matrix of ``Hom(x, f)`` (s = 0) or ``E^s(x, f)`` in pair bases."""
        src_idx = self._space_basis(x, f.src, s)
        dst_idx = self._space_basis(x, f.dst, s)
        rows = []
        for (cx2, r2) in dst_idx:
            row = []
            for (cx, r) in src_idx:
                if cx != cx2:
                    row.append(Q(0))
                    continue
                i = x.parts[cx]
                j = f.src.parts[r]
                k = f.dst.parts[r2]
                scal = (
                    self.comp_scalar(i, j, k)
                    if s == 0
                    else self.push_scalar(i, j, k, s)
                )
                row.append(f.mat.data[r2][r] * scal)
            rows.append(row)
        return Mat.from_rows(rows, cols=len(src_idx))

    def _pre_matrix(self, f: Mor, y: Obj, s: int) -> Mat:
        """Matrix of ``Hom(f, y)`` (s = 0) or ``E^s(f, y)`` in pair bases."""
        src_idx = self._space_basis(f.dst, y, s)
        dst_idx = self._space_basis(f.src, y, s)
        rows = []
        for (c2, ry2) in dst_idx:
            row = []
            for (c, ry) in src_idx:
                if ry != ry2:
                    row.append(Q(0))
                    continue
                i2 = f.src.parts[c2]
                i = f.dst.parts[c]
                j = y.parts[ry]
                scal = (
                    self.comp_scalar(i2, i, j)
                    if s == 0
                    else self.pull_scalar(i2, i, j, s)
                )
                row.append(f.mat.data[c][c2] * scal)
            rows.append(row)
        return Mat.from_rows(rows, cols=len(src_idx))

    def _connect_co(self, x: Obj, delta: ExtClass, s_from: int) -> Mat:
        """Hom(x, base) → E(x, fiber) (s_from=0) or E(x, base) → E²(x, fiber)."""
        src_idx = self._space_basis(x, delta.base, s_from)
        dst_idx = self._space_basis(x, delta.fiber, s_from + 1)
        rows = []
        for (cx2, rf) in dst_idx:
            row = []
            for (cx, rb) in src_idx:
                if cx != cx2:
                    row.append(Q(0))
                    continue
                i = x.parts[cx]
                c = delta.base.parts[rb]
                a = delta.fiber.parts[rf]
                if s_from == 0:
                    scal = self.pull_scalar(i, c, a, 1)
                else:
                    scal = self.yoneda_scalar(i, c, a)
                row.append(delta.mat.data[rf][rb] * scal)
            rows.append(row)
        return Mat.from_rows(rows, cols=len(src_idx))

    def _connect_contra(self, delta: ExtClass, x: Obj, s_from: int) -> Mat:
        """Hom(fiber, x) → E(base, x) (s_from=0) or E(fiber, x) → E²(base, x)."""
        src_idx = self._space_basis(delta.fiber, x, s_from)
        dst_idx = self._space_basis(delta.base, x, s_from + 1)
        rows = []
        for (cb, rx2) in dst_idx:
            row = []
            for (ca, rx) in src_idx:
                if rx != rx2:
                    row.append(Q(0))
                    continue
                c = delta.base.parts[cb]
                a = delta.fiber.parts[ca]
                j = x.parts[rx]
                if s_from == 0:
                    scal = self.push_scalar(c, a, j, 1)
                else:
                    scal = self.yoneda_scalar(c, a, j)
                row.append(delta.mat.data[ca][cb] * scal)
            rows.append(row)
        return Mat.from_rows(rows, cols=len(src_idx))

    # -- long exact sequence checks ------------------------------------

    def les_covariant(self, tri: Triangle, x: Obj) -> list[tuple[Mat, int]]:
        """The nine-term sequence Hom(x,A) → … → E²(x,C) as matrices with
        their target dimensions."""
        a, b, c = tri.fiber, tri.total, tri.base
        seq: list[tuple[Mat, int]] = []
        for s in (0, 1, 2):
            m1 = self._post_matrix(x, tri.f, s)
            m2 = self._post_matrix(x, tri.g, s)
            seq.append((m1, len(self._space_basis(x, b, s))))
            seq.append((m2, len(self._space_basis(x, c, s))))
            if s < 2:
                m3 = self._connect_co(x, tri.delta, s)
                seq.append((m3, len(self._space_basis(x, a, s + 1))))
        return seq

    def les_contravariant(self, tri: Triangle, x: Obj) -> list[tuple[Mat, int]]:
        """The nine-term sequence Hom(C,x) → … → E²(A,x)."""
        a, b, c = tri.fiber, tri.total, tri.base
        seq: list[tuple[Mat, int]] = []
        for s in (0, 1, 2):
            m1 = self._pre_matrix(tri.g, x, s)
            m2 = self._pre_matrix(tri.f, x, s)
            seq.append((m1, len(self._space_basis(b, x, s))))
            seq.append((m2, len(self._space_basis(a, x, s))))
            if s < 2:
                m3 = self._connect_contra(tri.delta, x, s)
                seq.append((m3, len(self._space_basis(c, x, s + 1))))
        return seq

    def check_les_exact(self, tri: Triangle, x: Obj) -> tuple[bool, str]:
        """Exactness of both induced sequences at every interior node.

        Returns ``(ok, detail)``; the detail names the first failing node."""
        for name, seq in (
            ("covariant", self.les_covariant(tri, x)),
            ("contravariant", self.les_contravariant(tri, x)),
        ):
            for pos, ((m1, _), (m2, _)) in enumerate(zip(seq, seq[1:])):
                if not (m2 @ m1).is_zero():
                    return False, f"{name} node {pos}: consecutive maps do not compose to zero"
                if m1.rank() + m2.rank() != m1.rows:
                    return False, (
                        f"{name} node {pos}: rank {m1.rank()} + {m2.rank()}"
                        f" != dim {m1.rows}"
                    )
        return True, "exact"

    # -- sums and convenience ------------------------------------------

    def direct_sum_mor(self, fs: Sequence[Mor]) -> Mor:
        src = obj_of([p for f in fs for p in f.src.parts])
        dst = obj_of([p for f in fs for p in f.dst.parts])
        # parts get re-sorted, so build entry-by-entry through labelled slots
        rows = [[Q(0)] * src.n for _ in range(dst.n)]
        src_slots = _slot_assignment([f.src.parts for f in fs], src.parts)
        dst_slots = _slot_assignment([f.dst.parts for f in fs], dst.parts)
        for t, f in enumerate(fs):
            for r in range(f.dst.n):
                for c in range(f.src.n):
                    v = f.mat.data[r][c]
                    if v != 0:
                        rows[dst_slots[t][r]][src_slots[t][c]] = v
        return Mor(src, dst, Mat.from_rows(rows, cols=src.n))

    def triangle_of_sum(self, tris: Sequence[Triangle]) -> Triangle:
        f = self.direct_sum_mor([t.f for t in tris])
        g = self.direct_sum_mor([t.g for t in tris])
        base = g.dst
        fiber = f.src
        rows = [[Q(0)] * base.n for _ in range(fiber.n)]
        base_slots = _slot_assignment([t.base.parts for t in tris], base.parts)
        fib_slots = _slot_assignment([t.fiber.parts for t in tris], fiber.parts)
        for t_i, t in enumerate(tris):
            for r in range(t.fiber.n):
                for c in range(t.base.n):
                    v = t.delta.mat.data[r][c]
                    if v != 0:
                        rows[fib_slots[t_i][r]][base_slots[t_i][c]] = v
        delta = ExtClass(base, fiber, Mat.from_rows(rows, cols=base.n))
        return Triangle(fiber, f.dst, base, f, g, delta)


def _slot_assignment(
    groups: Sequence[tuple[int, ...]], merged: tuple[int, ...]
) -> list[list[int]]:
    """Assign each element of each group a distinct slot in the merged sorted
    tuple holding the same value, in order."""
    used: dict[int, int] = {}
    out: list[list[int]] = []
    positions: dict[int, list[int]] = {}
    for pos, v in enumerate(merged):
        positions.setdefault(v, []).append(pos)
    for g in groups:
        slots = []
        for v in g:
            k = used.get(v, 0)
            slots.append(positions[v][k])
            used[v] = k + 1
        out.append(slots)
    return out


def window_pair_agrees(w1: Window, w2: Window, coords: Iterable[Coord]) -> bool:
    """Stability protocol: two windows agree on all pairwise dimensions over
    the given coordinates (which must lie in both)."""
    cs = list(coords)
    for c1, c2 in itertools.product(cs, cs):
        i1, j1 = w1.indec(c1), w1.indec(c2)
        i2, j2 = w2.indec(c1), w2.indec(c2)
        for s in (0, 1, 2):
            if w1.dim_pair(i1, j1, s) != w2.dim_pair(i2, j2, s):
                return False
    return True
