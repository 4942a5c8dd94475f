"""Subcategory operators on a window.

A :class:`Subcat` is a set of window indecomposables, implicitly closed
under finite sums, summands, and isomorphism (the representation enforces
all three).  On top of that this module provides the operators the rest of
the package composes:

* Ext-perpendiculars ``perp_right`` / ``perp_left``;
* least-fixed-point closures under extensions, cones, or cocones;
* the fiber/base product ``star`` and the one-sided triangle classes
  ``s_left`` / ``s_right``;
* the structural predicates ``is_thick`` and ``is_hovey``.

Membership searches are exhaustive within the scalar-morphism regime: any
map from a sum of pairwise distinct indecomposables into an indecomposable
can be normalized, by automorphisms of the sum, to the all-ones map on a
subset of its summands.  Right/left-minimal reduction bounds multiplicities
by hom dimensions (here: one), so enumerating subsets of the hom-supported
candidates decides membership outright.  Only window-boundary escapes and
oversized candidate pools degrade an answer to "inconclusive" — never to a
wrong verdict.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from ._linalg import Mat
from .model import Budget, ExtClass, Mor, Obj, Triangle, Window, obj_of
from .oracle import OracleError

Q = Fraction


# ---------------------------------------------------------------------------
# the subcategory type
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subcat:
    """An additively closed class of window objects, stored by its
    indecomposable members.  Equality and hashing ignore provenance."""

    members: frozenset[int]
    provenance: str = "literal"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subcat) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __contains__(self, x: object) -> bool:
        if isinstance(x, Obj):
            return self.has(x)
        return x in self.members

    def has(self, x: Obj) -> bool:
        """The zero object belongs to every subcategory."""
        return all(p in self.members for p in x.parts)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def union(self, other: "Subcat") -> "Subcat":
        return Subcat(self.members | other.members, "union")

    def intersect(self, other: "Subcat") -> "Subcat":
        return Subcat(self.members & other.members, "intersection")

    def difference(self, other: "Subcat") -> "Subcat":
        return Subcat(self.members - other.members, "difference")

    def restrict(self, indices: Iterable[int]) -> "Subcat":
        return Subcat(self.members & set(indices), self.provenance)

    def labels(self, win: Window) -> list[str]:
        return [win.label(i) for i in self.sorted_members()]


def subcat(win: Window, items: Iterable, provenance: str = "literal") -> Subcat:
    """Build a subcategory from coordinates or raw indices."""
    idx = set()
    for x in items:
        idx.add(x if isinstance(x, int) else win.indec(tuple(x)))
    return Subcat(frozenset(idx), provenance)


def full_subcat(win: Window, region: str = "window") -> Subcat:
    return Subcat(frozenset(region_indices(win, region)), "full")


def zero_subcat() -> Subcat:
    return Subcat(frozenset(), "zero")


def region_indices(win: Window, region: str) -> list[int]:
    if region == "core":
        return sorted(win.core)
    if region == "window":
        return list(range(win.n_indecs))
    raise ValueError(f"unknown region {region!r}")


# ---------------------------------------------------------------------------
# perpendiculars
# ---------------------------------------------------------------------------


def perp_right(win: Window, x: Subcat, region: str = "core") -> Subcat:
    """All region objects ``b`` with every extension group over base in
    ``x`` and fiber ``b`` zero."""
    out = [
        b
        for b in region_indices(win, region)
        if all(win.dim_pair(i, b, 1) == 0 for i in x.members)
    ]
    return Subcat(frozenset(out), "perp_right")


def perp_left(win: Window, y: Subcat, region: str = "core") -> Subcat:
    """All region objects ``b`` with every extension group over base ``b``
    and fiber in ``y`` zero."""
    out = [
        b
        for b in region_indices(win, region)
        if all(win.dim_pair(b, j, 1) == 0 for j in y.members)
    ]
    return Subcat(frozenset(out), "perp_left")


# ---------------------------------------------------------------------------
# probe maps: all-ones fans between an indecomposable and a sum
# ---------------------------------------------------------------------------


def fan_in(win: Window, parts: Sequence[int], b: int) -> Mor:
    """The map ``⊕ parts → b`` whose components are the canonical
    generators; every map from a multiplicity-free sum that touches each
    summand is isomorphic to one of these."""
    src = obj_of(parts)
    row = [[Q(1)] * len(parts)]
    return Mor(src, Obj((b,)), Mat.from_rows(row, cols=len(parts)))


def fan_out(win: Window, b: int, parts: Sequence[int]) -> Mor:
    dst = obj_of(parts)
    col = [[Q(1)] for _ in parts]
    return Mor(Obj((b,)), dst, Mat.from_rows(col, cols=1))


def _hom_supported(win: Window, pool: Iterable[int], b: int, into: bool) -> list[int]:
    """Pool members with a nonzero hom into (or out of) ``b``."""
    if into:
        return [i for i in sorted(pool) if win.dim_pair(i, b, 0)]
    return [i for i in sorted(pool) if win.dim_pair(b, i, 0)]


def _subsets(cands: Sequence[int], cap: int) -> Iterator[tuple[int, ...]]:
    for k in range(0, min(len(cands), cap) + 1):
        yield from itertools.combinations(cands, k)


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------


def closure(
    win: Window,
    s0: Subcat,
    mode: str = "extensions",
    *,
    budget: Budget | None = None,
    on_escape: str = "raise",
) -> Subcat:
    """Least fixed point of ``s0`` inside the window under the chosen
    operation.

    ``extensions`` adds the middle term of every extension between current
    members (pairwise suffices: middles over decomposable ends are iterated
    middles over indecomposable ones).  ``cones`` / ``cocones`` complete
    probe inflations / deflations between current members.  A realization
    that leaves the window either raises or, with ``on_escape="ignore"``,
    is skipped — the result is then a lower bound for the fixed point.
    """
    if mode not in ("extensions", "cones", "cocones"):
        raise ValueError(f"unknown closure mode {mode!r}")
    if on_escape not in ("raise", "ignore"):
        raise ValueError(f"unknown escape policy {on_escape!r}")
    budget = budget or Budget()
    cur: set[int] = set(s0.members)
    done: set[tuple] = set()
    while True:
        added = False
        for key, tri in _closure_probes(win, sorted(cur), mode, budget, done, on_escape):
            done.add(key)
            new = tri.total.parts if mode == "extensions" else (
                tri.base.parts if mode == "cones" else tri.fiber.parts
            )
            for p in new:
                if p not in cur:
                    cur.add(p)
                    added = True
        if not added:
            break
    return Subcat(frozenset(cur), f"closure:{mode}")


def _closure_probes(
    win: Window,
    members: list[int],
    mode: str,
    budget: Budget,
    done: set[tuple],
    on_escape: str,
) -> Iterator[tuple[tuple, Triangle]]:
    if mode == "extensions":
        for c in members:  # base
            for a in members:  # fiber
                key = (c, a)
                if key in done or not win.dim_pair(c, a, 1):
                    continue
                delta = ExtClass(Obj((c,)), Obj((a,)), Mat.from_rows([[Q(1)]], cols=1))
                try:
                    yield key, win.realize(delta)
                except OracleError:
                    if on_escape == "raise":
                        raise
                    done.add(key)
        return
    for a in members:
        pool = _hom_supported(win, members, a, into=(mode == "cocones"))
        for t in _subsets(pool, budget.max_summands):
            key = (mode, a, t)
            if key in done:
                continue
            try:
                if mode == "cones":
                    f = fan_out(win, a, t)
                    if not win.is_inflation(f):
                        done.add(key)
                        continue
                    yield key, win.cone_of(f)
                else:
                    g = fan_in(win, t, a)
                    if not win.is_deflation(g):
                        done.add(key)
                        continue
                    yield key, win.cocone_of(g)
            except OracleError:
                if on_escape == "raise":
                    raise
                done.add(key)


def is_extension_closed(
    win: Window, s: Subcat, *, budget: Budget | None = None, region: str = "core"
) -> bool:
    """Whether the extension closure adds nothing new on the region."""
    closed = closure(win, s, "extensions", budget=budget, on_escape="ignore")
    reg = set(region_indices(win, region))
    return closed.members & reg == s.members & reg


def shift_stable(win: Window, s: Subcat) -> tuple[bool, int, int]:
    """``S[1] ⊆ S`` for derived windows, checked on every member whose
    suspension stays inside the window.  Returns (ok, checked, escaped)."""
    ok, checked, escaped = True, 0, 0
    for i in s.sorted_members():
        try:
            j = win.shift_indec(i)
        except OracleError:
            escaped += 1
            continue
        checked += 1
        if j not in s.members:
            ok = False
    return ok, checked, escaped


# ---------------------------------------------------------------------------
# triangle-class searches
# ---------------------------------------------------------------------------


@dataclass
class MemberSearch:
    """Outcome of a per-object membership search over a region.

    ``subcat`` holds the definite members; ``inconclusive`` the objects on
    which the bounded search neither found a witness nor exhausted the
    candidates (boundary escapes, oversized pools)."""

    subcat: Subcat
    inconclusive: frozenset[int]
    witnesses: dict[int, Triangle] = field(default_factory=dict)

    def status(self, i: int) -> str:
        if i in self.subcat.members:
            return "in"
        if i in self.inconclusive:
            return "unknown"
        return "out"


def _search_by_probe(
    win: Window,
    region: str,
    provenance: str,
    probe,  # (b) -> iterator of (triangle | None, escaped: bool)
) -> MemberSearch:
    members: set[int] = set()
    unknown: set[int] = set()
    witnesses: dict[int, Triangle] = {}
    for b in region_indices(win, region):
        found = None
        escaped = False
        for tri, esc in probe(b):
            if esc:
                escaped = True
                continue
            if tri is not None:
                found = tri
                break
        if found is not None:
            members.add(b)
            witnesses[b] = found
        elif escaped:
            unknown.add(b)
    return MemberSearch(Subcat(frozenset(members), provenance), frozenset(unknown), witnesses)


def s_left(
    win: Window,
    x: Subcat,
    y: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> MemberSearch:
    """Objects receiving a deflation from ``x`` with fiber in ``y``."""
    budget = budget or Budget()

    def probe(b: int):
        cands = _hom_supported(win, x.members, b, into=True)
        pool_ok = len(cands) <= budget.max_positions
        for t in _subsets(cands, budget.max_positions):
            f = (
                fan_in(win, t, b)
                if t
                else win.zero_mor(Obj(()), Obj((b,)))
            )
            if not win.is_deflation(f):
                continue
            try:
                tri = win.cocone_of(f)
            except OracleError:
                yield None, True
                continue
            if y.has(tri.fiber):
                yield tri, False
                return
        if not pool_ok:
            yield None, True

    return _search_by_probe(win, region, "s_left", probe)


def s_right(
    win: Window,
    x: Subcat,
    y: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> MemberSearch:
    """Objects admitting an inflation into ``y`` with cone in ``x``."""
    budget = budget or Budget()

    def probe(b: int):
        cands = _hom_supported(win, y.members, b, into=False)
        pool_ok = len(cands) <= budget.max_positions
        for t in _subsets(cands, budget.max_positions):
            g = (
                fan_out(win, b, t)
                if t
                else win.zero_mor(Obj((b,)), Obj(()))
            )
            if not win.is_inflation(g):
                continue
            try:
                tri = win.cone_of(g)
            except OracleError:
                yield None, True
                continue
            if x.has(tri.base):
                yield tri, False
                return
        if not pool_ok:
            yield None, True

    return _search_by_probe(win, region, "s_right", probe)


def star(
    win: Window,
    c: Subcat,
    d: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> MemberSearch:
    """Objects that are middle terms of a triangle with fiber in ``c`` and
    base in ``d``."""
    budget = budget or Budget()

    def probe(b: int):
        cands = _hom_supported(win, d.members, b, into=False)
        pool_ok = len(cands) <= budget.max_positions
        for t in _subsets(cands, budget.max_positions):
            g = (
                fan_out(win, b, t)
                if t
                else win.zero_mor(Obj((b,)), Obj(()))
            )
            if not win.is_deflation(g):
                continue
            try:
                tri = win.cocone_of(g)
            except OracleError:
                yield None, True
                continue
            if c.has(tri.fiber):
                yield tri, False
                return
        if not pool_ok:
            yield None, True

    return _search_by_probe(win, region, "star", probe)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


@dataclass
class HoveyReport:
    verdict: bool | None  # None: inconclusive
    witness: Subcat  # definite one-sided members (symmetric difference)
    left: MemberSearch
    right: MemberSearch


def is_hovey(
    win: Window,
    x: Subcat,
    y: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> HoveyReport:
    """Whether the two one-sided classes of the pair agree on the region."""
    left = s_left(win, x, y, budget=budget, region=region)
    right = s_right(win, x, y, budget=budget, region=region)
    diff: set[int] = set()
    for b in region_indices(win, region):
        sl, sr = left.status(b), right.status(b)
        if "unknown" in (sl, sr):
            continue
        if sl != sr:
            diff.add(b)
    if diff:
        verdict: bool | None = False
    elif left.inconclusive or right.inconclusive:
        verdict = None
    else:
        verdict = True
    return HoveyReport(verdict, Subcat(frozenset(diff), "hovey_witness"), left, right)


@dataclass
class ThickReport:
    verdict: bool
    probes: int
    skipped: int
    failures: list[str] = field(default_factory=list)


def is_thick(
    win: Window,
    s: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> ThickReport:
    """Summand closure (structural) plus two-out-of-three over probe
    triangles: realized generator classes over region pairs, and completed
    fans anchored at members.

    A pass certifies every probed triangle; probes skipped at the window
    boundary are counted, not silently dropped.
    """
    budget = budget or Budget()
    probes = skipped = 0
    failures: list[str] = []

    def check(tri: Triangle, origin: str) -> None:
        nonlocal probes
        probes += 1
        terms = {"fiber": tri.fiber, "total": tri.total, "base": tri.base}
        flags = {k: s.has(v) for k, v in terms.items()}
        for third in ("fiber", "total", "base"):
            others = [k for k in terms if k != third]
            if all(flags[k] for k in others) and not flags[third]:
                failures.append(
                    f"{origin}: {third} {_obj_str(win, terms[third])} escapes"
                    f" (other two terms inside)"
                )

    reg = region_indices(win, region)
    for c in reg:  # base
        for a in reg:  # fiber
            if not win.dim_pair(c, a, 1):
                continue
            delta = ExtClass(Obj((c,)), Obj((a,)), Mat.from_rows([[Q(1)]], cols=1))
            try:
                tri = win.realize(delta)
            except OracleError:
                skipped += 1
                continue
            check(tri, f"class {win.label(c)} over {win.label(a)}")

    anchors = sorted(s.members & set(reg))
    for a in anchors:
        pool = _hom_supported(win, s.members, a, into=False)
        for t in _subsets(pool, budget.max_summands):
            f = fan_out(win, a, t) if t else win.zero_mor(Obj((a,)), Obj(()))
            try:
                if win.is_inflation(f):
                    check(win.cone_of(f), f"cone at {win.label(a)}")
                if win.is_deflation(f):
                    check(win.cocone_of(f), f"cocone under {win.label(a)}")
            except OracleError:
                skipped += 1
        pool_in = _hom_supported(win, s.members, a, into=True)
        for t in _subsets(pool_in, budget.max_summands):
            g = fan_in(win, t, a) if t else win.zero_mor(Obj(()), Obj((a,)))
            try:
                if win.is_deflation(g):
                    check(win.cocone_of(g), f"cocone at {win.label(a)}")
            except OracleError:
                skipped += 1
    return ThickReport(not failures, probes, skipped, failures)


def _obj_str(win: Window, x: Obj) -> str:
    return "0" if x.is_zero() else "+".join(win.label(p) for p in x.parts)


# ---------------------------------------------------------------------------
# statement-level checks
# ---------------------------------------------------------------------------


def check_star_extension_closed(
    win: Window,
    c: Subcat,
    d: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> tuple[bool, str]:
    """With no extensions from ``c``-bases to ``d``-fibers, the star product
    is already extension-closed: its closure adds nothing on the region."""
    for i in c.members:
        for j in d.members:
            if win.dim_pair(i, j, 1):
                return False, (
                    f"hypothesis fails: class space over {win.label(i)}"
                    f" with fiber {win.label(j)} is nonzero"
                )
    prod = star(win, c, d, budget=budget, region=region)
    if prod.inconclusive:
        return False, "star product inconclusive on some objects"
    closed = closure(win, prod.subcat, "extensions", budget=budget, on_escape="ignore")
    reg = set(region_indices(win, region))
    extra = (closed.members & reg) - prod.subcat.members
    if extra:
        labels = ", ".join(win.label(i) for i in sorted(extra))
        return False, f"closure added {labels}"
    return True, "star product extension-closed"


def check_left_class_recovers(
    win: Window,
    s: Subcat,
    x: Subcat,
    y: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> tuple[bool, str]:
    """Consequences of a hereditary second pair (the caller certifies
    hereditarity): the ambient ``s`` is cone-closed and coincides with the
    left triangle class of ``(x, y)`` on the region."""
    coned = closure(win, s, "cones", budget=budget, on_escape="ignore")
    reg = set(region_indices(win, region))
    extra = (coned.members & reg) - s.members
    if extra:
        labels = ", ".join(win.label(i) for i in sorted(extra))
        return False, f"cone closure added {labels}"
    left = s_left(win, x, y, budget=budget, region=region)
    want = s.members & reg
    got = left.subcat.members
    if got != want:
        gained = ", ".join(win.label(i) for i in sorted(got - want)) or "-"
        lost = ", ".join(win.label(i) for i in sorted(want - got)) or "-"
        return False, f"left class mismatch (extra: {gained}; missing: {lost})"
    if left.inconclusive & reg & s.members:
        return False, "left class inconclusive on ambient members"
    return True, "cone-closed and equal to the left triangle class"
