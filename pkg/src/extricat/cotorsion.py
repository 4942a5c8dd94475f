"""Complete orthogonal pairs of subcategories, with certificates.

A pair of additively closed classes is *cotorsion* over a region when
extensions from the first into the second vanish and every region object is
caught between them by two triangles: a deflation from the first class with
fiber in the second, and an inflation into the second class with cone in
the first.  The approximation triangles are found by radical stripping —
start from the fan of every hom-supported candidate, drop summands whose
component factors through the rest — with a bounded fan search as fallback.

On top of the certificates sit the structural predicates: hereditarity by
three independently evaluated routes (whose agreement is itself a theorem
being tested), twin pairs with their intersection classes, and the
statement-level checks the fixture suites run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .model import Budget, Mor, Obj, Triangle, Window
from .oracle import OracleError
from .subcats import (
    HoveyReport,
    Subcat,
    ThickReport,
    _hom_supported,
    _subsets,
    closure,
    fan_in,
    fan_out,
    full_subcat,
    is_hovey,
    is_thick,
    region_indices,
    s_left,
    s_right,
)

Q = Fraction


class ApproximationError(RuntimeError):
    """No usable approximation; ``definite`` distinguishes a certified
    nonexistence from a search that merely hit its caps."""

    def __init__(self, message: str, definite: bool):
        super().__init__(message)
        self.definite = definite


# ---------------------------------------------------------------------------
# minimal approximations
# ---------------------------------------------------------------------------


def minimal_approximation(
    win: Window,
    b,
    c: Subcat,
    side: str,
    *,
    budget: Budget | None = None,
) -> Mor:
    """The minimal right (or left) approximation of an indecomposable by the
    class ``c``, as a deflation onto (inflation out of) it.

    Scalar hom spaces cap multiplicities at one, so the approximation is the
    all-ones fan on the hom-supported candidates with every summand whose
    component factors through the rest stripped away, processed in canonical
    order.  The factoring property of the survivors is re-verified, and so is
    the deflation/inflation property; if the stripped fan fails the latter, a
    bounded subset search looks for an approximating fan that passes.
    """
    budget = budget or Budget()
    if isinstance(b, Obj):
        if b.n != 1:
            raise ValueError("approximate one indecomposable at a time")
        b = b.parts[0]
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    into = side == "right"
    cands = _hom_supported(win, c.members, b, into=into)

    def build(parts):
        return fan_in(win, parts, b) if into else fan_out(win, b, parts)

    def admissible(f):
        return win.is_deflation(f) if into else win.is_inflation(f)

    parts = _strip(win, b, cands, into)
    lost = _unfactored(win, b, parts, c, into)
    if lost:
        raise ApproximationError(
            f"stripping lost the approximation property at {win.label(lost[0])}",
            definite=False,
        )
    f = build(parts)
    if admissible(f):
        return f
    if len(cands) > budget.max_positions:
        raise ApproximationError(
            f"minimal fan for {win.label(b)} is not admissible and the"
            f" candidate pool exceeds the budget",
            definite=False,
        )
    for t in _subsets(cands, budget.max_positions):
        g = build(t)
        if not admissible(g) or _unfactored(win, b, t, c, into):
            continue
        kept = _strip(win, b, list(t), into)
        h = build(kept)
        if not admissible(h):
            raise ApproximationError(
                f"minimal reduction of a fan onto {win.label(b)} lost"
                f" admissibility",
                definite=False,
            )
        return h
    raise ApproximationError(
        f"no approximating fan onto {win.label(b)} completes to a triangle",
        definite=True,
    )


def _strip(win: Window, b: int, cands, into: bool) -> tuple[int, ...]:
    """Drop candidates whose generator to (from) ``b`` factors through the
    remaining ones; first strippable in canonical order goes first."""
    parts = sorted(cands)
    changed = True
    while changed:
        changed = False
        for j in parts:
            rest = [i for i in parts if i != j]
            if _factors(win, b, j, rest, into):
                parts.remove(j)
                changed = True
                break
    return tuple(parts)


def _factors(win: Window, b: int, j: int, through, into: bool) -> bool:
    if into:
        return any(win.comp_scalar(j, i, b) != 0 for i in through)
    return any(win.comp_scalar(b, i, j) != 0 for i in through)


def _unfactored(win: Window, b: int, parts, c: Subcat, into: bool) -> list[int]:
    """Class members whose generator no longer factors through the fan."""
    out = []
    keep = set(parts)
    for m in sorted(c.members):
        if m in keep:
            continue
        if into:
            if win.dim_pair(m, b) and not _factors(win, b, m, parts, True):
                out.append(m)
        else:
            if win.dim_pair(b, m) and not _factors(win, b, m, parts, False):
                out.append(m)
    return out


# ---------------------------------------------------------------------------
# cotorsion certificates
# ---------------------------------------------------------------------------


@dataclass
class CotorsionCertificate:
    """Verified pair data over a region: the orthogonality checks plus, for
    every region object of the ambient, its two approximation triangles."""

    u: Subcat
    v: Subcat
    ambient: Subcat
    region: str
    covers: dict[int, Triangle]  # object ← sum in u, fiber in v
    envelopes: dict[int, Triangle]  # object → sum in v, cone in u
    failures: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failures:
            return "failed"
        if self.inconclusive:
            return "inconclusive"
        return "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self, win: Window) -> dict:
        objects = {}
        for b in sorted(set(self.covers) | set(self.envelopes)):
            entry = {}
            if b in self.covers:
                entry["cover"] = triangle_json(win, self.covers[b])
            if b in self.envelopes:
                entry["envelope"] = triangle_json(win, self.envelopes[b])
            objects[win.label(b)] = entry
        return {
            "first_class": self.u.labels(win),
            "second_class": self.v.labels(win),
            "ambient": self.ambient.labels(win),
            "region": self.region,
            "status": self.status,
            "objects": objects,
            "failures": list(self.failures),
            "inconclusive": list(self.inconclusive),
        }


def verify_cotorsion(
    win: Window,
    u: Subcat,
    v: Subcat,
    ambient: Subcat | None = None,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> CotorsionCertificate:
    """Certify (or refute) the pair over the ambient's region objects.

    With a proper ambient, only triangles with all three terms inside it
    count; since both classes must sit inside the ambient, the completed
    approximation triangles qualify automatically.
    """
    budget = budget or Budget()
    amb = ambient if ambient is not None else full_subcat(win)
    cert = CotorsionCertificate(u, v, amb, region, {}, {})
    if not u.members <= amb.members:
        cert.failures.append("first class escapes the ambient")
    if not v.members <= amb.members:
        cert.failures.append("second class escapes the ambient")
    reg = set(region_indices(win, region))
    closed = closure(win, amb, "extensions", budget=budget, on_escape="ignore")
    extra = (closed.members & reg) - amb.members
    if extra:
        cert.failures.append(
            "ambient not extension-closed: gains " + _label_list(win, extra)
        )
    for i in sorted(u.members):
        for j in sorted(v.members):
            if win.dim_pair(i, j, 1):
                cert.failures.append(
                    f"extension space over {win.label(i)} with fiber"
                    f" {win.label(j)} is nonzero"
                )
    if cert.failures:
        return cert
    for b in sorted(amb.members & reg):
        _approx_triangle(win, b, u, v, budget, cert, cover=True)
        _approx_triangle(win, b, u, v, budget, cert, cover=False)
    return cert


def _approx_triangle(
    win: Window,
    b: int,
    u: Subcat,
    v: Subcat,
    budget: Budget,
    cert: CotorsionCertificate,
    cover: bool,
) -> None:
    kind = "cover" if cover else "envelope"
    try:
        if cover:
            f = minimal_approximation(win, b, u, "right", budget=budget)
            tri = win.cocone_of(f)
            end, cls = tri.fiber, v
        else:
            f = minimal_approximation(win, b, v, "left", budget=budget)
            tri = win.cone_of(f)
            end, cls = tri.base, u
    except ApproximationError as e:
        dest = cert.failures if e.definite else cert.inconclusive
        dest.append(f"{win.label(b)}: no {kind} ({e})")
        return
    except OracleError as e:
        cert.inconclusive.append(f"{win.label(b)}: {kind} leaves the window ({e})")
        return
    if not cls.has(end):
        # minimal approximations have minimal third terms, so a miss here
        # rules out every other completion as well
        cert.failures.append(
            f"{win.label(b)}: {kind} third term {_obj_labels(win, end)}"
            f" escapes the class"
        )
        return
    (cert.covers if cover else cert.envelopes)[b] = tri


# ---------------------------------------------------------------------------
# hereditarity
# ---------------------------------------------------------------------------


@dataclass
class HereditaryReport:
    """The three equivalent conditions, evaluated independently; their
    agreement is part of what is being tested."""

    verdict: bool
    square_vanishes: bool  # degree-two classes from u over v
    first_cocone_closed: bool
    second_cone_closed: bool
    agree: bool
    witnesses: list[str] = field(default_factory=list)
    skipped: int = 0


def is_hereditary(
    win: Window,
    cert: CotorsionCertificate,
    *,
    budget: Budget | None = None,
) -> HereditaryReport:
    budget = budget or Budget()
    witnesses: list[str] = []
    square = True
    for i in sorted(cert.u.members):
        for j in sorted(cert.v.members):
            if win.dim_pair(i, j, 2):
                square = False
                witnesses.append(
                    f"degree-two class over {win.label(i)} with fiber {win.label(j)}"
                )
    amb = cert.ambient.members
    reg = set(region_indices(win, cert.region))
    cocone_ok, sk1 = _fiber_closed(
        win, cert.u.members, amb, reg, budget, witnesses, cocones=True
    )
    cone_ok, sk2 = _fiber_closed(
        win, cert.v.members, amb, reg, budget, witnesses, cocones=False
    )
    agree = square == cocone_ok == cone_ok
    return HereditaryReport(
        verdict=square if agree else False,
        square_vanishes=square,
        first_cocone_closed=cocone_ok,
        second_cone_closed=cone_ok,
        agree=agree,
        witnesses=witnesses,
        skipped=sk1 + sk2,
    )


def _fiber_closed(
    win: Window,
    members: frozenset[int],
    amb: frozenset[int],
    reg: set[int],
    budget: Budget,
    witnesses: list[str],
    cocones: bool,
) -> tuple[bool, int]:
    """Whether completing fans between members never leaves the class.

    Third terms with parts outside the ambient are not triangles of the
    inherited structure and do not count against closedness.
    """
    ok = True
    skipped = 0
    for a in sorted(members & reg):
        pool = _hom_supported(win, members, a, into=cocones)
        for t in _subsets(pool, budget.max_summands):
            if cocones:
                f = fan_in(win, t, a) if t else win.zero_mor(Obj(()), Obj((a,)))
                if not win.is_deflation(f):
                    continue
            else:
                f = fan_out(win, a, t) if t else win.zero_mor(Obj((a,)), Obj(()))
                if not win.is_inflation(f):
                    continue
            try:
                tri = win.cocone_of(f) if cocones else win.cone_of(f)
            except OracleError:
                skipped += 1
                continue
            end = tri.fiber if cocones else tri.base
            if not set(end.parts) <= amb:
                continue
            if not all(p in members for p in end.parts):
                ok = False
                word = "cocone" if cocones else "cone"
                witnesses.append(
                    f"{word} {_obj_labels(win, end)} at {win.label(a)}"
                    f" escapes the class"
                )
    return ok, skipped


# ---------------------------------------------------------------------------
# twin pairs
# ---------------------------------------------------------------------------


@dataclass
class TwinCertificate:
    """Two cotorsion certificates sharing a window, with the inclusion
    between their left classes and the two intersection classes."""

    first: CotorsionCertificate  # (x, v)
    second: CotorsionCertificate  # (u, y)
    inclusion_ok: bool  # x inside u
    ext_vanishes: bool  # no extensions over x with fibers in y
    w: Subcat  # x ∩ y
    z: Subcat  # u ∩ v

    @property
    def x(self) -> Subcat:
        return self.first.u

    @property
    def v(self) -> Subcat:
        return self.first.v

    @property
    def u(self) -> Subcat:
        return self.second.u

    @property
    def y(self) -> Subcat:
        return self.second.v

    @property
    def equivalence_agrees(self) -> bool:
        return self.inclusion_ok == self.ext_vanishes

    @property
    def ok(self) -> bool:
        return (
            self.first.ok
            and self.second.ok
            and self.inclusion_ok
            and self.equivalence_agrees
        )

    def to_json(self, win: Window) -> dict:
        return {
            "first": self.first.to_json(win),
            "second": self.second.to_json(win),
            "inclusion_ok": self.inclusion_ok,
            "ext_vanishes": self.ext_vanishes,
            "equivalence_agrees": self.equivalence_agrees,
            "w": self.w.labels(win),
            "z": self.z.labels(win),
            "status": "ok" if self.ok else "failed",
        }


def verify_twin(
    win: Window,
    x: Subcat,
    v: Subcat,
    u: Subcat,
    y: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> TwinCertificate:
    first = verify_cotorsion(win, x, v, budget=budget, region=region)
    second = verify_cotorsion(win, u, y, budget=budget, region=region)
    ext_vanishes = all(
        win.dim_pair(i, j, 1) == 0 for i in x.members for j in y.members
    )
    return TwinCertificate(
        first=first,
        second=second,
        inclusion_ok=x.members <= u.members,
        ext_vanishes=ext_vanishes,
        w=Subcat(x.members & y.members, "w"),
        z=Subcat(u.members & v.members, "z"),
    )


# ---------------------------------------------------------------------------
# statement-level checks
# ---------------------------------------------------------------------------


def check_perp_recovery(win: Window, cert: CotorsionCertificate) -> tuple[bool, str]:
    """Each class of a verified pair is exactly the perpendicular of the
    other inside the ambient's region."""
    reg = cert.ambient.members & set(region_indices(win, cert.region))
    v_want = {
        b for b in reg if all(win.dim_pair(i, b, 1) == 0 for i in cert.u.members)
    }
    u_want = {
        b for b in reg if all(win.dim_pair(b, j, 1) == 0 for j in cert.v.members)
    }
    bad = []
    if cert.v.members & reg != v_want:
        bad.append(
            "second class is not the right perpendicular: "
            + _diff_str(win, cert.v.members & reg, v_want)
        )
    if cert.u.members & reg != u_want:
        bad.append(
            "first class is not the left perpendicular: "
            + _diff_str(win, cert.u.members & reg, u_want)
        )
    return (not bad, "; ".join(bad) or "both perpendiculars recovered")


def check_class_closures(
    win: Window, cert: CotorsionCertificate, *, budget: Budget | None = None
) -> tuple[bool, str]:
    """Both classes are extension-closed within the ambient, projectives lie
    in the first, and injectives in the second."""
    bad = []
    reg = set(region_indices(win, cert.region))
    for cls, name in ((cert.u, "first"), (cert.v, "second")):
        extra = _extension_gains(win, cls, cert.ambient.members, reg, budget)
        if extra:
            bad.append(f"{name} class gains {_label_list(win, extra)}")
    for coord_set, cls, name in (
        (_proj_indices(win), cert.u, "projective outside the first class"),
        (_inj_indices(win), cert.v, "injective outside the second class"),
    ):
        # placement is certified on the region only: margin projectives and
        # injectives of a truncated window are boundary artifacts
        stray = (coord_set & reg & cert.ambient.members) - cls.members
        if stray:
            bad.append(f"{name}: {_label_list(win, stray)}")
    return (not bad, "; ".join(bad) or "classes closed, projectives and injectives placed")


def _extension_gains(
    win: Window,
    cls: Subcat,
    amb: frozenset[int],
    reg: set[int],
    budget: Budget | None,
) -> set[int]:
    """Region parts added by extensions between class members that stay in
    the ambient."""
    gains: set[int] = set()
    closed = closure(win, cls, "extensions", budget=budget, on_escape="ignore")
    for p in (closed.members & reg & amb) - cls.members:
        gains.add(p)
    return gains


def _proj_indices(win: Window) -> set[int]:
    coords = getattr(win, "projective_coords", None)
    if coords is None:
        return set()
    return {win.index[c] for c in coords() if c in win.index}


def _inj_indices(win: Window) -> set[int]:
    coords = getattr(win, "injective_coords", None)
    if coords is None:
        return set()
    return {win.index[c] for c in coords() if c in win.index}


def check_intersection_match(win: Window, twin: TwinCertificate) -> tuple[bool, str]:
    """For a twin whose inner pair is cotorsion in an extension-closed
    ambient, the two cross intersections collapse to the core class."""
    xv = twin.x.members & twin.v.members
    uy = twin.u.members & twin.y.members
    if xv != uy:
        return False, "cross intersections differ: " + _diff_str(win, xv, uy)
    if xv != twin.w.members:
        return False, "intersections miss the core class: " + _diff_str(
            win, xv, twin.w.members
        )
    return True, "both intersections equal the core class"


@dataclass
class HoveyThickReport:
    applies: bool
    hovey: HoveyReport
    thick: ThickReport | None = None
    pair_in_class: CotorsionCertificate | None = None

    @property
    def ok(self) -> bool:
        if not self.applies:
            return True
        return bool(self.thick and self.thick.verdict and self.pair_in_class and self.pair_in_class.ok)


def check_hovey_thickness(
    win: Window,
    twin: TwinCertificate,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> HoveyThickReport:
    """When the two one-sided classes agree, their common value is thick and
    the outer classes form a cotorsion pair inside it."""
    hov = is_hovey(win, twin.x, twin.y, budget=budget, region=region)
    if hov.verdict is not True:
        return HoveyThickReport(applies=False, hovey=hov)
    # thickness is probed against the window-wide class so that third terms
    # landing in the margin are not mistaken for escapes
    cls = s_left(win, twin.x, twin.y, budget=budget, region="window").subcat
    thick = is_thick(win, cls, budget=budget, region=region)
    cert = verify_cotorsion(
        win, twin.x, twin.y, ambient=cls, budget=budget, region=region
    )
    return HoveyThickReport(True, hov, thick, cert)


@dataclass
class HereditaryHoveyReport:
    applies: bool
    first: HereditaryReport
    second: HereditaryReport
    intersections_match: bool
    hovey: HoveyReport | None = None
    class_matches: bool | None = None  # supplied candidate equals the left class

    @property
    def ok(self) -> bool:
        if not self.applies:
            return True
        if self.hovey is None or self.hovey.verdict is not True:
            return False
        return self.class_matches is not False


def check_hereditary_hovey(
    win: Window,
    twin: TwinCertificate,
    candidate: Subcat | None = None,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> HereditaryHoveyReport:
    """Matching cross intersections plus two hereditary pairs force the
    one-sided classes to agree; any supplied ambient candidate carrying the
    inner pair must then be that common class."""
    her1 = is_hereditary(win, twin.first, budget=budget)
    her2 = is_hereditary(win, twin.second, budget=budget)
    inter = twin.x.members & twin.v.members == twin.u.members & twin.y.members
    applies = inter and her1.verdict and her2.verdict
    if not applies:
        return HereditaryHoveyReport(False, her1, her2, inter)
    hov = is_hovey(win, twin.x, twin.y, budget=budget, region=region)
    matches = None
    if candidate is not None:
        reg = set(region_indices(win, region))
        matches = candidate.members & reg == hov.left.subcat.members
    return HereditaryHoveyReport(True, her1, her2, inter, hov, matches)


def check_thick_ambient_classes(
    win: Window,
    x: Subcat,
    y: Subcat,
    s: Subcat,
    *,
    budget: Budget | None = None,
    region: str = "core",
) -> tuple[bool, str]:
    """For a pair carried by a thick ambient, both one-sided triangle
    classes recover the ambient itself on the region."""
    thick = is_thick(win, s, budget=budget, region=region)
    if not thick.verdict:
        return False, "ambient is not thick: " + "; ".join(thick.failures[:3])
    reg = set(region_indices(win, region))
    want = s.members & reg
    left = s_left(win, x, y, budget=budget, region=region)
    right = s_right(win, x, y, budget=budget, region=region)
    for search, name in ((left, "left"), (right, "right")):
        if search.inconclusive & want:
            return False, f"{name} class inconclusive on ambient members"
        if search.subcat.members != want:
            return False, (
                f"{name} class differs from the ambient: "
                + _diff_str(win, search.subcat.members, want)
            )
    return True, "both one-sided classes recover the ambient"


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def mor_json(win: Window, f: Mor) -> dict:
    return {
        "src": [win.label(p) for p in f.src.parts],
        "dst": [win.label(p) for p in f.dst.parts],
        "mat": [[str(x) for x in row] for row in f.mat.data],
    }


def triangle_json(win: Window, tri: Triangle) -> dict:
    return {
        "fiber": [win.label(p) for p in tri.fiber.parts],
        "total": [win.label(p) for p in tri.total.parts],
        "base": [win.label(p) for p in tri.base.parts],
        "f": mor_json(win, tri.f),
        "g": mor_json(win, tri.g),
        "delta": [[str(x) for x in row] for row in tri.delta.mat.data],
    }


def _label_list(win: Window, indices) -> str:
    return ", ".join(win.label(i) for i in sorted(indices))


def _obj_labels(win: Window, x: Obj) -> str:
    return "0" if x.is_zero() else "+".join(win.label(p) for p in x.parts)


def _diff_str(win: Window, got: set[int] | frozenset[int], want: set[int]) -> str:
    extra = _label_list(win, set(got) - set(want)) or "-"
    missing = _label_list(win, set(want) - set(got)) or "-"
    return f"extra {extra}; missing {missing}"
