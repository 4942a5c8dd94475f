"""Text and SVG diagrams of translation grids with marker overlays.

Both backends place their objects on a diamond lattice:

* derived windows put the object ``(x, r)`` on height row ``r`` at slot
  ``2*x + (r - 1)``, so the two translation-grid neighbours below,
  ``(x, r-1)`` and ``(x+1, r-1)``, sit one slot to the left and right;
* module windows put the interval ``[a, b]`` on height row ``b - a`` at
  slot ``a + b``, so the neighbours ``[a, b-1]`` and ``[a+1, b]`` sit one
  slot to the left and right.

The text grid draws one character per vertex (two columns per slot, two
lines per row) with ``/`` and ``\\`` diagonals between neighbours that are
both inside the rendered region.  Unmarked vertices show ``·``.  When
several overlays mark one vertex the glyph earliest in ``GLYPH_ORDER`` is
shown; the SVG concatenates the whole stack in that order.  Output is
byte-deterministic: equal window, overlays, and region give equal strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .intervals import ModuleWindow
from .mesh import DerivedWindow
from .model import Budget, ConfigError, Window
from .subcats import Subcat, region_indices

__all__ = [
    "GLYPH_ORDER",
    "FILLER",
    "UnknownGlyphError",
    "RenderedQuiver",
    "render_text",
    "render_svg",
    "render_quiver",
    "GOLDEN_DIAGRAMS",
    "golden_overlays",
    "golden_text",
]

#: Canonical glyph stack, most prominent first.  When overlays collide on a
#: vertex, the earliest glyph wins the text cell and is drawn last in the
#: SVG.  The tuple doubles as the registry of glyphs the renderer accepts.
GLYPH_ORDER: tuple[str, ...] = ("✠", "★", "•", "♦", "◇", "♠", "♥", "♣", "✦", "∅", "·")

#: Character used for vertices no overlay marks.
FILLER = "·"

OverlaySpec = Union[
    Mapping[str, Union[Subcat, Iterable[int]]],
    Sequence[tuple[str, Union[Subcat, Iterable[int]]]],
]


class UnknownGlyphError(ConfigError):
    """An overlay used a glyph outside the canonical registry."""


@dataclass(frozen=True)
class RenderedQuiver:
    """Both renderings of one window + overlay combination."""

    text: str
    svg: str


# ---------------------------------------------------------------------------
# placement
# ---------------------------------------------------------------------------


def _placement(win: Window, i: int) -> tuple[int, int]:
    """``(row, slot)`` of object ``i``: row counts height bottom-up, slot
    counts lattice position left-to-right."""
    if isinstance(win, DerivedWindow):
        x, r = win.coords[i]
        return r, 2 * x + (r - 1)
    if isinstance(win, ModuleWindow):
        a, b = win.coords[i]
        return b - a, a + b
    raise ConfigError(f"no grid placement for window type {type(win).__name__}")


def _overlay_marks(win: Window, overlays: OverlaySpec) -> dict[int, list[str]]:
    """Per-object glyph stacks in canonical order."""
    marks: dict[int, set[str]] = {}
    for glyph, members in dict(overlays).items():
        if glyph not in GLYPH_ORDER:
            known = " ".join(GLYPH_ORDER)
            raise UnknownGlyphError(f"unknown glyph {glyph!r}; known glyphs: {known}")
        for i in getattr(members, "members", members):
            if not 0 <= int(i) < win.n_indecs:
                raise ConfigError(f"overlay {glyph!r} marks object {i!r} outside the window")
            marks.setdefault(int(i), set()).add(glyph)
    order = {g: k for k, g in enumerate(GLYPH_ORDER)}
    return {i: sorted(stack, key=order.__getitem__) for i, stack in marks.items()}


def _layout(
    win: Window, overlays: OverlaySpec, region: str
) -> tuple[dict[int, tuple[int, int]], dict[int, list[str]], dict[tuple[int, int], int]]:
    """Placements and glyph stacks of the region, plus a position lookup."""
    idx = region_indices(win, region)
    marks = _overlay_marks(win, overlays)
    place = {i: _placement(win, i) for i in idx}
    pos = {place[i]: i for i in place}
    return place, marks, pos


# ---------------------------------------------------------------------------
# text grid
# ---------------------------------------------------------------------------


def render_text(win: Window, overlays: OverlaySpec = (), region: str = "window") -> str:
    place, marks, pos = _layout(win, overlays, region)
    if not place:
        return "\n"
    max_row = max(r for r, _ in place.values())
    min_row = min(r for r, _ in place.values())
    min_slot = min(s for _, s in place.values())
    line_of = {i: 2 * (max_row - r) for i, (r, _) in place.items()}
    col_of = {i: 2 * (s - min_slot) for i, (_, s) in place.items()}
    width = max(col_of.values()) + 1
    grid = [[" "] * width for _ in range(2 * (max_row - min_row) + 1)]
    for i, (row, slot) in place.items():
        stack = marks.get(i)
        grid[line_of[i]][col_of[i]] = stack[0] if stack else FILLER
        if (row - 1, slot - 1) in pos:
            grid[line_of[i] + 1][col_of[i] - 1] = "/"
        if (row - 1, slot + 1) in pos:
            grid[line_of[i] + 1][col_of[i] + 1] = "\\"
    return "\n".join("".join(line).rstrip() for line in grid) + "\n"


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COL_PX = 11  # horizontal pixels per text column
_LINE_PX = 14  # vertical pixels per text line
_PAD_PX = 18


def render_svg(win: Window, overlays: OverlaySpec = (), region: str = "window") -> str:
    place, marks, pos = _layout(win, overlays, region)
    if not place:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="1" height="1"/>\n'
    max_row = max(r for r, _ in place.values())
    min_row = min(r for r, _ in place.values())
    min_slot = min(s for _, s in place.values())
    xs = {i: _PAD_PX + _COL_PX * 2 * (s - min_slot) for i, (_, s) in place.items()}
    ys = {i: _PAD_PX + _LINE_PX * 2 * (max_row - r) for i, (r, _) in place.items()}
    width = max(xs.values()) + _PAD_PX
    height = max(ys.values()) + _PAD_PX
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">',
        "<style>text{font-family:monospace;font-size:13px;text-anchor:middle;"
        "dominant-baseline:middle;fill:#222}line{stroke:#777;stroke-width:1}</style>",
    ]
    for i in sorted(place):
        row, slot = place[i]
        for d in (-1, 1):
            j = pos.get((row - 1, slot + d))
            if j is None:
                continue
            parts.append(
                f'<line x1="{xs[i] + 4 * d}" y1="{ys[i] + 5}"'
                f' x2="{xs[j] - 4 * d}" y2="{ys[j] - 5}"/>'
            )
    for i in sorted(place):
        stack = marks.get(i)
        label = "".join(stack) if stack else FILLER
        parts.append(f'<text x="{xs[i]}" y="{ys[i]}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_quiver(win: Window, overlays: OverlaySpec = (), region: str = "window") -> RenderedQuiver:
    """Both the text grid and the SVG for one overlay set."""
    return RenderedQuiver(
        text=render_text(win, overlays, region),
        svg=render_svg(win, overlays, region),
    )


# ---------------------------------------------------------------------------
# canonical overlay diagrams
# ---------------------------------------------------------------------------

#: The eight canonical overlay diagrams: golden name, builtin fixture, and
#: the fixture markers painted (each with its own declared glyph).  Text
#: versions live under ``data/golden/<name>.txt`` and are compared
#: byte-for-byte in the test suite.
GOLDEN_DIAGRAMS: tuple[tuple[str, str, tuple[str, ...]], ...] = (
    ("mesh4_dots", "mesh_a4", ("dots",)),
    ("mesh4_spades", "mesh_a4", ("spades",)),
    ("mesh4_clubs", "mesh_a4", ("clubs",)),
    ("mesh4_hearts", "mesh_a4", ("hearts",)),
    ("mesh4_stars", "mesh_a4", ("stars",)),
    ("pattern_projectives_stars", "pattern_period4", ("diamonds", "stars")),
    ("pattern_spades_projectives", "pattern_period4", ("spades", "diamonds")),
    ("pattern_pairing", "pattern_period4", ("clubs", "spades")),
)


def golden_overlays(name: str, budget: Budget | None = None):
    """Window and overlay mapping of one canonical diagram."""
    from .fixtures import FixtureContext, builtin_fixture, resolve_marker

    for gname, fixture_name, markers in GOLDEN_DIAGRAMS:
        if gname == name:
            break
    else:
        known = ", ".join(g for g, _, _ in GOLDEN_DIAGRAMS)
        raise ConfigError(f"unknown diagram {name!r}; known: {known}")
    fix = builtin_fixture(fixture_name)
    ctx = FixtureContext(fix, budget or Budget.preset("default"))
    overlays = {
        fix.markers[m].glyph: resolve_marker(ctx.win, fix, m) for m in markers
    }
    return ctx.win, overlays


def golden_text(name: str, budget: Budget | None = None) -> str:
    """Render one canonical diagram's text grid over its fixture core."""
    win, overlays = golden_overlays(name, budget)
    return render_text(win, overlays, region="core")
