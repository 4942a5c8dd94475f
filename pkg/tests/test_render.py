"""Diagram-renderer tests.

The eight canonical overlay diagrams are pinned as golden byte strings; the
rest checks the grid geometry on windows small enough to write the expected
picture out by hand, the canonical glyph stacking rule, determinism, and
the error paths.
"""
from __future__ import annotations

from importlib import resources

import pytest

from extricat.intervals import ModuleWindow
from extricat.mesh import DerivedWindow
from extricat.model import ConfigError
from extricat.oracle import LinePresentation
from extricat.render import (
    FILLER,
    GLYPH_ORDER,
    GOLDEN_DIAGRAMS,
    RenderedQuiver,
    UnknownGlyphError,
    golden_overlays,
    golden_text,
    render_quiver,
    render_svg,
    render_text,
)


def golden_bytes(filename: str) -> bytes:
    return resources.files("extricat").joinpath("data", "golden", filename).read_bytes()


@pytest.fixture(scope="module")
def m2() -> ModuleWindow:
    return ModuleWindow(LinePresentation.a_n(2), (1, 2))


@pytest.fixture(scope="module")
def d2() -> DerivedWindow:
    return DerivedWindow(2, (-2, 3), (0, 1))


class TestGeometry:
    def test_two_vertex_module_window(self, m2: ModuleWindow) -> None:
        assert render_text(m2) == "  ·\n / \\\n·   ·\n"

    def test_module_marker_positions(self, m2: ModuleWindow) -> None:
        a, b = m2.index[(1, 1)], m2.index[(2, 2)]
        text = render_text(m2, {"♠": [a], "♥": [b]})
        assert text == "  ·\n / \\\n♠   ♥\n"

    def test_derived_rows_top_down(self, d2: DerivedWindow) -> None:
        # height-2 row on top, one glyph per window object, diagonals between
        # translation-grid neighbours only
        text = render_text(d2, {"•": [d2.index[(0, 2)]]})
        lines = text.splitlines()
        assert len(lines) == 3
        assert lines[0].count("•") == 1 and lines[0].count(FILLER) == len(
            [c for c in d2.coords if c[1] == 2]
        ) - 1
        assert set(lines[1]) <= {" ", "/", "\\"}
        assert lines[2].count(FILLER) == len([c for c in d2.coords if c[1] == 1])

    def test_region_core_is_narrower(self, d2: DerivedWindow) -> None:
        full = render_text(d2)
        core = render_text(d2, region="core")
        assert max(len(l) for l in core.splitlines()) < max(
            len(l) for l in full.splitlines()
        )

    def test_text_ends_with_newline_no_trailing_blanks(self, d2: DerivedWindow) -> None:
        text = render_text(d2)
        assert text.endswith("\n") and not text.endswith(" \n")
        assert all(line == line.rstrip() for line in text.splitlines())


class TestStacking:
    def test_canonical_winner_in_text(self, m2: ModuleWindow) -> None:
        i = m2.index[(1, 2)]
        text = render_text(m2, {"♠": [i], "✠": [i]})
        assert "✠" in text and "♠" not in text

    def test_insertion_order_irrelevant(self, m2: ModuleWindow) -> None:
        i = m2.index[(1, 2)]
        one = render_quiver(m2, {"♠": [i], "✠": [i]})
        other = render_quiver(m2, {"✠": [i], "♠": [i]})
        assert one == other

    def test_svg_concatenates_stack(self, m2: ModuleWindow) -> None:
        i = m2.index[(1, 2)]
        svg = render_svg(m2, {"♠": [i], "✠": [i]})
        assert ">✠♠<" in svg

    def test_filler_is_registered_glyph(self) -> None:
        assert FILLER in GLYPH_ORDER


class TestErrors:
    def test_unknown_glyph(self, m2: ModuleWindow) -> None:
        with pytest.raises(UnknownGlyphError, match="unknown glyph '\\?'"):
            render_text(m2, {"?": [0]})

    def test_unknown_glyph_is_config_error(self, m2: ModuleWindow) -> None:
        with pytest.raises(ConfigError):
            render_svg(m2, {"!": [0]})

    def test_member_outside_window(self, m2: ModuleWindow) -> None:
        with pytest.raises(ConfigError, match="outside the window"):
            render_text(m2, {"♠": [m2.n_indecs]})

    def test_unknown_golden_name(self) -> None:
        with pytest.raises(ConfigError, match="unknown diagram"):
            golden_text("no_such_diagram")


class TestDeterminism:
    def test_text_and_svg_stable_across_rebuilds(self) -> None:
        def build() -> RenderedQuiver:
            win = DerivedWindow(3, (-3, 6), (0, 3))
            overlays = {"♦": [0, 5], "★": [5, 7]}
            return render_quiver(win, overlays, region="window")

        assert build() == build()

    def test_quiver_bundles_both_renderings(self, m2: ModuleWindow) -> None:
        bundle = render_quiver(m2, {"♦": [0]})
        assert bundle.text == render_text(m2, {"♦": [0]})
        assert bundle.svg == render_svg(m2, {"♦": [0]})


class TestGoldens:
    def test_eight_diagrams_declared(self) -> None:
        assert len(GOLDEN_DIAGRAMS) == 8
        assert len({name for name, _, _ in GOLDEN_DIAGRAMS}) == 8

    @pytest.mark.parametrize("name", [name for name, _, _ in GOLDEN_DIAGRAMS])
    def test_golden_text_matches(self, name: str) -> None:
        assert golden_text(name).encode("utf-8") == golden_bytes(f"{name}.txt")

    def test_golden_svg_matches(self) -> None:
        win, overlays = golden_overlays("mesh4_spades")
        svg = render_svg(win, overlays, region="core")
        assert svg.encode("utf-8") == golden_bytes("mesh4_spades.svg")

    def test_golden_overlays_use_declared_glyphs(self) -> None:
        win, overlays = golden_overlays("pattern_pairing")
        assert set(overlays) == {"♣", "♠"}
        assert all(stack.members for stack in overlays.values())
