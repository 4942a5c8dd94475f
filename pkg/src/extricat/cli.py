"""Command-line driver.

Subcommands: ``build`` constructs a window and reports its shape;
``subcat`` resolves a fixture marker and applies one subcategory operator;
``check`` runs fixture suites in observe-only mode; ``render`` draws
marker diagrams (and compares them against golden files); ``fixtures run``
runs fixtures against their pinned expectations.

Exit codes: 0 pass, 1 assertion failure, 2 inconclusive-only, 3
configuration error.  All JSON output is byte-deterministic (sorted keys,
two-space indent, trailing newline).
"""

from __future__ import annotations

import functools
import json
import pathlib
import sys

import click

from . import fixtures as fx
from . import render as rd
from . import subcats as sc
from .intervals import ModuleWindow
from .mesh import DerivedWindow
from .model import Budget, ConfigError, Window
from .oracle import LinePresentation

_WINDOW_HELP = "derived:<n>:<lo>:<hi> | line:<n> | pattern:<lo>:<hi>"


def parse_window_spec(spec: str, margin: int) -> Window:
    """Build the window a compact spec string describes, shrinking the
    certified region by ``margin`` on both sides."""
    parts = spec.split(":")
    try:
        if parts[0] == "derived" and len(parts) == 4:
            n, lo, hi = (int(p) for p in parts[1:])
            return DerivedWindow(n, (lo, hi), (lo + margin, hi - margin))
        if parts[0] == "line" and len(parts) == 2:
            n = int(parts[1])
            return ModuleWindow(LinePresentation.a_n(n), (1 + margin, n - margin))
        if parts[0] == "pattern" and len(parts) == 3:
            lo, hi = (int(p) for p in parts[1:])
            return ModuleWindow(
                LinePresentation.pattern_4k(lo, hi), (lo + margin, hi - margin)
            )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad window spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad window spec {spec!r}; use {_WINDOW_HELP}")


def load_fixture_arg(name: str) -> fx.Fixture:
    """A fixture argument is a builtin name or a path to a fixture file."""
    if name in fx.builtin_fixture_names():
        return fx.builtin_fixture(name)
    path = pathlib.Path(name)
    if path.exists():
        return fx.load_fixture(path)
    known = ", ".join(fx.builtin_fixture_names())
    raise fx.FixtureError(f"unknown fixture {name!r}: no such file; builtins: {known}")


def _emit(doc: dict, report_path: pathlib.Path | None) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
    click.echo(text, nl=False)
    if report_path is not None:
        report_path.write_bytes(text.encode("utf-8"))


def _write_report(doc: dict, report_path: pathlib.Path | None) -> None:
    if report_path is not None:
        text = json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=True) + "\n"
        report_path.write_bytes(text.encode("utf-8"))


def config_guard(f):
    """Config-level problems exit with code 3 and a one-line diagnostic."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (fx.FixtureError, ConfigError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


_report_option = click.option(
    "--report",
    "report_path",
    type=click.Path(dir_okay=False, writable=True, path_type=pathlib.Path),
    help="Also write the JSON report to this path.",
)
_budget_option = click.option(
    "--budget",
    "budget_name",
    default="default",
    show_default=True,
    help="Search-budget preset: quick, default, or deep.",
)


@click.group()
def main() -> None:
    """Workbench for finite windows of translation-grid categories:
    cotorsion-pair checks, ideal quotients, and marker diagrams."""


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


@main.command()
@click.option("--window", "window_spec", required=True, help=_WINDOW_HELP)
@click.option(
    "--core-margin",
    default=0,
    show_default=True,
    type=int,
    help="Boundary layers excluded from the certified region.",
)
@_report_option
@config_guard
def build(window_spec: str, core_margin: int, report_path: pathlib.Path | None) -> None:
    """Build a window and report its shape."""
    win = parse_window_spec(window_spec, core_margin)
    coords = sorted(win.coords)
    doc = {
        "window": window_spec,
        "backend": "derived" if isinstance(win, DerivedWindow) else "module",
        "core_margin": core_margin,
        "objects": win.n_indecs,
        "core_objects": len(win.core),
        "first": str(coords[0]),
        "last": str(coords[-1]),
    }
    _emit(doc, report_path)


# ---------------------------------------------------------------------------
# subcat
# ---------------------------------------------------------------------------


@main.command()
@click.argument(
    "op",
    type=click.Choice(["members", "perp-right", "perp-left", "extension-closure"]),
)
@click.option("--fixture", "fixture_name", required=True, help="Builtin name or path.")
@click.option("--marker", "marker_name", required=True, help="Marker to resolve.")
@click.option(
    "--region",
    default="core",
    show_default=True,
    type=click.Choice(["core", "window"]),
)
@_budget_option
@_report_option
@config_guard
def subcat(
    op: str,
    fixture_name: str,
    marker_name: str,
    region: str,
    budget_name: str,
    report_path: pathlib.Path | None,
) -> None:
    """Resolve a fixture marker and apply one subcategory operator."""
    fix = load_fixture_arg(fixture_name)
    budget = Budget.preset(budget_name)
    ctx = fx.FixtureContext(fix, budget)
    win = ctx.win
    cls = fx.resolve_marker(win, fix, marker_name)
    if op == "members":
        keep = cls.members & set(sc.region_indices(win, region))
        out = sc.Subcat(frozenset(keep), cls.provenance)
    elif op == "perp-right":
        out = sc.perp_right(win, cls, region=region)
    elif op == "perp-left":
        out = sc.perp_left(win, cls, region=region)
    else:
        out = sc.closure(win, cls, "extensions", budget=budget, on_escape="ignore")
        keep = out.members & set(sc.region_indices(win, region))
        out = sc.Subcat(frozenset(keep), out.provenance)
    doc = {
        "op": op,
        "fixture": fix.name,
        "marker": marker_name,
        "region": region,
        "members": out.labels(win),
    }
    _emit(doc, report_path)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


@main.command()
@click.argument("fixture_names", nargs=-1, required=True, metavar="FIXTURE...")
@click.option(
    "--suite",
    "suite_names",
    multiple=True,
    help="Suite to run (repeatable); defaults to the fixture's own list.",
)
@_budget_option
@_report_option
@config_guard
def check(
    fixture_names: tuple[str, ...],
    suite_names: tuple[str, ...],
    budget_name: str,
    report_path: pathlib.Path | None,
) -> None:
    """Run suites in observe-only mode (no expected comparison)."""
    budget = Budget.preset(budget_name)
    docs = {}
    for name in fixture_names:
        fix = load_fixture_arg(name)
        rep = fx.run_fixture(fix, list(suite_names) or None, budget=budget, compare=False)
        docs[fix.name] = rep.to_json()
    _emit({"fixtures": docs}, report_path)


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------


@main.command()
@click.argument("diagrams", nargs=-1, metavar="[DIAGRAM...]")
@click.option("--window", "window_spec", help=f"Render a plain grid: {_WINDOW_HELP}")
@click.option("--core-margin", default=0, show_default=True, type=int)
@click.option(
    "--region",
    default="core",
    show_default=True,
    type=click.Choice(["core", "window"]),
    help="Region drawn in --window mode (named diagrams always draw the core).",
)
@click.option("--svg", "want_svg", is_flag=True, help="Emit SVG instead of text.")
@click.option(
    "--golden",
    "golden_dir",
    type=click.Path(file_okay=False, exists=True, path_type=pathlib.Path),
    help="Compare named diagrams against <dir>/<name>.txt instead of printing.",
)
@_report_option
@config_guard
def render(
    diagrams: tuple[str, ...],
    window_spec: str | None,
    core_margin: int,
    region: str,
    want_svg: bool,
    golden_dir: pathlib.Path | None,
    report_path: pathlib.Path | None,
) -> None:
    """Render canonical marker diagrams, or a plain window grid."""
    if window_spec is not None:
        if diagrams:
            raise ConfigError("give either --window or diagram names, not both")
        win = parse_window_spec(window_spec, core_margin)
        text = (
            rd.render_svg(win, (), region) if want_svg else rd.render_text(win, (), region)
        )
        click.echo(text, nl=False)
        if report_path is not None:
            report_path.write_bytes(text.encode("utf-8"))
        return
    names = list(diagrams) or [n for n, _, _ in rd.GOLDEN_DIAGRAMS]
    if golden_dir is not None:
        mismatches = []
        for name in names:
            text = rd.golden_text(name)
            path = golden_dir / f"{name}.txt"
            ok = path.exists() and path.read_bytes() == text.encode("utf-8")
            click.echo(f"{name}: {'match' if ok else 'MISMATCH'}")
            if not ok:
                mismatches.append(name)
        _write_report({"golden": str(golden_dir), "mismatches": mismatches}, report_path)
        sys.exit(1 if mismatches else 0)
    rendered = {}
    for name in names:
        win, overlays = rd.golden_overlays(name)
        rendered[name] = (
            rd.render_svg(win, overlays, "core")
            if want_svg
            else rd.render_text(win, overlays, "core")
        )
        click.echo(f"=== {name} ===")
        click.echo(rendered[name], nl=False)
    _write_report({"diagrams": rendered}, report_path)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


@main.group(name="fixtures")
def fixtures_group() -> None:
    """Fixture-file operations."""


@fixtures_group.command(name="run")
@click.argument("fixture_names", nargs=-1, metavar="[FIXTURE...]")
@click.option(
    "--suite",
    "suite_names",
    multiple=True,
    help="Suite to run (repeatable); defaults to each fixture's own list.",
)
@_budget_option
@_report_option
@config_guard
def fixtures_run(
    fixture_names: tuple[str, ...],
    suite_names: tuple[str, ...],
    budget_name: str,
    report_path: pathlib.Path | None,
) -> None:
    """Run fixtures against their pinned expectations.

    Exit code: 1 if any suite fails, else 2 if any suite lacks a pinned
    expectation, else 0.
    """
    budget = Budget.preset(budget_name)
    names = list(fixture_names) or fx.builtin_fixture_names()
    docs = {}
    saw_fail = False
    saw_inconclusive = False
    for name in names:
        fix = load_fixture_arg(name)
        rep = fx.run_fixture(fix, list(suite_names) or None, budget=budget)
        docs[fix.name] = rep.to_json()
        for r in rep.suites:
            line = f"{fix.name}:{r.suite}: {r.status}"
            if r.status == "fail" and r.witness:
                line += f" ({r.witness})"
            click.echo(line)
        saw_fail = saw_fail or rep.exit_code == 1
        saw_inconclusive = saw_inconclusive or rep.exit_code == 2
    code = 1 if saw_fail else 2 if saw_inconclusive else 0
    _write_report({"exit_code": code, "fixtures": docs}, report_path)
    sys.exit(code)


if __name__ == "__main__":
    main()
