"""Command line interface.

Exit codes: 0 when every check passes, 1 on a verification mismatch, 2 on
usage or parse errors.  Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import click

from .degree import RODegree, parse_degree
from .green import GreenError, degree_of, mul, parse, res, tr

FORMATS = ("text", "json", "csv", "tex")


@dataclass
class Settings:
    fmt: str = "text"
    fmax: Optional[int] = None
    seed: int = 0
    jobs: int = 1


class RangeType(click.ParamType):
    """``lo..hi`` or a single integer."""

    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        text = str(value).strip()
        try:
            if ".." in text:
                lo, hi = (int(p) for p in text.split("..", 1))
            else:
                lo = hi = int(text)
        except ValueError:
            self.fail(f"{value!r} is not of the form lo..hi", param, ctx)
        if lo > hi:
            self.fail(f"empty range {value!r}", param, ctx)
        return (lo, hi)


class DegreeType(click.ParamType):
    name = "degree"

    def convert(self, value, param, ctx):
        if isinstance(value, RODegree):
            return value
        try:
            return parse_degree(value)
        except ValueError as err:
            self.fail(str(err), param, ctx)


RANGE = RangeType()
DEGREE = DegreeType()


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "NO"
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v) if v else "-"
    if v is None:
        return "-"
    return str(v)


def render(rows: Sequence[Dict[str, object]], columns: Sequence[str], fmt: str) -> str:
    """Rows as aligned text, JSON, CSV or a TeX tabular."""
    if fmt == "json":
        return json.dumps(list(rows), indent=2, ensure_ascii=False)
    table = [[_cell(r.get(c)) for c in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(table)
        return buf.getvalue().rstrip("\n")
    if fmt == "tex":
        esc = lambda s: s.replace("_", "\\_").replace("^", "\\^{}").replace("#", "\\#")
        out = ["\\begin{tabular}{" + "l" * len(columns) + "}", " & ".join(map(esc, columns)) + " \\\\", "\\hline"]
        out += [" & ".join(esc(c) for c in row) + " \\\\" for row in table]
        out.append("\\end{tabular}")
        return "\n".join(out)
    widths = [max([len(c)] + [len(row[i]) for row in table]) for i, c in enumerate(columns)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(columns), line(["-" * w for w in widths])] + [line(r) for r in table])


def _window(a: Tuple[int, int], n: Tuple[int, int], m: Tuple[int, int]) -> List[RODegree]:
    return [
        RODegree(x, y, z)
        for y in range(n[0], n[1] + 1)
        for z in range(m[0], m[1] + 1)
        for x in range(a[0], a[1] + 1)
    ]


def _parse_or_exit(text: str, level: Optional[str]):
    try:
        return parse(text, level)
    except GreenError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)


# ---------------------------------------------------------------------------
# commands


@click.group()
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)
@click.option("--fmax", type=click.IntRange(min=0), default=None, help="Skeleton for B_{C4}Sigma_2 (default: guard band).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_context
def main(ctx: click.Context, fmt: str, fmax: Optional[int], seed: int, jobs: int) -> None:
    """RO(C4)-graded Mackey functor homology over F2."""
    ctx.obj = Settings(fmt, fmax, seed, jobs)


@main.command()
@click.option("--a", "a", type=RANGE, default="-2..2", show_default=True)
@click.option("--n", "n", type=RANGE, default="0..0", show_default=True)
@click.option("--m", "m", type=RANGE, default="0..0", show_default=True)
@click.pass_obj
def point(cfg: Settings, a, n, m) -> None:
    """Engine homology of a point against the catalog."""
    from .checks import point_golden

    rows = point_golden(_window(a, n, m))
    click.echo(render(rows, ["degree", "engine", "catalog", "labels", "match"], cfg.fmt))
    sys.exit(0 if all(r["match"] for r in rows) else 1)


@main.command()
@click.argument("rep", type=DEGREE)
@click.option("--range", "rng", type=RANGE, default=None, help="Homological degrees (default: all nonzero).")
@click.pass_obj
def sphere(cfg: Settings, rep: RODegree, rng) -> None:
    """Homology Mackey functors of the representation sphere S^REP."""
    from .cellchain import homology, sphere_complex
    from .mackey import decompose

    C = sphere_complex(rep)
    degs = range(rng[0], rng[1] + 1) if rng else C.degrees
    rows = []
    for d in degs:
        M = homology(C, d)
        if rng is None and not any(M.dims):
            continue
        rows.append({"degree": d, "dims": list(M.dims), "tags": decompose(M)})
    click.echo(render(rows, ["degree", "dims", "tags"], cfg.fmt))


def _unary(cfg: Settings, fn, expr: str, level: Optional[str]) -> None:
    x = _parse_or_exit(expr, level)
    try:
        y = fn(x)
    except GreenError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)
    _emit_element(cfg, y)


def _emit_element(cfg: Settings, y) -> None:
    if cfg.fmt == "json":
        deg = str(degree_of(y)) if y else None
        click.echo(json.dumps({"level": y.level.name, "value": str(y), "degree": deg}, ensure_ascii=False))
    else:
        click.echo(str(y))


@main.command("mul")
@click.argument("x")
@click.argument("y")
@click.option("--level", type=click.Choice(["top", "mid", "bot", "c2top", "c2bot"]), default=None)
@click.pass_obj
def mul_cmd(cfg: Settings, x: str, y: str, level: Optional[str]) -> None:
    """Canonical product of two expressions."""
    a, b = _parse_or_exit(x, level), _parse_or_exit(y, level)
    try:
        _emit_element(cfg, mul(a, b))
    except GreenError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)


@main.command("res")
@click.argument("x")
@click.option("--level", type=click.Choice(["top", "mid", "c2top"]), default=None)
@click.pass_obj
def res_cmd(cfg: Settings, x: str, level: Optional[str]) -> None:
    """Restriction one level down."""
    _unary(cfg, res, x, level)


@main.command("tr")
@click.argument("x")
@click.option("--level", type=click.Choice(["mid", "bot", "c2bot"]), default=None)
@click.pass_obj
def tr_cmd(cfg: Settings, x: str, level: Optional[str]) -> None:
    """Transfer one level up."""
    _unary(cfg, tr, x, level)


def _e1_output(cfg: Settings, base: str, rng, rows: Optional[int]) -> None:
    from .bc4sigma2 import FIGURES, e1_page

    if base in FIGURES:
        origin, shift = FIGURES[base]
        origin = origin - RODegree(shift)
    else:
        origin = parse_degree(base)
    lo, hi = rng
    top = hi if rows is None else rows
    table = e1_page([origin + RODegree(x) for x in range(lo, hi + 1)], top)
    if cfg.fmt in ("json", "csv"):
        out = []
        for (star, s), e in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0].a)):
            t, m_, b = e.labels()
            out.append({"x": star.a - origin.a, "s": s, "degree": str(star), "top": t, "mid": m_, "bot": b})
        click.echo(render(out, ["x", "s", "degree", "top", "mid", "bot"], cfg.fmt))
    else:
        click.echo(table.render(origin, "tex" if cfg.fmt == "tex" else "text"))


@main.command()
@click.option("--degree", "degree", type=DEGREE, default=None, help="Verify a single degree.")
@click.option("--e1", "e1", is_flag=True, help="Print the E1 page instead of verifying.")
@click.option("--range", "rng", type=RANGE, default="0..6", show_default=True, help="x range of the E1 page.")
@click.option("--base", default="integer", show_default=True, help="E1 figure (integer, sigma, lambda, rho, 2sigma) or degree.")
@click.option("--a", "a", type=RANGE, default="-4..4", show_default=True)
@click.option("--n", "n", type=RANGE, default="-2..2", show_default=True)
@click.option("--m", "m", type=RANGE, default="-2..2", show_default=True)
@click.pass_obj
def bc4(cfg: Settings, degree, e1, rng, base, a, n, m) -> None:
    """Verify the cohomology of B_{C4}Sigma_2 against its oracles."""
    from .bc4sigma2 import E1_ANCHORS, check_anchor, presentation, verify_degree, verify_window

    if e1:
        _e1_output(cfg, base, rng, None)
        return
    columns = ["degree", "engine", "oracle", "e2", "d2", "middle_c2", "stable", "tags", "match"]
    if degree is not None:
        row = verify_degree(degree, cfg.fmax)
        click.echo(render([row], columns, cfg.fmt))
        sys.exit(0 if row["match"] or not row["stable"] else 1)
    report = verify_window(_window(a, n, m), cfg.fmax, cfg.jobs)
    anchors = [(str(x), *check_anchor(x)) for x in E1_ANCHORS]
    pres = presentation().report()
    if cfg.fmt == "json":
        doc = dict(report)
        doc["anchors"] = [{"anchor": s, "ok": ok, "computed": got} for s, ok, got in anchors]
        doc["presentation"] = pres
        click.echo(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        click.echo(render(report["rows"], columns, cfg.fmt))
        if cfg.fmt == "text":
            click.echo("")
            click.echo(f"degrees {report['degrees']}, stable {report['stable']}, mismatches {len(report['mismatches'])}")
            click.echo(f"anchors {sum(ok for _, ok, _ in anchors)}/{len(anchors)}, presentation {'ok' if pres['ok'] else 'FAILED'}")
    ok = report["ok"] and all(ok for _, ok, _ in anchors) and pres["ok"]
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--range", "rng", type=RANGE, default="0..6", show_default=True)
@click.option("--base", default="integer", show_default=True)
@click.option("--rows", type=click.IntRange(min=0), default=None, help="Highest filtration (default: top of the range).")
@click.pass_obj
def e1(cfg: Settings, rng, base: str, rows: Optional[int]) -> None:
    """The E1 page as three grids, one per level."""
    _e1_output(cfg, base, rng, rows)


@main.command()
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.pass_obj
def axioms(cfg: Settings, trials: int) -> None:
    """Mackey axiom and Green ring property suites."""
    from .checks import green_suite, mackey_suite, trres_table

    rows = [{"suite": "mackey axioms", "invariant": "validate and decompose", "failures": mackey_suite(cfg.seed, trials)}]
    for name, fails in green_suite().items():
        rows.append({"suite": "green ring", "invariant": name, "failures": fails})
    for f in trres_table():
        rows.append({"suite": "tr/res", "invariant": f.name, "failures": [] if f.ok else [f"got {f.got}"]})
    for r in rows:
        r["pass"] = not r["failures"]
        r["failures"] = r["failures"][:5]
    click.echo(render(rows, ["suite", "invariant", "pass", "failures"], cfg.fmt))
    sys.exit(0 if all(r["pass"] for r in rows) else 1)


@main.command()
@click.option("--window", "win", type=click.IntRange(min=1), default=6, show_default=True)
@click.pass_obj
def nonflat(cfg: Settings, win: int) -> None:
    """Computational ingredients of the non-flatness of the middle level."""
    from .bc4sigma2 import nonflat_ingredients

    rows = [{"ingredient": x.name, "pass": x.ok, "detail": x.detail} for x in nonflat_ingredients(win)]
    click.echo(render(rows, ["ingredient", "pass", "detail"], cfg.fmt))
    sys.exit(0 if all(r["pass"] for r in rows) else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
