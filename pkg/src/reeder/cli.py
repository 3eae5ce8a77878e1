"""Command-line surface: count, classes, census, verify, duality.

Exit codes: 0 ok, 2 parse/usage error, 3 verification mismatch, 4 resource
cap exceeded.
"""

from __future__ import annotations

import csv
import io
import os
import sys
import tempfile
import time
from functools import wraps
from pathlib import Path

import click

from . import families, moves, sigma
from .diagram import Diagram, DiagramError, Labeling, ResourceError, parse_dsl

EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_RESOURCE = 4


def _exit_codes(f):
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ResourceError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_RESOURCE)
        except DiagramError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARSE)

    return wrapper


def _load_target(target: str) -> tuple[Diagram, families.FamilySpec | None]:
    """A family string like A:5 or a DSL file path."""
    head = target.split(":", 1)[0]
    if head in families.FAMILY_NAMES or head == "Abox":
        spec = families.parse_family(target)
        return families.construct(spec), spec
    path = Path(target)
    if not path.is_file():
        raise DiagramError(f"{target!r} is neither a family string nor a file")
    return parse_dsl(path.read_text()), None


def _format_labeling(
    spec: families.FamilySpec | None, diagram: Diagram, a: Labeling
) -> str:
    if spec is None:
        return a.bitstring()
    order, leads_with_zero = families.display_layout(spec, diagram)
    chars = [str(a[i]) for i in order]
    if leads_with_zero:
        return chars[0] + ";" + "".join(chars[1:])
    return "".join(chars)


@click.group()
@click.option(
    "--max-vertices",
    type=int,
    default=None,
    help="Free-vertex cap for enumeration (default: REEDER_MAX_VERTICES or 26).",
)
@click.pass_context
def main(ctx, max_vertices):
    """Reeder's puzzle: enumerate and verify labeling equivalence classes."""
    ctx.obj = {"cap": max_vertices}


@main.command()
@click.argument("target")
@click.option("--formula", is_flag=True, help="Compare against the closed form.")
@click.pass_context
@_exit_codes
def count(ctx, target, formula):
    """Brute-force class count of a family instance or DSL diagram."""
    diagram, spec = _load_target(target)
    part = moves.enumerate_classes(diagram, ctx.obj["cap"])
    if not formula:
        click.echo(str(part.class_count))
        return
    cf = families.closed_form_count(spec) if spec is not None else None
    if cf is None:
        click.echo(f"{part.class_count}, formula=deferred")
        return
    verdict = "MATCH" if cf == part.class_count else "MISMATCH"
    click.echo(f"{part.class_count}, formula={cf}, {verdict}")
    if verdict == "MISMATCH":
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.argument("target")
@click.option("--reps", is_flag=True, help="Check the published representatives.")
@click.option("--full", is_flag=True, help="List every member of every class.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json", "csv"]),
    default="text",
)
@click.pass_context
@_exit_codes
def classes(ctx, target, reps, full, fmt):
    """Class table with sizes, minimal representatives, and components."""
    diagram, spec = _load_target(target)
    part = moves.enumerate_classes(diagram, ctx.obj["cap"])
    if fmt == "json":
        click.echo(part.to_json())
    elif fmt == "csv":
        click.echo(part.to_csv(), nl=False)
    else:
        click.echo(f"target={target} vertices={diagram.n_vertices} "
                   f"free={len(diagram.free_vertices)} classes={part.class_count}")
        click.echo("class size min_rep components")
        for c, s in enumerate(part.summaries):
            hist = ";".join(f"{k}:{v}" for k, v in sorted(s.components.items()))
            tag = " fixed" if s.is_singleton_fixed else ""
            click.echo(
                f"{c} {s.size} {_format_labeling(spec, diagram, s.min_representative)} {hist}{tag}"
            )
            if full:
                for member in part.members(c):
                    click.echo(f"  {_format_labeling(spec, diagram, member)}")
    if reps:
        if spec is None:
            click.echo("error: --reps requires a family target", err=True)
            sys.exit(EXIT_PARSE)
        rep_set = families.canonical_representatives(spec)
        problems = families.check_representatives(spec, part)
        if rep_set is not None:
            for lab, tag in zip(rep_set.labelings, rep_set.provenance):
                click.echo(
                    f"rep {tag} {_format_labeling(spec, diagram, lab)} "
                    f"-> class {part.class_of(lab)}"
                )
        for p in problems:
            click.echo(f"FAIL: {p}")
        if problems:
            sys.exit(EXIT_MISMATCH)
        click.echo("representatives verified")


@main.command()
@click.option("--family", "family_name", required=True)
@click.option("--range", "range_str", required=True, help="Inclusive, e.g. 5..12.")
@click.option("--format", "fmt", type=click.Choice(["csv"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the CSV atomically to this path instead of stdout.")
@click.pass_context
@_exit_codes
def census(ctx, family_name, range_str, fmt, out):
    """Closed-form versus brute-force counts over a parameter range."""
    try:
        lo_s, hi_s = range_str.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise DiagramError(f"bad range {range_str!r}; expected a..b")
    rows = []
    any_mismatch = False
    for n in range(lo, hi + 1):
        spec = families.parse_family(f"{family_name}:{n}")
        diagram = families.construct(spec)
        t0 = time.perf_counter()
        part = moves.enumerate_classes(diagram, ctx.obj["cap"])
        ms = int((time.perf_counter() - t0) * 1000)
        cf = families.closed_form_count(spec)
        if cf is None:
            match = "n/a"
            formula_cell = "deferred"
        else:
            match = "yes" if cf == part.class_count else "no"
            formula_cell = str(cf)
            any_mismatch |= match == "no"
        rows.append(
            [spec.family, n, diagram.n_vertices, formula_cell,
             part.class_count, match, ms]
        )
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "param", "vertices", "formula", "bruteforce", "match", "runtime_ms"])
    w.writerows(rows)
    if out is None:
        click.echo(buf.getvalue(), nl=False)
    else:
        out_path = Path(out)
        fd, tmp = tempfile.mkstemp(dir=out_path.parent or Path("."), suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(buf.getvalue())
        os.replace(tmp, out_path)
    if any_mismatch:
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.argument("target")
@click.pass_context
@_exit_codes
def verify(ctx, target):
    """Run every invariant check that applies to the target diagram."""
    diagram, spec = _load_target(target)
    cap = ctx.obj["cap"]
    failures = []

    def check(name, ok):
        click.echo(f"{'ok' if ok else 'FAIL'}: {name}")
        if not ok:
            failures.append(name)

    part = moves.enumerate_classes(diagram, cap)
    f = len(diagram.free_vertices)
    check("class sizes sum to 2^free", int(part.sizes.sum()) == 1 << f)

    fixed = diagram.fixed_labelings()
    singletons = {
        part.minimal_representative(c).bits
        for c in range(part.class_count)
        if int(part.sizes[c]) == 1
    }
    check(
        "singleton classes are exactly the fixed labelings",
        singletons == {lab.bits for lab in fixed},
    )

    if f <= 12:
        ok = all(
            moves.apply_move(diagram, moves.apply_move(diagram, a, i), i).bits
            == a.bits
            for s in range(1 << f)
            for a in [moves.decode_state(diagram, s)]
            for i in diagram.free_vertices
        )
        check("every move is an involution", ok)

    if spec is not None:
        cf = families.closed_form_count(spec)
        if cf is not None:
            check("closed-form count matches brute force", cf == part.class_count)
        if families.canonical_representatives(spec) is not None:
            problems = families.check_representatives(spec, part)
            for p in problems:
                click.echo(f"  {p}")
            check("published representatives are valid", not problems)

    if diagram.is_simply_laced and not diagram.pinned:
        check("sigma duality identities hold", sigma.duality_check(diagram))

    if failures:
        sys.exit(EXIT_MISMATCH)


@main.command()
@click.argument("target")
@click.pass_context
@_exit_codes
def duality(ctx, target):
    """Sigma-game duality report (JSON) for a simply-laced diagram."""
    diagram, _ = _load_target(target)
    report = sigma.orbit_bijection_check(diagram, ctx.obj["cap"])
    click.echo(report.to_json())
    if report.bijection_verified is False:
        sys.exit(EXIT_MISMATCH)


if __name__ == "__main__":
    main()
