"""Command-line front end.

Exit codes follow one contract everywhere: 0 for an affirmative verdict or
successfully reported data, 1 for a negative verdict (including any failed
verification), 2 for usage or domain errors, 3 when a resource guard trips.
Every subcommand takes --format text|json; JSON payloads follow the same
schemas the library reads.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import click

from . import cells as cells_mod
from . import diagrams as diagrams_mod
from . import fixtures as fixtures_mod
from . import networks as networks_mod
from . import permutations as perm_mod
from . import poisson as poisson_mod
from . import quantum as quantum_mod
from . import cauchon as cauchon_mod
from .errors import ConsistencyError, DomainError, ResourceGuardError
from .matrices import (
    Matrix,
    MinorFamily,
    MinorIndex,
    all_minors,
    initial_minors,
    is_tnn_bruteforce,
    is_tp,
    load_matrix_text,
    matrix_to_json,
    minor,
)
from .scalars import MPoly


class App(click.Group):
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except ResourceGuardError as exc:
            click.echo(f"resource guard: {exc}", err=True)
            sys.exit(3)
        except ConsistencyError as exc:
            click.echo(f"consistency failure: {exc}", err=True)
            sys.exit(1)


@click.group(cls=App)
@click.version_option(package_name="tnncells")
def main() -> None:
    """Exact tools for totally nonnegative cells."""


def format_option(fn):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "json"]),
        default="text",
        help="Output rendering.",
    )(fn)


def _read_source(value: str) -> str:
    """Resolve an argument that may be '-', a file path, or inline text."""
    if value == "-":
        return sys.stdin.read()
    path = Path(value)
    if path.exists():
        return path.read_text()
    return value


def _matrix_arg(value: str) -> Matrix:
    return load_matrix_text(_read_source(value))


def _diagram_arg(value: str) -> diagrams_mod.CauchonDiagram:
    return diagrams_mod.CauchonDiagram.load_text(_read_source(value))


def _index_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise DomainError(f"bad index list {text!r}") from exc


def _emit(fmt: str, payload: dict[str, Any], text: str, code: int = 0) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text)
    sys.exit(code)


def _verdict_code(ok: bool) -> int:
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Matrix commands
# ---------------------------------------------------------------------------


@main.command()
@click.argument("matrix")
@format_option
def minors(matrix: str, fmt: str) -> None:
    """List every minor of a matrix with its exact value."""
    M = _matrix_arg(matrix)
    values = all_minors(M)
    payload = {
        "m": M.m,
        "p": M.p,
        "count": len(values),
        "minors": [
            {"index": str(ix), **ix.to_json(), "value": str(v)} for ix, v in values
        ],
    }
    lines = [f"{ix} = {v}" for ix, v in values]
    lines.append(f"total {len(values)}")
    _emit(fmt, payload, "\n".join(lines))


@main.command(name="tp-check")
@click.argument("matrix")
@format_option
def tp_check(matrix: str, fmt: str) -> None:
    """Total positivity via initial minors (square matrices)."""
    M = _matrix_arg(matrix)
    values = initial_minors(M)
    verdict = all(v > 0 for _, v in values)
    payload = {
        "tp": verdict,
        "initial_minors": [
            {"index": str(ix), "value": str(v)} for ix, v in values
        ],
    }
    text = "totally positive" if verdict else "not totally positive"
    offenders = [f"  {ix} = {v}" for ix, v in values if v <= 0]
    if offenders:
        text += "\n" + "\n".join(offenders)
    _emit(fmt, payload, text, _verdict_code(verdict))


@main.command(name="tnn-check")
@click.argument("matrix")
@click.option(
    "--method",
    type=click.Choice(["deletion", "bruteforce", "both"]),
    default="both",
    help="Deleting derivations, the all-minors scan, or both with cross-check.",
)
@format_option
def tnn_check(matrix: str, method: str, fmt: str) -> None:
    """Total nonnegativity, by algorithm and by brute force."""
    M = _matrix_arg(matrix)
    payload: dict[str, Any] = {"m": M.m, "p": M.p, "method": method}
    verdicts = []
    if method in ("deletion", "both"):
        result = cauchon_mod.tnn_test(M)
        verdicts.append(result.is_tnn)
        payload["deletion"] = {
            "tnn": result.is_tnn,
            "final": matrix_to_json(result.final),
            "diagram": result.diagram.to_json() if result.diagram else None,
        }
    if method in ("bruteforce", "both"):
        ok, witness = is_tnn_bruteforce(M)
        verdicts.append(ok)
        payload["bruteforce"] = {
            "tnn": ok,
            "witness": str(witness) if witness else None,
            "witness_value": str(minor(M, witness)) if witness else None,
        }
    if len(set(verdicts)) > 1:
        raise ConsistencyError("deletion and brute-force verdicts disagree")
    verdict = verdicts[0]
    payload["tnn"] = verdict
    if verdict:
        text = "totally nonnegative"
        if "deletion" in payload and payload["deletion"]["diagram"]:
            diagram = cauchon_mod.tnn_test(M).diagram
            text += "\n" + diagram.to_ascii()
    else:
        text = "not totally nonnegative"
        bf = payload.get("bruteforce")
        if bf and bf["witness"]:
            text += f": minor {bf['witness']} = {bf['witness_value']}"
    _emit(fmt, payload, text, _verdict_code(verdict))


def _run_sweep(matrix: str, fmt: str, stages: bool, forward: bool) -> None:
    M = _matrix_arg(matrix)
    stage_fn = (
        cauchon_mod.restoration_stages
        if forward
        else cauchon_mod.deleting_stages
    )
    steps = list(stage_fn(M))
    final = steps[-1][1] if steps else M
    payload: dict[str, Any] = {"final": matrix_to_json(final)}
    lines = []
    if stages:
        payload["stages"] = [
            {"step": list(ix), "matrix": matrix_to_json(stage)}
            for ix, stage in steps
        ]
        for ix, stage in steps:
            lines.append(f"after {ix}:")
            lines.append(str(stage))
    lines.append(str(final))
    _emit(fmt, payload, "\n".join(lines))


@main.command()
@click.argument("matrix")
@click.option("--stages", is_flag=True, help="Show the matrix after every step.")
@format_option
def restore(matrix: str, stages: bool, fmt: str) -> None:
    """Run the restoration sweep (1,1) up to (m,p)."""
    _run_sweep(matrix, fmt, stages, forward=True)


@main.command()
@click.argument("matrix")
@click.option("--stages", is_flag=True, help="Show the matrix after every step.")
@format_option
def delete(matrix: str, stages: bool, fmt: str) -> None:
    """Run the deleting-derivations sweep (m,p) down to (1,1)."""
    _run_sweep(matrix, fmt, stages, forward=False)


@main.command()
@click.option("--diagram", "-d", "diagram_src", required=True)
@click.option(
    "--symbolic/--ones",
    default=False,
    help="Symbolic entries per white cell, or every white cell set to 1.",
)
@format_option
def tc(diagram_src: str, symbolic: bool, fmt: str) -> None:
    """The canonical matrix of a diagram."""
    diagram = _diagram_arg(diagram_src)
    if symbolic:
        M = cauchon_mod.symbolic_TC(diagram)
        entries = [[str(x) for x in row] for row in M.rows]
        payload = {"m": M.m, "p": M.p, "entries": entries, "symbolic": True}
    else:
        M = cauchon_mod.ones_TC(diagram)
        payload = {**matrix_to_json(M), "symbolic": False}
    _emit(fmt, payload, str(M))


@main.command()
@click.option("--diagram", "-d", "diagram_src", required=True)
@click.option("--no-prefilter", is_flag=True, help="Skip modular pre-filtering.")
@click.option("--samples", default=3, show_default=True)
@format_option
def vanish(diagram_src: str, no_prefilter: bool, samples: int, fmt: str) -> None:
    """The identically vanishing minors of a diagram's canonical matrix."""
    diagram = _diagram_arg(diagram_src)
    family = cauchon_mod.vanishing_family(
        diagram, prefilter=not no_prefilter, samples=samples
    )
    payload = family.to_json()
    text = "\n".join(str(ix) for ix in family) or "(none)"
    _emit(fmt, payload, text)


# ---------------------------------------------------------------------------
# Diagram commands
# ---------------------------------------------------------------------------


@main.group()
def diagram() -> None:
    """Diagram enumeration and validation."""


@diagram.command(name="enum")
@click.argument("m", type=int)
@click.argument("p", type=int)
@click.option("--count-only", is_flag=True)
@format_option
def diagram_enum(m: int, p: int, count_only: bool, fmt: str) -> None:
    """All diagrams of the grid, in canonical order."""
    if count_only:
        count = diagrams_mod.count_diagrams(m, p)
        _emit(fmt, {"m": m, "p": p, "count": count}, str(count))
    items = list(diagrams_mod.enumerate_diagrams(m, p))
    payload = {
        "m": m,
        "p": p,
        "count": len(items),
        "diagrams": [d.to_json() for d in items],
    }
    text = "\n\n".join(d.to_ascii() for d in items) + f"\n\ntotal {len(items)}"
    _emit(fmt, payload, text)


@diagram.command(name="check")
@click.argument("grid")
@format_option
def diagram_check(grid: str, fmt: str) -> None:
    """Is a 0/1 or dot/hash grid a valid diagram?"""
    text = _read_source(grid)
    body = text.strip().replace("/", "\n")
    lines = [line.strip() for line in body.splitlines() if line.strip()]
    if not lines or any(len(line) != len(lines[0]) for line in lines):
        raise DomainError("grid rows are missing or differ in length")
    charset = set("".join(lines))
    if charset <= {".", "#"}:
        black_chars = {"#"}
    elif charset <= {"0", "1"}:
        black_chars = {"0"}
    else:
        raise DomainError("grid must use .# or 01 characters")
    black = {
        (i + 1, a + 1)
        for i, line in enumerate(lines)
        for a, ch in enumerate(line)
        if ch in black_chars
    }
    ok = diagrams_mod.is_cauchon(len(lines), len(lines[0]), black)
    payload = {"m": len(lines), "p": len(lines[0]), "valid": ok}
    _emit(fmt, payload, "valid" if ok else "not a diagram", _verdict_code(ok))


# ---------------------------------------------------------------------------
# Network commands
# ---------------------------------------------------------------------------


@main.group()
def network() -> None:
    """Planar networks and path counting."""


@network.command(name="from-diagram")
@click.option("--diagram", "-d", "diagram_src", required=True)
@click.option("--dot", "as_dot", is_flag=True, help="Emit Graphviz DOT.")
@format_option
def network_from_diagram(diagram_src: str, as_dot: bool, fmt: str) -> None:
    """Build the dot-and-hook network of a diagram."""
    net = networks_mod.postnikov_network(_diagram_arg(diagram_src))
    if as_dot:
        click.echo(net.to_dot())
        sys.exit(0)
    _emit(fmt, net.to_json(), json.dumps(net.to_json(), indent=2))


def _network_arg(diagram_src: str | None, network_src: str | None):
    if (diagram_src is None) == (network_src is None):
        raise DomainError("give exactly one of --diagram or --network")
    if diagram_src is not None:
        return networks_mod.postnikov_network(_diagram_arg(diagram_src))
    return networks_mod.PlanarNetwork.load_text(_read_source(network_src))


@network.command(name="path-matrix")
@click.option("--diagram", "-d", "diagram_src", default=None)
@click.option("--network", "-n", "network_src", default=None)
@format_option
def network_path_matrix(diagram_src, network_src, fmt: str) -> None:
    """Weighted source-to-sink path sums."""
    net = _network_arg(diagram_src, network_src)
    M = networks_mod.path_matrix(net)
    _emit(fmt, matrix_to_json(M), str(M))


@network.command(name="lindstrom")
@click.option("--diagram", "-d", "diagram_src", default=None)
@click.option("--network", "-n", "network_src", default=None)
@click.option("--rows", required=True)
@click.option("--cols", required=True)
@format_option
def network_lindstrom(diagram_src, network_src, rows: str, cols: str, fmt: str) -> None:
    """Count vertex-disjoint path families from sources to sinks."""
    net = _network_arg(diagram_src, network_src)
    ix = MinorIndex(_index_list(rows), _index_list(cols))
    count = networks_mod.nonintersecting_count(net, ix)
    payload = {"index": str(ix), "count": str(count)}
    _emit(fmt, payload, str(count))


# ---------------------------------------------------------------------------
# Permutation commands
# ---------------------------------------------------------------------------


@main.group()
def perm() -> None:
    """Restricted permutations and pipe dreams."""


@perm.command(name="enum")
@click.argument("m", type=int)
@click.argument("p", type=int)
@click.option("--count-only", is_flag=True)
@format_option
def perm_enum(m: int, p: int, count_only: bool, fmt: str) -> None:
    """All restricted permutations in lexicographic order."""
    if count_only:
        count = perm_mod.count_restricted(m, p)
        _emit(fmt, {"m": m, "p": p, "count": count}, str(count))
    items = list(perm_mod.enumerate_restricted(m, p))
    payload = {
        "m": m,
        "p": p,
        "count": len(items),
        "permutations": [w.one_line() for w in items],
    }
    text = "\n".join(w.one_line() for w in items) + f"\ntotal {len(items)}"
    _emit(fmt, payload, text)


@perm.command(name="pipedream")
@click.option("--diagram", "-d", "diagram_src", required=True)
@format_option
def perm_pipedream(diagram_src: str, fmt: str) -> None:
    """Trace a diagram's pipes to a permutation."""
    w = perm_mod.pipe_dream(_diagram_arg(diagram_src))
    payload = {"one_line": w.one_line(), "cycles": w.cycle_string()}
    _emit(fmt, payload, w.one_line())


@perm.command(name="inverse-pipedream")
@click.argument("w")
@click.option("--m", "m", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@format_option
def perm_inverse_pipedream(w: str, m: int, p: int, fmt: str) -> None:
    """The diagram whose pipes trace to the given permutation."""
    perm_value = perm_mod.parse_permutation(w, m + p)
    diagram = perm_mod.inverse_pipe_dream(perm_value, m, p)
    _emit(fmt, diagram.to_json(), diagram.to_ascii())


@perm.command(name="mw")
@click.argument("w")
@click.option("--m", "m", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@format_option
def perm_mw(w: str, m: int, p: int, fmt: str) -> None:
    """The minor family attached to a restricted permutation."""
    perm_value = perm_mod.parse_permutation(w, m + p)
    family = perm_mod.minor_family(perm_value, m, p)
    text = "\n".join(str(ix) for ix in family) or "(none)"
    _emit(fmt, family.to_json(), text)


@perm.command(name="bruhat")
@click.argument("u")
@click.argument("w")
@format_option
def perm_bruhat(u: str, w: str, fmt: str) -> None:
    """Is u below w in Bruhat order?"""
    pu = perm_mod.parse_permutation(u)
    pw = perm_mod.parse_permutation(w, pu.n)
    ok = perm_mod.bruhat_leq(pu, pw)
    payload = {"u": pu.one_line(), "w": pw.one_line(), "leq": ok}
    _emit(fmt, payload, "yes" if ok else "no", _verdict_code(ok))


# ---------------------------------------------------------------------------
# Cell commands
# ---------------------------------------------------------------------------


@main.group(name="cells")
def cells_group() -> None:
    """Admissible families and cell classification."""


@cells_group.command(name="enum")
@click.argument("m", type=int)
@click.argument("p", type=int)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@format_option
def cells_enum(m: int, p: int, out: str | None, fmt: str) -> None:
    """One descriptor per nonempty cell."""
    descriptors = cells_mod.admissible_families(m, p)
    payload = {
        "m": m,
        "p": p,
        "count": len(descriptors),
        "cells": [d.to_json() for d in descriptors],
    }
    if out:
        Path(out).write_text(json.dumps(payload["cells"], indent=2))
        _emit(fmt, {"written": out, "count": len(descriptors)},
              f"wrote {len(descriptors)} descriptors to {out}")
    lines = [
        f"{d.permutation.one_line()}  {d.diagram.to_ascii().replace(chr(10), '/')}"
        f"  |family|={len(d.family)}"
        for d in descriptors
    ]
    lines.append(f"total {len(descriptors)}")
    _emit(fmt, payload, "\n".join(lines))


@cells_group.command(name="admissible")
@click.option("--family", "-f", "family_src", required=True)
@format_option
def cells_admissible(family_src: str, fmt: str) -> None:
    """Is a minor family the vanishing set of a nonempty cell?"""
    obj = json.loads(_read_source(family_src))
    family = MinorFamily.from_json(obj)
    verdict = cells_mod.is_admissible(family)
    payload = {
        "admissible": verdict.admissible,
        "descriptor": verdict.descriptor.to_json() if verdict.descriptor else None,
    }
    if verdict.admissible:
        text = "admissible\n" + verdict.descriptor.diagram.to_ascii()
    else:
        text = "not admissible"
    _emit(fmt, payload, text, _verdict_code(verdict.admissible))


@cells_group.command(name="of")
@click.argument("matrix")
@format_option
def cells_of(matrix: str, fmt: str) -> None:
    """Classify a TNN matrix into its cell."""
    descriptor = cells_mod.cell_of(_matrix_arg(matrix))
    text = "\n".join(
        [
            descriptor.diagram.to_ascii(),
            f"permutation {descriptor.permutation.one_line()}",
            f"family {descriptor.family}",
        ]
    )
    _emit(fmt, descriptor.to_json(), text)


@cells_group.command(name="verify")
@click.argument("m", type=int)
@click.argument("p", type=int)
@click.option("--jobs", default=1, show_default=True)
@format_option
def cells_verify(m: int, p: int, jobs: int, fmt: str) -> None:
    """Cross-check all three family routes on every diagram."""
    report = cells_mod.unifying_check(m, p, jobs=jobs)
    text = f"{report.agreements}/{report.total} agree ({report.elapsed:.2f}s)"
    if not report.ok:
        text += "\nmismatches:\n" + json.dumps(list(report.mismatches), indent=2)
    _emit(fmt, report.to_json(), text, _verdict_code(report.ok))


# ---------------------------------------------------------------------------
# Quantum commands
# ---------------------------------------------------------------------------


def _mp_options(fn):
    fn = click.option("--p", "p", type=int, default=2, show_default=True)(fn)
    fn = click.option("--m", "m", type=int, default=2, show_default=True)(fn)
    return fn


@main.group()
def quantum() -> None:
    """Quantum matrix algebra."""


@quantum.command(name="nf")
@click.argument("expr")
@_mp_options
@format_option
def quantum_nf(expr: str, m: int, p: int, fmt: str) -> None:
    """Normal form of an expression in the generators."""
    value = quantum_mod.parse_qpoly(expr, m, p)
    payload = {
        "m": m,
        "p": p,
        "terms": [
            {"word": [list(g) for g in word], "coeff": str(coeff)}
            for word, coeff in sorted(value.terms.items())
        ],
        "normal_form": value.to_str(),
    }
    _emit(fmt, payload, value.to_str())


@quantum.command(name="minor")
@click.option("--rows", required=True)
@click.option("--cols", required=True)
@_mp_options
@format_option
def quantum_minor_cmd(rows: str, cols: str, m: int, p: int, fmt: str) -> None:
    """The signed permutation-sum minor."""
    value = quantum_mod.quantum_minor(m, p, _index_list(rows), _index_list(cols))
    payload = {"normal_form": value.to_str()}
    _emit(fmt, payload, value.to_str())


@quantum.command(name="comm")
@click.argument("f")
@click.argument("g")
@_mp_options
@format_option
def quantum_comm(f: str, g: str, m: int, p: int, fmt: str) -> None:
    """Commutator fg - gf in normal form."""
    value = quantum_mod.commutator(
        quantum_mod.parse_qpoly(f, m, p), quantum_mod.parse_qpoly(g, m, p)
    )
    payload = {"normal_form": value.to_str(), "zero": value.is_zero}
    _emit(fmt, payload, value.to_str())


# ---------------------------------------------------------------------------
# Poisson commands
# ---------------------------------------------------------------------------


@main.group()
def poisson() -> None:
    """Poisson brackets and Hamiltonian flows."""


@poisson.command(name="bracket")
@click.argument("f")
@click.argument("g")
@_mp_options
@format_option
def poisson_bracket(f: str, g: str, m: int, p: int, fmt: str) -> None:
    """The bracket {f, g}."""
    value = poisson_mod.bracket(
        m, p, poisson_mod.parse_poisson(f, m, p), poisson_mod.parse_poisson(g, m, p)
    )
    _emit(fmt, {"bracket": str(value), "zero": value.is_zero}, str(value))


@poisson.command(name="jacobi")
@click.argument("f")
@click.argument("g")
@click.argument("h")
@_mp_options
@format_option
def poisson_jacobi(f: str, g: str, h: str, m: int, p: int, fmt: str) -> None:
    """The Jacobi cyclic sum; exits 0 exactly when it vanishes."""
    value = poisson_mod.jacobi_check(
        m,
        p,
        poisson_mod.parse_poisson(f, m, p),
        poisson_mod.parse_poisson(g, m, p),
        poisson_mod.parse_poisson(h, m, p),
    )
    _emit(
        fmt,
        {"jacobi_sum": str(value), "zero": value.is_zero},
        str(value),
        _verdict_code(value.is_zero),
    )


@poisson.command(name="semiclassical")
@_mp_options
@format_option
def poisson_semiclassical(m: int, p: int, fmt: str) -> None:
    """Compare quantum commutators at q -> 1 with the bracket, all pairs."""
    gens = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    results = []
    for s, u in enumerate(gens):
        for v in gens[s + 1:]:
            ok = poisson_mod.semiclassical_check(m, p, *u, *v)
            results.append({"pair": [list(u), list(v)], "ok": ok})
    all_ok = all(r["ok"] for r in results)
    payload = {"m": m, "p": p, "pairs": results, "ok": all_ok}
    bad = [r for r in results if not r["ok"]]
    text = (
        f"{len(results) - len(bad)}/{len(results)} generator pairs agree"
        + ("" if not bad else "\nfailures: " + json.dumps(bad))
    )
    _emit(fmt, payload, text, _verdict_code(all_ok))


@poisson.command(name="flow")
@click.option("--path", "path_src", required=True)
@click.option("--hamiltonian", "-H", "ham", default="a", show_default=True)
@click.option("--grid", default=100, show_default=True)
@format_option
def poisson_flow(path_src: str, ham: str, grid: int, fmt: str) -> None:
    """Check a closed-form path against the flow equation."""
    obj = json.loads(_read_source(path_src))
    path = poisson_mod.FlowPath.from_json(obj)
    hamiltonian = poisson_mod.parse_poisson(ham, path.m, path.p)
    report = poisson_mod.verify_flow(
        path, hamiltonian, [k / (grid - 1) for k in range(grid)] if grid > 1 else [0.0]
    )
    payload = {
        "symbolic_zero": report.symbolic_zero,
        "max_residual": report.max_residual,
        "ok": report.ok,
    }
    if report.symbolic_zero:
        text = "flow equation holds exactly"
    else:
        text = f"max residual {report.max_residual:.3g}"
    _emit(fmt, payload, text, _verdict_code(report.ok))


# ---------------------------------------------------------------------------
# Batch verification and fixtures
# ---------------------------------------------------------------------------


@main.group()
def verify() -> None:
    """Batch cross-checks."""


def _lindstrom_sweep(m: int, p: int) -> tuple[int, int]:
    checked = mismatched = 0
    from .matrices import iter_minor_indices

    for diagram in diagrams_mod.enumerate_diagrams(m, p):
        net = networks_mod.postnikov_network(diagram)
        pm = networks_mod.path_matrix(net)
        for ix in iter_minor_indices(m, p):
            checked += 1
            if minor(pm, ix) != networks_mod.nonintersecting_count(net, ix):
                mismatched += 1
    return checked, mismatched


@verify.command(name="all")
@click.option("--m", "m", type=int, default=2, show_default=True)
@click.option("--p", "p", type=int, default=2, show_default=True)
@click.option("--jobs", default=1, show_default=True)
@format_option
def verify_all(m: int, p: int, jobs: int, fmt: str) -> None:
    """Run every cross-check suite at one grid size."""
    checks: list[dict[str, Any]] = []

    report = cells_mod.unifying_check(m, p, jobs=jobs)
    checks.append(
        {
            "name": "unifying",
            "ok": report.ok,
            "detail": f"{report.agreements}/{report.total} diagrams agree",
        }
    )

    checked, mismatched = _lindstrom_sweep(m, p)
    checks.append(
        {
            "name": "lindstrom",
            "ok": mismatched == 0,
            "detail": f"{checked - mismatched}/{checked} minors match path counts",
        }
    )

    bad_relations = quantum_mod.defining_relations_hold(m, p)
    checks.append(
        {
            "name": "quantum-relations",
            "ok": not bad_relations,
            "detail": f"{len(bad_relations)} broken generator pairs",
        }
    )
    if (m, p) == (2, 2):
        central = quantum_mod.is_central_2x2_determinant()
        checks.append(
            {
                "name": "quantum-determinant-central",
                "ok": central,
                "detail": "D_q commutes with a,b,c,d" if central else "not central",
            }
        )

    gens = [(i, a) for i in range(1, m + 1) for a in range(1, p + 1)]
    pairs = [
        (u, v) for s, u in enumerate(gens) for v in gens[s + 1:]
    ]
    bad_pairs = [
        (u, v) for u, v in pairs if not poisson_mod.semiclassical_check(m, p, *u, *v)
    ]
    checks.append(
        {
            "name": "semiclassical",
            "ok": not bad_pairs,
            "detail": f"{len(pairs) - len(bad_pairs)}/{len(pairs)} pairs agree",
        }
    )

    for name in fixtures_mod.FLOW_NAMES:
        path = fixtures_mod.load_flow(name)
        hamiltonian = poisson_mod.parse_poisson("a", path.m, path.p)
        flow_report = poisson_mod.verify_flow(path, hamiltonian)
        checks.append(
            {
                "name": f"flow:{name}",
                "ok": flow_report.ok,
                "detail": "exact" if flow_report.symbolic_zero
                else f"max residual {flow_report.max_residual:.3g}",
            }
        )

    passed = sum(1 for c in checks if c["ok"])
    all_ok = passed == len(checks)
    payload = {"m": m, "p": p, "passed": passed, "total": len(checks), "checks": checks}
    lines = [
        f"[{'PASS' if c['ok'] else 'FAIL'}] {c['name']}: {c['detail']}" for c in checks
    ]
    lines.append(f"{passed}/{len(checks)} suites passed")
    _emit(fmt, payload, "\n".join(lines), _verdict_code(all_ok))


@main.command()
@click.option("--out", type=click.Path(file_okay=False), required=True)
@format_option
def fixtures(out: str, fmt: str) -> None:
    """Export the bundled demonstration files."""
    written = fixtures_mod.export_all(out)
    payload = {"written": [str(w) for w in written]}
    _emit(fmt, payload, "\n".join(str(w) for w in written))


if __name__ == "__main__":
    main()
