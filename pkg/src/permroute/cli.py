"""Command-line interface.

Exit codes are stable across commands: 0 for success / a "yes" decision,
1 for a "no" decision (or a failed verification), 2 for usage, format,
or cap errors. All output is deterministic: identical input bytes give
identical output bytes.
"""

from __future__ import annotations

import csv
import functools
import sys
from pathlib import Path

import click

from . import __version__
from .circuits import (
    DEFAULT_MAX_ROUTINGS,
    cycle_count_distribution,
    max_routing,
)
from .cnf import (
    DEFAULT_MAX_COUNT_VARIABLES,
    count_satisfying,
    normalize_3sat,
    parse_dimacs,
)
from .errors import GadgetVerificationError, PermRouteError
from .formats import (
    SCHEMA_VERSION,
    dumps_circuit,
    dumps_ids_instance,
    dumps_json,
    loads_circuit,
    loads_ids_instance,
)
from .gadgets import Literal, verify_gadget_tables
from .perms import ids_element
from .plots import circuit_figure, cycle_histogram_figure, save_figure
from .solvers import (
    DEFAULT_MAX_GENERATORS,
    count_elements_at_distance,
    distance_to_ids_subgroup,
)
from .transforms import circuit_to_ids, ids_to_circuit, sat_to_circuit, valency2_classes

MAX_SUBSETS_DEFAULT = 1 << DEFAULT_MAX_GENERATORS


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PermRouteError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _generator_cap(max_subsets: int) -> int:
    # the solver cap is on t; 2^t subsets must stay within max_subsets
    return max(0, max_subsets.bit_length() - 1)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(2)


@click.group()
@click.version_option(version=__version__, prog_name="permroute")
def main():
    """Subgroup distance, circuit routings, and the reductions between them."""


# --------------------------------------------------------------- solve


@main.group()
def solve():
    """Exact brute-force solvers."""


@solve.command("distance")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", "k_override", type=int, default=None, help="Override the instance's bound K.")
@click.option("--decide", is_flag=True, help="Exit 1 when the distance exceeds K.")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable report.")
@click.option("--max-subsets", type=int, default=MAX_SUBSETS_DEFAULT, show_default=True,
              help="Cap on the number of generator subsets enumerated.")
@_guard
def solve_distance(instance_path, k_override, decide, as_json, max_subsets):
    """Minimum Cayley distance from pi to the generated subgroup."""
    instance = loads_ids_instance(_read(instance_path), k_override)
    distance, subset = distance_to_ids_subgroup(instance, _generator_cap(max_subsets))
    witness = ids_element(instance.ids, subset)
    decision = distance <= instance.bound_k
    if as_json:
        click.echo(
            dumps_json(
                {
                    "schema_version": SCHEMA_VERSION,
                    "distance": distance,
                    "witness_subset": list(subset),
                    "witness": list(witness.image),
                    "k": instance.bound_k,
                    "decision": decision,
                }
            ),
            nl=False,
        )
    else:
        click.echo(f"distance = {distance}")
        click.echo(f"witness subset = {{{', '.join(map(str, subset))}}}")
        click.echo(f"witness eta = {list(witness.image)}")
        click.echo(f"decision (distance <= {instance.bound_k}): {'yes' if decision else 'no'}")
    if decide and not decision:
        sys.exit(1)


@solve.command("routing")
@click.argument("circuit_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, default=None, help="Cycle target for the decision.")
@click.option("--decide", is_flag=True, help="Exit 1 when no routing reaches K cycles.")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable report.")
@click.option("--max-routings", type=int, default=DEFAULT_MAX_ROUTINGS, show_default=True,
              help="Cap on the number of respecting routings enumerated.")
@_guard
def solve_routing(circuit_path, k, decide, as_json, max_routings):
    """Maximum cycle count over respecting routings."""
    circuit, polarization = loads_circuit(_read(circuit_path))
    result = max_routing(circuit, polarization, max_routings)
    decision = None if k is None else result.max_cycles >= k
    if as_json:
        click.echo(
            dumps_json(
                {
                    "schema_version": SCHEMA_VERSION,
                    "max_cycles": result.max_cycles,
                    "optimal_count": result.optimal_count,
                    "witness": [list(p.image) for p in result.witness.perms],
                    "num_edges": circuit.num_edges,
                    "k": k,
                    "decision": decision,
                }
            ),
            nl=False,
        )
    else:
        click.echo(f"max cycles = {result.max_cycles}")
        click.echo(f"optimal routings = {result.optimal_count}")
        click.echo(
            "witness routing = "
            + "; ".join(
                f"class {cid}: {list(p.image)}"
                for cid, p in enumerate(result.witness.perms, start=1)
            )
        )
        if decision is not None:
            click.echo(f"decision (max >= {k}): {'yes' if decision else 'no'}")
    if decide:
        if k is None:
            click.echo("error: --decide needs --k", err=True)
            sys.exit(2)
        if not decision:
            sys.exit(1)


# --------------------------------------------------------------- reduce


@main.group(name="reduce")
def reduce_group():
    """The constructive transformations, with manifests."""


def _write_outputs(out_path: str, manifest_path: str | None, payload: str, manifest: dict):
    out = Path(out_path)
    out.write_text(payload)
    mpath = Path(manifest_path) if manifest_path else out.with_suffix(out.suffix + ".manifest.json")
    mpath.write_text(dumps_json(manifest))
    click.echo(f"wrote {out}")
    click.echo(f"wrote {mpath}")


@reduce_group.command("sat2circuit")
@click.argument("cnf_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False), default=None,
              help="Manifest path (default: OUT.manifest.json beside the output).")
@_guard
def reduce_sat2circuit(cnf_path, out_path, manifest_path):
    """3-SAT formula to polarized circuit; the manifest records M and the maps."""
    formula = normalize_3sat(parse_dimacs(_read(cnf_path)))
    if not formula.clauses:
        click.echo("error: formula has no clauses after normalization; the circuit would be empty", err=True)
        sys.exit(2)
    sci = sat_to_circuit(formula)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": "sat2circuit",
        "b": sci.count_b,
        "g": sci.count_g,
        "i": sci.count_i,
        "e": sci.count_e,
        "m": sci.target_m,
        "num_variables": sci.split.num_variables,
        "num_vertices": len(sci.circuit.vertices),
        "num_edges": sci.circuit.num_edges,
        "width": sci.polarization.width,
        "classes": [
            {
                "class": cid,
                "variable": sci.class_to_variable[cid - 1],
                "origin_variable": sci.split.origin[sci.class_to_variable[cid - 1] - 1][0],
                "occurrence": sci.split.origin[sci.class_to_variable[cid - 1] - 1][1],
            }
            for cid in range(1, len(sci.polarization.classes) + 1)
        ],
    }
    _write_outputs(out_path, manifest_path, dumps_circuit(sci.circuit, sci.polarization), manifest)
    click.echo(f"M = {sci.target_m} (b={sci.count_b} g={sci.count_g} i={sci.count_i} e={sci.count_e})")


@reduce_group.command("circuit2ids")
@click.argument("circuit_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--k", type=int, required=True, help="Cycle target K to translate.")
@click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False), default=None)
@_guard
def reduce_circuit2ids(circuit_path, out_path, k, manifest_path):
    """Valency-2 circuit to a distance instance; K becomes bound #E - K."""
    circuit, polarization = loads_circuit(_read(circuit_path))
    instance = circuit_to_ids(circuit, polarization, k)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": "circuit2ids",
        "n": instance.ids.n,
        "k_routing": k,
        "bound_k": instance.bound_k,
        "width": instance.ids.width,
        "generator_classes": list(valency2_classes(circuit, polarization)),
    }
    _write_outputs(out_path, manifest_path, dumps_ids_instance(instance), manifest)
    click.echo(f"bound K = {instance.bound_k} on {instance.ids.n} points")


@reduce_group.command("ids2circuit")
@click.argument("instance_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False), default=None)
@_guard
def reduce_ids2circuit(instance_path, out_path, manifest_path):
    """Distance instance to circuit; the bound becomes the target n - bound."""
    instance = loads_ids_instance(_read(instance_path))
    ic = ids_to_circuit(instance)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": "ids2circuit",
        "points": instance.ids.n,
        "bound_k": instance.bound_k,
        "k_routing": ic.k_routing,
        "num_vertices": len(ic.circuit.vertices),
        "num_edges": ic.circuit.num_edges,
        "generator_class": list(ic.generator_class),
    }
    _write_outputs(out_path, manifest_path, dumps_circuit(ic.circuit, ic.polarization), manifest)
    click.echo(f"routing target K = {ic.k_routing} (cycles counted over {instance.ids.n} points)")


# --------------------------------------------------------------- check


@main.group()
def check():
    """End-to-end consistency checks."""


@check.command("parsimony")
@click.argument("cnf_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
@click.option("--max-vars", type=int, default=DEFAULT_MAX_COUNT_VARIABLES, show_default=True)
@click.option("--max-routings", type=int, default=DEFAULT_MAX_ROUTINGS, show_default=True)
@click.option("--max-subsets", type=int, default=MAX_SUBSETS_DEFAULT, show_default=True)
@click.option("--report-dir", type=click.Path(file_okay=False), default=None,
              help="Write CSV tables and figures of the run into this directory.")
@_guard
def check_parsimony(cnf_path, as_json, max_vars, max_routings, max_subsets, report_dir):
    """Count models three ways: formula, circuit routings, subgroup elements.

    Exits 0 iff all three counts agree (they must, when the reduction is
    correct); unsatisfiable inputs agree at 0 = 0 = 0.
    """
    formula = normalize_3sat(parse_dimacs(_read(cnf_path)))
    sci = sat_to_circuit(formula)
    split_cnf = sci.split.cnf()
    sat_count = count_satisfying(split_cnf, max_vars)

    if not sci.circuit.vertices:
        # no clauses at all: the empty conjunction is satisfied by the
        # single empty assignment, by the empty routing, and by the
        # identity alone
        routing_count = 1 if sci.target_m == 0 else 0
        eta_count = 1
        max_cycles = 0
        distribution: dict[int, int] = {0: 1}
        instance_bound = 0
    else:
        distribution = cycle_count_distribution(sci.circuit, sci.polarization, max_routings)
        routing_count = distribution.get(sci.target_m, 0)
        max_cycles = max(distribution)
        instance = circuit_to_ids(sci.circuit, sci.polarization, sci.target_m)
        instance_bound = instance.bound_k
        eta_count = count_elements_at_distance(instance, instance.bound_k, _generator_cap(max_subsets))

    ok = sat_count == routing_count == eta_count
    report = {
        "schema_version": SCHEMA_VERSION,
        "b": sci.count_b,
        "g": sci.count_g,
        "i": sci.count_i,
        "e": sci.count_e,
        "m": sci.target_m,
        "num_variables": sci.split.num_variables,
        "num_edges": sci.circuit.num_edges,
        "max_cycles": max_cycles,
        "satisfiable": max_cycles == sci.target_m,
        "satisfying_assignments": sat_count,
        "routings_at_m": routing_count,
        "elements_at_translated_distance": eta_count,
        "translated_bound": instance_bound,
        "parsimony_ok": ok,
    }
    if as_json:
        click.echo(dumps_json(report), nl=False)
    else:
        click.echo(f"M = {sci.target_m} (b={sci.count_b} g={sci.count_g} i={sci.count_i} e={sci.count_e})")
        if max_cycles == sci.target_m:
            click.echo(f"max cycles = {max_cycles} = M: satisfiable")
        else:
            click.echo(f"max cycles = {max_cycles} < M = {sci.target_m}: unsatisfiable")
        click.echo(f"satisfying assignments          = {sat_count}")
        click.echo(f"routings with exactly M cycles  = {routing_count}")
        click.echo(f"group elements at distance {instance_bound:>3} = {eta_count}")
        click.echo(f"parsimony: {'OK' if ok else 'MISMATCH'}")

    if report_dir is not None:
        directory = Path(report_dir)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "parsimony.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["metric", "value"])
            for key in sorted(report):
                if key != "schema_version":
                    writer.writerow([key, report[key]])
        with open(directory / "cycle_distribution.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["cycles", "routings"])
            for cycles in sorted(distribution):
                writer.writerow([cycles, distribution[cycles]])
        save_figure(
            cycle_histogram_figure(distribution, sci.target_m, title="Respecting routings by cycle count"),
            directory / "cycles.png",
        )
        if sci.circuit.vertices:
            labels = {
                cid: f"y{sci.class_to_variable[cid - 1]}"
                for cid in range(1, len(sci.polarization.classes) + 1)
            }
            save_figure(
                circuit_figure(sci.circuit, sci.polarization, title="Reduced circuit", class_labels=labels),
                directory / "circuit.png",
            )
        click.echo(f"report written to {directory}")

    if not ok:
        sys.exit(1)


# --------------------------------------------------------------- verify


@main.group()
def verify():
    """Self-checks against the required tables."""


@verify.command("gadgets")
@click.option("--json", "as_json", is_flag=True)
@click.option("--report-dir", type=click.Path(file_okay=False), default=None,
              help="Write the truth-table CSV and gadget drawings into this directory.")
@_guard
def verify_gadgets(as_json, report_dir):
    """Exhaustively route every gadget and compare with its cycle table."""
    try:
        report = verify_gadget_tables()
        failure = None
    except GadgetVerificationError as exc:
        report = exc.report
        failure = str(exc)

    rows = [
        {
            "gadget": r.gadget,
            "assignment": list(r.assignment),
            "expected": r.expected,
            "actual": r.actual,
            "ok": r.ok,
        }
        for r in report.rows
    ]
    if as_json:
        click.echo(
            dumps_json({"schema_version": SCHEMA_VERSION, "ok": report.ok, "rows": rows}),
            nl=False,
        )
    else:
        for r in report.rows:
            values = " ".join(map(str, r.assignment))
            status = "ok" if r.ok else "MISMATCH"
            click.echo(f"{r.gadget}  ({values})  expected={r.expected}  actual={r.actual}  {status}")
        click.echo(f"{len(report.rows)} rows checked, {len(report.mismatches)} mismatches")
        if failure:
            click.echo(f"verification failed: {failure}", err=True)

    if report_dir is not None:
        directory = Path(report_dir)
        directory.mkdir(parents=True, exist_ok=True)
        with open(directory / "gadget_tables.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["gadget", "assignment", "expected", "actual", "ok"])
            for r in report.rows:
                writer.writerow(
                    [r.gadget, " ".join(map(str, r.assignment)), r.expected, r.actual, r.ok]
                )
        from .gadgets import DEFAULT_BUILDERS, SLOT_COUNTS

        for name, build in DEFAULT_BUILDERS.items():
            fragment = build(*(Literal(v) for v in range(1, SLOT_COUNTS[name] + 1)))
            labels = {
                fragment.class_of_literal[slot]: str(lit)
                for slot, lit in enumerate(fragment.literals)
            }
            save_figure(
                circuit_figure(
                    fragment.circuit,
                    fragment.polarization,
                    title=f"{name} gadget",
                    class_labels=labels,
                ),
                directory / f"gadget_{name}.png",
            )
        click.echo(f"report written to {directory}")

    if not report.ok:
        sys.exit(1)


# --------------------------------------------------------------- count


@main.group()
def count():
    """Exact counting."""


@count.command("sat")
@click.argument("cnf_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
@click.option("--max-vars", type=int, default=DEFAULT_MAX_COUNT_VARIABLES, show_default=True)
@_guard
def count_sat(cnf_path, as_json, max_vars):
    """Brute-force model count of a DIMACS cnf file."""
    formula = parse_dimacs(_read(cnf_path))
    models = count_satisfying(formula, max_vars)
    if as_json:
        click.echo(
            dumps_json(
                {
                    "schema_version": SCHEMA_VERSION,
                    "count": models,
                    "num_variables": formula.num_variables,
                    "num_clauses": len(formula.clauses),
                }
            ),
            nl=False,
        )
    else:
        click.echo(str(models))


if __name__ == "__main__":
    main()
