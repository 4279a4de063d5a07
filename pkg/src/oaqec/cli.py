"""Command-line surface: ingest code descriptions, run analyses, emit reports.

Commands: analyze, table, contradiction, validate, compile.  Codes come
from ``--builtin NAME`` or a JSON file via ``--file PATH``.  Regions are
1-based on the command line and in all output, matching the usual
A_{1,2,3} notation; internally everything is 0-based.

Exit statuses: 0 on success, 1 when a recomputation or residual check
fails (contradiction, validate), 2 on input or parse errors.
"""

from __future__ import annotations

import itertools
import json
import sys
from typing import Optional

import click
import numpy as np

from .algebra import DEFAULT_SEED
from .channel import Bipartition, erasure_channel
from .circuit import (
    BUILTIN_NAMES,
    EncodingCircuit,
    GateSpec,
    WireSpec,
    builtin,
    compile_isometry,
)
from .qec import CodeContext, RecoveryReport, analyze, contradiction_demo
from .tensor import DEFAULT_TOL

TABLE_FIELDS = ("region", "size_m", "size_m_commutant", "correctable", "cr_holds",
                "closure_dim")
ANALYZE_FIELDS = TABLE_FIELDS + ("commutant_dim", "is_algebra",
                                 "commutant_correctable", "blocks", "labels")

_TOP_KEYS = {"name", "wires", "gates"}
_WIRE_KEYS = {"kind"}
_GATE_KEYS = {"type", "controls", "target"}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _fmt_float(x: float) -> str:
    return format(float(x), ".6g")


def _region_str(region) -> str:
    return ",".join(str(q) for q in region)


def parse_code_file(path: str) -> EncodingCircuit:
    """Load a JSON code description; unknown fields are rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"{path}: {exc}")
    if not isinstance(data, dict):
        raise click.UsageError(f"{path}: top level must be an object")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise click.UsageError(f"{path}: unknown field(s) {sorted(extra)}")
    for key in ("wires", "gates"):
        if key not in data or not isinstance(data[key], list):
            raise click.UsageError(f"{path}: missing or non-list field '{key}'")

    wires = []
    for i, w in enumerate(data["wires"]):
        if not isinstance(w, dict) or set(w) - _WIRE_KEYS or "kind" not in w:
            raise click.UsageError(f"{path}: wire {i}: expected an object with a 'kind' field")
        try:
            wires.append(WireSpec(w["kind"]))
        except ValueError as exc:
            raise click.UsageError(f"{path}: wire {i}: {exc}")

    gates = []
    for i, g in enumerate(data["gates"]):
        if not isinstance(g, dict):
            raise click.UsageError(f"{path}: gate {i}: expected an object")
        extra = set(g) - _GATE_KEYS
        if extra:
            raise click.UsageError(f"{path}: gate {i}: unknown field(s) {sorted(extra)}")
        if "type" not in g or "target" not in g:
            raise click.UsageError(f"{path}: gate {i}: 'type' and 'target' are required")
        controls = g.get("controls", [])
        if not isinstance(controls, list):
            raise click.UsageError(f"{path}: gate {i}: 'controls' must be a list")
        try:
            gates.append(GateSpec(g["type"], tuple(int(c) for c in controls),
                                  int(g["target"])))
        except (TypeError, ValueError) as exc:
            raise click.UsageError(f"{path}: gate {i}: {exc}")

    name = data.get("name", "code")
    try:
        return EncodingCircuit(str(name), tuple(wires), tuple(gates))
    except ValueError as exc:
        raise click.UsageError(f"{path}: {exc}")


def _load_circuit(builtin_name: Optional[str], file_path: Optional[str]) -> EncodingCircuit:
    if (builtin_name is None) == (file_path is None):
        raise click.UsageError("provide exactly one of --builtin or --file")
    if builtin_name is not None:
        try:
            return builtin(builtin_name)
        except ValueError as exc:
            raise click.UsageError(str(exc))
    return parse_code_file(file_path)


def _parse_region(text: str, n: int) -> tuple[int, ...]:
    try:
        one_based = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"--region must be comma-separated integers, got {text!r}")
    if any(q < 1 or q > n for q in one_based):
        raise click.UsageError(f"--region indices must lie in 1..{n}")
    try:
        Bipartition(n, tuple(q - 1 for q in one_based))
    except ValueError as exc:
        raise click.UsageError(f"--region: {exc}")
    return tuple(q - 1 for q in one_based)


def _report_row(region0: tuple[int, ...], rep: RecoveryReport) -> dict:
    """Serialize a RecoveryReport; region comes out 1-based and sorted."""
    blocks = [[a, b] for a, b in rep.blocks.blocks] if rep.blocks is not None else None
    labels = sorted(rep.labels) if rep.labels is not None else None
    return {
        "region": [q + 1 for q in sorted(region0)],
        "size_m": rep.logical_span_dim,
        "size_m_commutant": rep.complement_span_dim,
        "correctable": rep.correctable,
        "cr_holds": rep.cr_holds,
        "closure_dim": rep.closure_dim,
        "commutant_dim": rep.commutant_dim,
        "is_algebra": rep.is_algebra,
        "commutant_correctable": rep.commutant_correctable_from_complement,
        "blocks": blocks,
        "labels": list(labels) if labels is not None else None,
    }


def _cell_text(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return ",".join(f"({a},{b})" for a, b in value)
        return _region_str(value) if all(isinstance(v, int) for v in value) else " ".join(value)
    return str(value)


def _cell_csv(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return canonical_json(value)
        return _region_str(value) if all(isinstance(v, int) for v in value) else " ".join(value)
    return str(value)


def _emit_rows(rows: list[dict], fields: tuple[str, ...], fmt: str) -> None:
    if fmt == "json":
        for row in rows:
            click.echo(canonical_json({k: row[k] for k in fields}))
        return
    if fmt == "csv":
        import csv as _csv
        import io as _io
        buf = _io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_cell_csv(row[k]) for k in fields])
        click.echo(buf.getvalue(), nl=False)
        return
    cells = [[_cell_text(row[k]) for k in fields] for row in rows]
    widths = [max(len(fields[i]), *(len(r[i]) for r in cells)) if cells else len(fields[i])
              for i in range(len(fields))]
    click.echo("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip())
    for r in cells:
        click.echo("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


_source_options = [
    click.option("--builtin", "builtin_name", type=click.Choice(BUILTIN_NAMES),
                 default=None, help="Use a bundled example code."),
    click.option("--file", "file_path",
                 type=click.Path(exists=True, dir_okay=False), default=None,
                 help="Load a JSON code description."),
]


def _with_source(f):
    for opt in reversed(_source_options):
        f = opt(f)
    return f


@click.group()
@click.version_option(package_name="oaqec")
def main():
    """Decide complementary recovery for small encoded qubit codes."""


@main.command("analyze")
@_with_source
@click.option("--region", "region_text", required=True,
              help="Subregion A as 1-based qubit indices, e.g. 1,3.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
def cmd_analyze(builtin_name, file_path, region_text, fmt, tol, seed):
    """Analyze one bipartition: algebra, commutant, correctability, recovery."""
    circuit = _load_circuit(builtin_name, file_path)
    region = _parse_region(region_text, circuit.n)
    iso = compile_isometry(circuit)
    ctx = CodeContext(iso, Bipartition(circuit.n, region))
    rep = analyze(ctx, tol, seed)
    row = _report_row(region, rep)
    if fmt == "text":
        width = max(len(k) for k in ANALYZE_FIELDS)
        for key in ANALYZE_FIELDS:
            click.echo(f"{key.ljust(width)}  {_cell_text(row[key])}")
    else:
        _emit_rows([row], ANALYZE_FIELDS, fmt)


@main.command("table")
@_with_source
@click.option("--size", type=int, required=True, help="Size of subregion A.")
@click.option("--all", "enumerate_all", is_flag=True,
              help="Enumerate every subset, not only those containing qubit 1.")
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text", show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
def cmd_table(builtin_name, file_path, size, enumerate_all, fmt, tol, seed):
    """Analyze every size-K bipartition and print one row per region."""
    circuit = _load_circuit(builtin_name, file_path)
    n = circuit.n
    if not 1 <= size <= n - 1:
        raise click.UsageError(f"--size must lie in 1..{n - 1}")
    iso = compile_isometry(circuit)
    rows = []
    for region in itertools.combinations(range(n), size):
        if not enumerate_all and 0 not in region:
            continue
        ctx = CodeContext(iso, Bipartition(n, region))
        rows.append(_report_row(region, analyze(ctx, tol, seed)))
    rows.sort(key=lambda r: r["region"])
    _emit_rows(rows, TABLE_FIELDS, fmt)


@main.command("contradiction")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def cmd_contradiction(tol):
    """Recompute the containment-vs-commutator gap on the example-e code.

    Exits 0 only when every recomputed value matches the expected story.
    """
    rep = contradiction_demo(tol)

    def labels(lbls):
        return " ".join(sorted(lbls)) if lbls is not None else "(unlabeled)"

    click.echo("adjacent split A=1,2:")
    click.echo(f"  M1 labels: {labels(rep.m1_labels)}")
    click.echo(f"  M1 commutant labels: {labels(rep.m1_commutant_labels)}")
    click.echo(f"  containment correctable: {_cell_text(rep.m1_containment_correctable)}")
    click.echo(f"  corrected correctable: {_cell_text(rep.m1_correctable)}")
    click.echo(f"  corrected complementary recovery: {_cell_text(rep.m1_cr)}")
    click.echo("nonadjacent split A=1,3:")
    click.echo(f"  M2 labels: {labels(rep.m2_labels)}")
    click.echo(f"  M2 commutant labels: {labels(rep.m2_commutant_labels)}")
    click.echo(f"  containment correctable: {_cell_text(rep.m2_containment_correctable)}")
    click.echo(f"  corrected correctable: {_cell_text(rep.m2_correctable)}")
    click.echo("  witness: complement operator (I-Z) (x) Z reaches logical Z: "
               + _cell_text(rep.witness_matches_z))
    click.echo(f"  witness commutator norm with X: {_fmt_float(rep.witness_commutator_norm)}")
    click.echo("N = span{Z, I} on A=1,3:")
    click.echo(f"  old-style complementary recovery: {_cell_text(rep.n_containment_cr)}")
    click.echo(f"  corrected correctable from erasing complement: {_cell_text(rep.n_correctable)}")
    click.echo(f"  corrected complementary recovery: {_cell_text(rep.n_cr)}")

    checks = (
        ("M1 labels are {I,Z}", set(rep.m1_labels or ()) == {"I", "Z"}),
        ("M1 commutant labels are {I,Z}", set(rep.m1_commutant_labels or ()) == {"I", "Z"}),
        ("M2 labels are {I,X,Y,Z}", set(rep.m2_labels or ()) == {"I", "X", "Y", "Z"}),
        ("M2 commutant labels are {I}", set(rep.m2_commutant_labels or ()) == {"I"}),
        ("M1 passes containment", rep.m1_containment_correctable),
        ("M2 passes containment", rep.m2_containment_correctable),
        ("M1 corrected-correctable", rep.m1_correctable),
        ("M2 fails corrected correctability", not rep.m2_correctable),
        ("witness reaches logical Z", rep.witness_matches_z),
        ("witness commutator norm exceeds tol", rep.witness_commutator_norm > tol),
        ("M1 corrected CR holds", rep.m1_cr),
        ("M2 passes old-style CR", rep.m2_containment_cr),
        ("N passes old-style CR", rep.n_containment_cr),
        ("N fails corrected CR", not rep.n_cr),
    )
    failures = [name for name, ok in checks if not ok]
    if failures:
        click.echo("MISMATCHES:")
        for name in failures:
            click.echo(f"  expected: {name}")
        sys.exit(1)
    click.echo("verdict: containment certifies both M2 and N=span{Z,I}; "
               "the commutator condition rejects both")
    click.echo("all recomputations match: yes")


@main.command("validate")
@_with_source
@click.option("--region", "region_text", default=None,
              help="Bipartition for the erasure checks (default: first half).")
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
def cmd_validate(builtin_name, file_path, region_text, tol):
    """Check isometry, projection, and Kraus-completeness residuals."""
    circuit = _load_circuit(builtin_name, file_path)
    n = circuit.n
    if region_text is None:
        region = tuple(range(max(1, n // 2)))
    else:
        region = _parse_region(region_text, n)
    iso = compile_isometry(circuit)
    v = iso.matrix
    p = iso.projection
    b = Bipartition(n, region)

    def completeness(side):
        ch = erasure_channel(b, side)
        stack = np.stack(ch.kraus)
        acc = np.einsum("kda,kdb->ab", stack.conj(), stack)
        return float(np.linalg.norm(acc - np.eye(ch.dim)))

    checks = (
        ("isometry |V^dag V - I|", float(np.linalg.norm(v.conj().T @ v - np.eye(2**iso.k)))),
        ("projection |P^2 - P|", float(np.linalg.norm(p @ p - p))),
        ("erasure of complement, |sum E^dag E - I|", completeness("Abar")),
        ("erasure of region, |sum E^dag E - I|", completeness("A")),
    )
    failed = False
    for name, residual in checks:
        ok = residual <= tol
        failed = failed or not ok
        click.echo(f"{name}: {_fmt_float(residual)} {'ok' if ok else 'FAIL'}")
    if failed:
        sys.exit(1)


@main.command("compile")
@_with_source
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
def cmd_compile(builtin_name, file_path, fmt):
    """Compile a circuit and print the encoding isometry."""
    circuit = _load_circuit(builtin_name, file_path)
    iso = compile_isometry(circuit)
    v = iso.matrix
    if fmt == "json":
        payload = {
            "name": circuit.name,
            "n": iso.n,
            "k": iso.k,
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in v],
        }
        click.echo(canonical_json(payload))
        return
    click.echo(f"name: {circuit.name}")
    click.echo(f"physical qubits: {iso.n}")
    click.echo(f"logical qubits: {iso.k}")
    click.echo(f"shape: {v.shape[0]}x{v.shape[1]}")
    for row in v:
        click.echo("  ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in row))


if __name__ == "__main__":
    main()
