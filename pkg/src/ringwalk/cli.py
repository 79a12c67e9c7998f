"""Command line front end.

One subcommand per pipeline stage.  Reports go to stdout as a single
JSON object (schema version = package version) unless --csv asks for
bare rows.  Exit codes: 0 verified/realized, 2 refuted/empty,
3 undecided, 1 usage or input error.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from pathlib import Path

import click

from . import __version__
from .classify import (DEFAULT_BUDGET, EMPTY, REALIZED, UNDECIDED, SearchSpec,
                       TableMismatch, run_table, search)
from .codes import LinearCode, dual_code, format_matrix, parse_matrix
from .families import teichmuller_params, trace_code
from .graphs import (is_swrg, ssum_set_check, syndrome_graph, unit_expansion,
                     verify_spectrum)
from .rings import ring_from_spec
from .spectral import (exceptional_scan, feasible_triples, macwilliams_hom,
                       predicted_spectrum, weight_distribution)

OK, REFUTED, OPEN = 0, 2, 3


def _load_matrix(ring, source: str):
    """A file path, or the matrix itself with ';' between rows."""
    text = source
    if ";" not in source and "\n" not in source:
        path = Path(source)
        if not path.is_file():
            raise ValueError(f"matrix file {source!r} not found")
        text = path.read_text()
    return parse_matrix(ring, text), hashlib.sha256(text.encode()).hexdigest()


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _emit(command: str, inputs: dict, verdicts: dict, t0: float,
          csv_rows=None, csv: bool = False):
    if csv and csv_rows is not None:
        for row in csv_rows:
            click.echo(",".join(str(x) for x in row))
        return
    click.echo(json.dumps({
        "command": command,
        "version": __version__,
        "inputs": inputs,
        "verdicts": verdicts,
        "timings": {"elapsed": round(time.time() - t0, 3)},
    }))


ring_option = click.option("--ring", "ring_spec", default="z4",
                           show_default=True, help="z4 | f2u | zpm:p,m | gr4:r")
matrix_option = click.option("--matrix", required=True,
                             help="matrix file, or inline rows joined by ';'")
csv_option = click.option("--csv", "csv_", is_flag=True,
                          help="bare CSV rows instead of the JSON report")


@click.group()
@click.version_option(__version__)
def cli():
    """Three-weight codes over chain rings and their walk-regular graphs."""


@cli.command()
@ring_option
@matrix_option
@csv_option
def weights(ring_spec, matrix, csv_):
    """Homogeneous weight distribution of the row span."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    code = LinearCode(ring, M)
    wd = weight_distribution(code)
    _emit("weights", {"ring": ring.spec, "matrix_sha256": digest},
          {"n": code.n, "size": code.size, "shape": list(code.shape),
           "wd": {str(w): a for w, a in wd.entries}},
          t0, csv_rows=[("weight", "count"), *wd.entries], csv=csv_)


@cli.command()
@ring_option
@matrix_option
@click.option("--budget", default=1 << 24, show_default=True,
              help="dual enumeration budget")
@csv_option
def dual(ring_spec, matrix, budget, csv_):
    """Weight distribution of the dual code, by enumeration."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    dc = dual_code(LinearCode(ring, M), budget=budget)
    wd = weight_distribution(dc)
    _emit("dual", {"ring": ring.spec, "matrix_sha256": digest},
          {"n": dc.n, "size": dc.size, "shape": list(dc.shape),
           "wd": {str(w): a for w, a in wd.entries}},
          t0, csv_rows=[("weight", "count"), *wd.entries], csv=csv_)


@cli.command()
@ring_option
@matrix_option
@csv_option
def macwilliams(ring_spec, matrix, csv_):
    """Binary-transform dual distribution (Gray side, length 2n)."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    wd = weight_distribution(LinearCode(ring, M))
    out = macwilliams_hom(wd)
    _emit("macwilliams", {"ring": ring.spec, "matrix_sha256": digest},
          {"binary_length": 2 * wd.n, "dual_size": out.size,
           "B": {str(j): b for j, b in out.entries}},
          t0, csv_rows=[("j", "B_j"), *out.entries], csv=csv_)


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--sum-exactly", type=int, default=None,
              help="enumerate triples of this weight sum only")
@click.option("--classes", default=None, help="comma list of 2k1+k2 values")
@click.option("--s-filter", default="mod3", show_default=True,
              type=click.Choice(["mod3", "3n"]))
@click.option("--macwilliams-rule", is_flag=True,
              help="also require an integral non-negative binary transform")
@csv_option
def feasible(n, sum_exactly, classes, s_filter, macwilliams_rule, csv_):
    """Weight triples passing the arithmetic sieve."""
    t0 = time.time()
    cls = _ints(classes) if classes else None
    triples = feasible_triples(n, cls, s_filter=s_filter,
                               sum_exactly=sum_exactly,
                               macwilliams_rule=macwilliams_rule)
    rows = [("n", "class", "w1", "w2", "w3", "A1", "A2", "A3", "B3", "S", "b")]
    for tr in triples:
        a = tr.counts or (None, None, None)
        rows.append((tr.n, tr.klass, *tr.weights, *a, tr.b3, tr.s, tr.b))
    _emit("feasible",
          {"n": n, "sum_exactly": sum_exactly, "classes": classes,
           "s_filter": s_filter, "macwilliams_rule": macwilliams_rule},
          {"count": len(triples), "triples": [tr.record() for tr in triples]},
          t0, csv_rows=rows, csv=csv_)


@cli.command("scan-exceptional")
@click.option("--n-max", default=50, show_default=True)
@csv_option
def scan_exceptional(n_max, csv_):
    """S = 3n solutions of the moment equations with w2 != n."""
    t0 = time.time()
    hits = exceptional_scan(n_max)
    rows = [("n", "w1", "w2", "w3", "y", "A1", "A2", "A3", "B3", "macwilliams_ok")]
    for h in hits:
        rows.append((h.n, *h.weights, h.y, *h.counts, h.b3, h.macwilliams_ok))
    _emit("scan-exceptional", {"n_max": n_max},
          {"count": len(hits), "hits": [h.record() for h in hits]},
          t0, csv_rows=rows, csv=csv_)


@cli.command()
@ring_option
@matrix_option
@click.option("--b", default=0, show_default=True, help="loops per vertex")
@click.option("--out", default=None, type=click.Path(),
              help="write an edge-list export (JSON header + `i j` lines)")
def graph(ring_spec, matrix, b, out):
    """Syndrome graph of a check matrix: vertices, degree, projectivity."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    g = syndrome_graph(M, ring, b)
    if out:
        Path(out).write_text(g.export())
    _emit("graph", {"ring": ring.spec, "matrix_sha256": digest, "b": b},
          {"vertices": g.n_vertices, "degree": g.degree,
           "projective": g.projective, "warning": g.warning,
           "export": out}, t0)


@cli.command()
@ring_option
@matrix_option
@click.option("--s", default=3, show_default=True)
@click.option("--b", default=0, show_default=True)
@click.option("--threads", default=1, show_default=True)
def swrg(ring_spec, matrix, s, b, threads):
    """Certify or refute s-walk-regularity of the syndrome graph."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    g = syndrome_graph(M, ring, b)
    cert = is_swrg(g, s, threads)
    _emit("swrg", {"ring": ring.spec, "matrix_sha256": digest, "s": s, "b": b},
          {"vertices": g.n_vertices, "degree": g.degree, **cert.record()}, t0)
    sys.exit(OK if cert.ok else REFUTED)


@cli.command()
@ring_option
@matrix_option
@click.option("--s", default=3, show_default=True)
@click.option("--include-zero", default=0, show_default=True,
              help="adjoin 0 to omega with this multiplicity")
def ssum(ring_spec, matrix, s, include_zero):
    """s-fold sum-set two-valuedness of the column set (unit-expanded)."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    omega = unit_expansion(ring, M.T)
    res = ssum_set_check(ring, omega, s, include_zero)
    _emit("ssum", {"ring": ring.spec, "matrix_sha256": digest, "s": s,
                   "include_zero": include_zero},
          {"omega_size": len(omega), **res.record()}, t0)
    sys.exit(OK if res.ok else REFUTED)


@cli.command()
@ring_option
@matrix_option
@click.option("--b", default=0, show_default=True)
@click.option("--threads", default=1, show_default=True)
@csv_option
def spectrum(ring_spec, matrix, b, threads, csv_):
    """Certify the weight-predicted spectrum of the syndrome graph."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    M, digest = _load_matrix(ring, matrix)
    wd = weight_distribution(LinearCode(ring, M))
    g = syndrome_graph(M, ring, b)
    cert = verify_spectrum(g, predicted_spectrum(wd, b), threads)
    _emit("spectrum", {"ring": ring.spec, "matrix_sha256": digest, "b": b},
          {"vertices": g.n_vertices, **cert.record()},
          t0, csv_rows=[("eigenvalue", "multiplicity"), *cert.spectrum],
          csv=csv_)
    sys.exit(OK if cert.ok else REFUTED)


@cli.command()
@click.option("--s", type=int, required=True, help="odd, 3 <= s <= 7")
@click.option("--emit-matrix", is_flag=True,
              help="include the generator matrix of K^- in the report")
def kerdock(s, emit_matrix):
    """Kerdock code parameters and weight distributions."""
    t0 = time.time()
    from . import families
    inst = families.kerdock(s)
    verdicts = inst.record()
    if emit_matrix:
        verdicts["matrix"] = format_matrix(inst.minus.ring, inst.minus.rows)
    _emit("kerdock", {"s": s}, verdicts, t0)


@cli.command()
@click.option("--p", type=int, required=True)
@click.option("--m", type=int, required=True, help="m = 2 mod 4")
def trace(p, m):
    """Trace-code family over F_p + u F_p: distributions and the balancing loop count."""
    t0 = time.time()
    inst = trace_code(p, m)
    _emit("trace", {"p": p, "m": m}, inst.record(), t0)


@cli.command()
@click.option("--q", type=int, required=True, help="2, 4, or 8")
@click.option("--k", type=int, required=True)
@click.option("--s", type=int, required=True)
def teichmuller(q, k, s):
    """Parameter formulas for the Teichmuller-set family."""
    t0 = time.time()
    params = teichmuller_params(q, k, s)
    _emit("teichmuller", {"q": q, "k": k, "s": s}, params.record(), t0)


@cli.command()
@ring_option
@click.option("--n", type=int, required=True)
@click.option("--shape", required=True, help="k1,k2")
@click.option("--weights", "weights_", required=True, help="w1,w2,w3")
@click.option("--mode", default="exhaust", show_default=True,
              type=click.Choice(["decide", "exhaust"]))
@click.option("--out", default=None, type=click.Path(),
              help="append-only JSONL checkpoint, resumable")
@click.option("--threads", default=1, show_default=True)
@click.option("--budget-nodes", default=DEFAULT_BUDGET, show_default=True)
@click.option("--witness-seconds", default=None, type=float,
              help="MILP witness phase cap for truncated DECIDE runs")
def classify(ring_spec, n, shape, weights_, mode, out, threads, budget_nodes,
             witness_seconds):
    """Search for a proper three-weight code with the given parameters."""
    t0 = time.time()
    ring = ring_from_spec(ring_spec)
    spec = SearchSpec(ring, n, _ints(shape), _ints(weights_), mode)
    rec = search(spec, budget_nodes=budget_nodes, threads=threads,
                 checkpoint=out, witness_seconds=witness_seconds)
    _emit("classify", {**spec.record(), "budget_nodes": budget_nodes},
          rec.record(), t0)
    sys.exit({REALIZED: OK, EMPTY: REFUTED, UNDECIDED: OPEN}[rec.status])


@cli.command("reproduce-table")
@click.option("--table", required=True, help="1..5")
@click.option("--n-max", default=8, show_default=True)
@click.option("--threads", default=1, show_default=True)
@click.option("--budget-nodes", default=DEFAULT_BUDGET, show_default=True)
def reproduce_table(table, n_max, threads, budget_nodes):
    """Re-derive one recorded table; nonzero exit on any deviation."""
    t0 = time.time()
    try:
        report = run_table(table, n_max, budget_nodes=budget_nodes,
                           threads=threads)
    except TableMismatch as exc:
        click.echo(f"mismatch:\n{exc}", err=True)
        sys.exit(REFUTED)
    _emit("reproduce-table", {"table": table, "n_max": n_max}, report, t0)
    sys.exit(OPEN if report["undecided"] else OK)


def main(argv=None) -> int:
    """Console entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
