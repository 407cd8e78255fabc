"""Command-line interface: ``qmax {enumerate,families,qindex,search,verify}``.

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
Standard output carries only data, so identical arguments give identical
bytes.  Files written with ``--json``/``--output`` embed a run manifest.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import platform
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Sequence

import numpy as np

from . import __version__
from . import verify as V
from .enumeration import _labeled_raw, default_threads, enumerate_classes, flip_search_max_q
from .families import Family, FamilySpec, family_members
from .graph import CycleGraph, GraphError, graph6_decode, graph6_encode, max_degree
from .spectral import DEFAULT_TOL, ConvergenceError, qindex

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunManifest:
    command: list[str]
    seed: int | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    versions: dict[str, str] = field(default_factory=dict)
    timestamp: str = ""
    outputs: list[str] = field(default_factory=list)

    @classmethod
    def create(cls, argv: Sequence[str], **kw) -> "RunManifest":
        epoch = os.environ.get("SOURCE_DATE_EPOCH")
        ts = datetime.fromtimestamp(int(epoch) if epoch else time.time(), timezone.utc)
        import scipy
        versions = {"qmax": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
                    "python": platform.python_version()}
        return cls(list(argv), versions=versions, timestamp=ts.isoformat(), **kw)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text if text.endswith("\n") or not text else text + "\n")


def _emit(args, text: str, manifest: RunManifest) -> None:
    if getattr(args, "output", None):
        manifest.outputs.append(args.output)
        _write_text(args.output, text)
        _write_text(args.output + ".manifest.json", json.dumps(asdict(manifest), indent=2))
    else:
        sys.stdout.write(text)


def _record(g, n: int, with_q: bool) -> dict[str, Any]:
    rec: dict[str, Any] = {"graph6": graph6_encode(g), "n": n, "max_degree": max_degree(g)}
    if with_q:
        rec["q"] = qindex(g).q
    return rec


def _delta_ok(args, n: int, delta: int) -> bool:
    if args.delta is not None and delta != args.delta:
        return False
    if args.min_delta is not None and delta < args.min_delta:
        return False
    if args.max_delta is not None and delta > args.max_delta:
        return False
    return True


def cmd_enumerate(args, manifest: RunManifest) -> int:
    n = args.n
    if not 3 <= n <= 62:
        raise GraphError("enumerate needs 3 <= n <= 62")
    out = io.StringIO()
    if args.dedup:
        graphs = (g for _, g in enumerate_classes(n, args.threads))
    else:
        graphs = (CycleGraph._trusted(n, frozenset(ch)) for ch in _labeled_raw(n))
    for g in graphs:
        if not _delta_ok(args, n, max_degree(g)):
            continue
        if args.format == "json":
            out.write(json.dumps(_record(g, n, args.with_q)) + "\n")
        else:
            out.write(graph6_encode(g) + "\n")
    _emit(args, out.getvalue(), manifest)
    return EXIT_OK


def _spec_from_args(args) -> list[FamilySpec]:
    fam = Family.parse(args.family)
    needs_k = fam in (Family.NEARFAN, Family.D1, Family.D2, Family.D3)
    if needs_k and args.k is None:
        return [s for s in family_members(fam, args.n) if args.j is None or s.j == args.j]
    return [FamilySpec(fam, args.n, args.k if needs_k else None,
                       args.j if fam is Family.D3 else None)]


def cmd_families(args, manifest: RunManifest) -> int:
    out = io.StringIO()
    for spec in _spec_from_args(args):
        g = spec.build()
        if args.format == "json":
            rec = _record(g, spec.n, args.with_q)
            rec.update(family=spec.family.value, k=spec.k, j=spec.j)
            out.write(json.dumps(rec) + "\n")
        else:
            out.write(graph6_encode(g) + "\n")
    _emit(args, out.getvalue(), manifest)
    return EXIT_OK


def cmd_qindex(args, manifest: RunManifest) -> int:
    if args.graph6:
        graphs = [graph6_decode(args.graph6)]
    elif args.family:
        if args.n is None:
            raise GraphError("--family needs --n")
        graphs = [s.build() for s in _spec_from_args(args)]
    else:
        raise GraphError("give --graph6 or --family")
    manifest.tolerances["tol"] = args.tol
    out = io.StringIO()
    for g in graphs:
        res = qindex(g, args.tol)
        if args.json:
            rec = {"graph6": graph6_encode(g), "q": res.q, "residual": res.residual,
                   "iterations": res.iterations}
            if args.emit_vector:
                rec["x"] = res.x.tolist()
            out.write(json.dumps(rec) + "\n")
        else:
            out.write(f"{res.q:.12f}\n")
            if args.emit_vector:
                out.write(" ".join(f"{v:.12f}" for v in res.x) + "\n")
    _emit(args, out.getvalue(), manifest)
    return EXIT_OK


def cmd_search(args, manifest: RunManifest) -> int:
    manifest.seed = args.seed
    res = flip_search_max_q(args.n, args.restarts, args.budget, args.seed)
    fq = V.fan_q(args.n)
    rec = {"n": args.n, "seed": args.seed, "restarts": args.restarts, "budget": args.budget,
           "best_q": res.q, "best_graph6": graph6_encode(res.best), "fan_q": fq,
           "exceeds_fan": res.q > fq + 1e-9, "steps": len(res.trajectory)}
    if args.json:
        rec["trajectory"] = [list(t) for t in res.trajectory]
        text = json.dumps(rec, indent=2) + "\n"
    else:
        text = (f"best_q {res.q:.12f}\nfan_q {fq:.12f}\n"
                f"best_graph6 {rec['best_graph6']}\nexceeds_fan {rec['exceeds_fan']}\n")
    _emit(args, text, manifest)
    return EXIT_FAIL if rec["exceeds_fan"] else EXIT_OK


CHECKS = ("theorem", "tables", "lemmas", "perron", "families", "all")


def _run_check(name: str, args) -> V.VerificationReport:
    if name == "theorem":
        return V.check_theorem_range(args.n_max if args.n_max is not None else 13)
    if name == "lemmas":
        return V.check_lemmas(args.n_max if args.n_max is not None else 12)
    if name == "tables":
        return V.reproduce_tables()
    if name == "families":
        return V.check_family_coverage(args.n_max if args.n_max is not None else 12)
    if name == "perron":
        top = args.n_max if args.n_max is not None else 40
        return V.merge_reports("perron", [V.check_perron_family(f, top) for f in
                                          (Family.NEARFAN, Family.D1, Family.D2, Family.D3)],
                               {"n_max": top})
    raise GraphError(f"unknown check {name!r}")


def _summary(rep: V.VerificationReport) -> str:
    kinds = {}
    for w in rep.witnesses:
        kinds[w["kind"]] = kinds.get(w["kind"], 0) + 1
    tail = ", ".join(f"{k}={v}" for k, v in sorted(kinds.items())) or "no witnesses"
    return f"{rep.check}: {rep.verdict} ({tail})"


def cmd_verify(args, manifest: RunManifest) -> int:
    V.set_threads(args.threads)
    names = ["theorem", "tables", "lemmas", "perron", "families"] if args.check == "all" else [args.check]
    reports = [_run_check(nm, args) for nm in names]
    for r in reports:
        manifest.tolerances.update(r.tolerance)
    allow = args.allow_anomalies
    if allow is None:
        allow = args.check in ("tables", "all")

    if args.format == "csv":
        if args.check != "tables":
            raise GraphError("--format csv is only available for --check tables")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "delta_class", "family", "q_computed", "q_paper", "matched"])
        for row in V.table_rows():
            w.writerow([row.n, row.delta_class, row.family,
                        "" if row.q_computed is None else f"{row.q_computed:.6f}",
                        "" if row.q_paper is None else f"{row.q_paper:.4f}",
                        str(row.matched).lower()])
        sys.stdout.write(buf.getvalue())
    else:
        for r in reports:
            sys.stdout.write(_summary(r) + "\n")
            for wit in r.witnesses:
                if wit["kind"] != V.PASS:
                    vals = ", ".join(f"{k}={v}" for k, v in wit["values"].items() if v is not None)
                    sys.stdout.write(f"  {wit['kind']}: {wit.get('graph6', '-')} {vals}\n")

    if args.json:
        manifest.outputs.append(args.json)
        payload = {"manifest": asdict(manifest), "reports": [r.to_dict() for r in reports]}
        if len(reports) == 1:
            payload.update(reports[0].to_dict())
        _write_text(args.json, json.dumps(payload, indent=2, default=float))

    verdicts = {r.verdict for r in reports}
    if V.FAIL in verdicts:
        return EXIT_FAIL
    if V.ANOMALY in verdicts and not allow:
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmax", description="Q-index of maximal outer-planar graphs")
    p.add_argument("--version", action="version", version=f"qmax {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for enumeration (default: $QMAX_THREADS or all cores)")
    sub = p.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list triangulations of the n-gon")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--dedup", action="store_true", help="one graph per isomorphism class")
    e.add_argument("--delta", type=int, help="keep only maximum degree == DELTA")
    e.add_argument("--min-delta", type=int)
    e.add_argument("--max-delta", type=int)
    e.add_argument("--format", choices=("graph6", "json"), default="graph6")
    e.add_argument("--with-q", action="store_true", help="add Q-index to json records")
    e.add_argument("--output")

    f = sub.add_parser("families", parents=[common], help="build named family members")
    f.add_argument("--family", required=True, help="fan, near_fan, d1, d2, d3 or star")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int)
    f.add_argument("--j", type=int)
    f.add_argument("--format", choices=("graph6", "json"), default="graph6")
    f.add_argument("--with-q", action="store_true")
    f.add_argument("--output")

    q = sub.add_parser("qindex", parents=[common], help="Q-index and Perron vector")
    q.add_argument("--graph6")
    q.add_argument("--family")
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--j", type=int)
    q.add_argument("--tol", type=float, default=DEFAULT_TOL)
    q.add_argument("--emit-vector", action="store_true")
    q.add_argument("--json", action="store_true")
    q.add_argument("--output")

    s = sub.add_parser("search", parents=[common], help="flip hill-climbing for large Q-index")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--restarts", type=int, default=10)
    s.add_argument("--budget", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.add_argument("--output")

    v = sub.add_parser("verify", parents=[common], help="run a verification check")
    v.add_argument("--check", choices=CHECKS, required=True)
    v.add_argument("--n-max", type=int)
    v.add_argument("--json", metavar="PATH", help="write the JSON report here")
    v.add_argument("--format", choices=("text", "csv"), default="text")
    v.add_argument("--allow-anomalies", dest="allow_anomalies", action="store_true", default=None)
    v.add_argument("--no-allow-anomalies", dest="allow_anomalies", action="store_false")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "families": cmd_families, "qindex": cmd_qindex,
            "search": cmd_search, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.threads is None:
        args.threads = default_threads()
    manifest = RunManifest.create(["qmax", *argv])
    try:
        return COMMANDS[args.cmd](args, manifest)
    except (GraphError, ConvergenceError) as exc:
        print(f"qmax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
