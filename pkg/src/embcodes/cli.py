"""``embcodes`` command line: analyze, verify, spectrum, list-families.

Exit codes: 0 agreement with the oracle, 1 mismatch, 2 usage error,
3 enumeration cap exceeded (a partial report is still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any

from .codes import MESSAGE_CAP
from .embeddings import ProjectiveSystem
from .families import ALIASES, CATALOG_EXAMPLES, FAMILIES, GeometryDescriptor, build, build_from_system, feasibility
from .gf import prime_power
from .linalg import EnumerationCapExceeded
from .oracle import ExpectedParameters, expected_parameters
from .report import (
    NOT_COMPUTED,
    STRATEGIES,
    CodeReport,
    analyze_code,
    check_arising_hyperplanes,
    embedding_block,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
FAMILY_FLAGS = ("family", "q", "p", "h", "n", "k", "m", "m2", "sigma")

log = logging.getLogger("embcodes")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("geometry")
    g.add_argument("--family", choices=FAMILIES + tuple(ALIASES))
    g.add_argument("--q", type=int, help="alphabet size (q^2 for hermitian families)")
    g.add_argument("--p", type=int, help="characteristic, with --h instead of --q")
    g.add_argument("--h", type=int, help="extension degree, with --p")
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--m2", type=int, help="second Segre factor (defaults to --n)")
    g.add_argument("--sigma", type=int, help="Frobenius exponent j, sigma: x -> x^(p^j)")
    g.add_argument("--input", type=Path, help="projective system file instead of family flags")
    r = p.add_argument_group("run")
    r.add_argument("--strategy", choices=STRATEGIES, default="auto")
    r.add_argument("--threads", type=int, default=None, help="worker threads (default $EMBCODES_THREADS or 1)")
    r.add_argument("--max-enum", type=int, default=MESSAGE_CAP, help="cap on q^K for message enumeration")
    r.add_argument("--out", type=Path, help="write the report here instead of stdout")
    r.add_argument("--format", choices=("json", "csv"), default=None)
    r.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    p = Parser(prog="embcodes", description="Codes from embedded point-line geometries.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)
    for name, hlp in (
        ("analyze", "build a code and report N, K, d, spectrum, minimality and oracle deltas"),
        ("verify", "check every arising hyperplane for connected complement against minimality"),
        ("spectrum", "weight distribution next to the oracle spectrum"),
    ):
        _common(sub.add_parser(name, help=hlp))
    lf = sub.add_parser("list-families", help="supported families with oracle coverage")
    lf.add_argument("--format", choices=("json", "csv", "text"), default="text")
    lf.add_argument("--out", type=Path)
    return p


# -- configuration ------------------------------------------------------------

def descriptor_from_args(a) -> GeometryDescriptor:
    if a.q is not None and (a.p is not None or a.h is not None):
        raise UsageError("give either --q or --p/--h")
    if a.q is None:
        if a.p is None:
            raise UsageError("--q (or --p with --h) is required")
        q = a.p ** (a.h or 1)
    else:
        q = a.q
    try:
        prime_power(q)
    except ValueError as exc:
        raise UsageError(str(exc))
    fam = a.family
    kw: dict[str, Any] = {"n": a.n, "k": a.k, "m": a.m, "sigma": a.sigma or 0}
    if fam == "segre":
        if a.m2 is not None and a.n is not None and a.m2 != a.n:
            raise UsageError("--m2 and --n disagree for segre")
        kw["second"] = a.m2 if a.m2 is not None else a.n
        kw["n"] = None
    elif a.m2 is not None:
        raise UsageError("--m2 applies only to segre")
    if a.sigma is not None and fam not in ("segre", "point_hyperplane"):
        raise UsageError("--sigma applies only to segre and point_hyperplane")
    try:
        return GeometryDescriptor.make(fam, q, **kw)
    except ValueError as exc:
        raise UsageError(str(exc))


def load_built(a):
    has_family = any(getattr(a, f) is not None for f in FAMILY_FLAGS)
    if a.input is not None:
        if has_family:
            raise UsageError("--input excludes family flags")
        try:
            system = ProjectiveSystem.from_text(a.input.read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read system: {exc}")
        return build_from_system(system)
    if a.family is None:
        raise UsageError("give --family (with parameters) or --input")
    return build(descriptor_from_args(a))


# -- serialisation ------------------------------------------------------------

def big(x):
    """Integers as decimal strings, recursively; bools stay booleans."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, dict):
        return {str(k): big(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [big(v) for v in x]
    return x


def oracle_block(e: ExpectedParameters | None) -> dict | None:
    if e is None:
        return None
    fields = {}
    for name in ExpectedParameters.FIELDS:
        c = getattr(e, name)
        fields[name] = (
            "unknown" if c is None else {"value": big(c.value), "tag": c.tag, "provenance": c.provenance}
        )
    return {"family": e.family, "q": str(e.q), "fields": fields, "notes": list(e.notes),
            "label": "paper claim"}


def report_json(built, rep: CodeReport) -> dict:
    desc = built.descriptor
    geometry = {"source": "input"} if desc is None else dict(desc.params(), label=desc.label)
    if built.geometry is not None:
        geometry["points"] = built.geometry.num_points
        geometry["lines"] = len(built.geometry.lines)
    code = {
        "N": big(rep.N), "K": big(rep.K), "q": big(rep.q),
        "d": big(rep.d) if rep.d is not None else NOT_COMPUTED,
        "w_max": big(rep.w_max) if rep.w_max is not None else NOT_COMPUTED,
        "distribution": big(rep.distribution.counts) if rep.distribution is not None else NOT_COMPUTED,
        "strategy": rep.strategy,
    }
    minimal: dict[str, Any] = {"verdict": rep.minimal if rep.minimal is not None else NOT_COMPUTED}
    if rep.witness is not None:
        minimal["witness"] = big(list(rep.witness))
        minimal["non_minimal_classes"] = big(rep.non_minimal_classes)
    if rep.oracle is not None:
        claim = rep.oracle.minimal
        minimal["claim"] = (
            {"value": claim.value, "tag": claim.tag} if claim is not None else "no paper claim"
        )
    return {
        "geometry": geometry,
        "embedding": embedding_block(built),
        "code": code,
        "minimal": minimal,
        "ab": {"verdict": rep.ab_satisfied if rep.ab_satisfied is not None else NOT_COMPUTED},
        "oracle": oracle_block(rep.oracle),
        "deltas": [{k: big(v) for k, v in d.items()} for d in rep.deltas],
        "skipped": rep.skipped,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def exit_for(rep: CodeReport) -> int:
    if rep.deltas:
        return EXIT_MISMATCH
    return EXIT_CAP if rep.cap_exceeded else EXIT_OK


# -- commands -----------------------------------------------------------------

def oracle_only(a) -> dict | None:
    """Report for descriptors whose oracle K puts both enumeration routes over cap."""
    if a.input is not None or a.family is None:
        return None
    desc = descriptor_from_args(a)
    e = expected_parameters(desc)
    K = e.value("K")
    if K is None:
        return None
    feas = feasibility(desc.q, K)
    if (feas["message_enum"] and desc.q**K <= a.max_enum) or feas["hyperplane_sweep"]:
        return None
    return {
        "geometry": dict(desc.params(), label=desc.label),
        "status": "oracle only - paper claim, not computed",
        "skipped": [f"construction and enumeration: {NOT_COMPUTED} (K = {K})"],
        "oracle": oracle_block(e),
    }


def cmd_analyze(a) -> int:
    only = oracle_only(a)
    if only is not None:
        emit(dumps(only), a.out)
        return EXIT_CAP
    built = load_built(a)
    rep = analyze_code(built, a.strategy, a.threads, a.max_enum)
    if (a.format or "json") == "csv":
        emit(distribution_csv(rep, None), a.out)
    else:
        emit(dumps(report_json(built, rep)), a.out)
    return exit_for(rep)


def cmd_verify(a) -> int:
    built = load_built(a)
    if built.geometry is None:
        raise UsageError("verify needs a family (the geometry), not --input")
    try:
        chk = check_arising_hyperplanes(built, threads=a.threads)
    except EnumerationCapExceeded as exc:
        emit(dumps({"error": str(exc), "status": NOT_COMPUTED}), a.out)
        return EXIT_CAP
    out = {
        "geometry": dict(built.descriptor.params(), label=built.descriptor.label),
        "hyperplane_classes": str(chk.classes),
        "all_preimages_geometric_hyperplanes": chk.all_hyperplanes,
        "all_complements_connected": chk.all_connected,
        "minimal": chk.minimal,
        "implication_holds": chk.implication_holds,
        "counterexamples": chk.counterexamples,
    }
    emit(dumps(out), a.out)
    return EXIT_OK if chk.implication_holds else EXIT_MISMATCH


def distribution_csv(rep: CodeReport, expected: dict[int, int] | None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if expected is None:
        w.writerow(["weight", "count"])
    else:
        w.writerow(["weight", "count", "oracle_count"])
    computed = rep.distribution.counts if rep.distribution is not None else {}
    keys = sorted(set(computed) | set(expected or {}))
    for k in keys:
        row = [k, computed.get(k, 0)]
        if expected is not None:
            row.append(expected.get(k, 0))
        w.writerow(row)
    return buf.getvalue()


def cmd_spectrum(a) -> int:
    only = oracle_only(a)
    if only is not None:
        emit(dumps(only), a.out)
        return EXIT_CAP
    built = load_built(a)
    rep = analyze_code(built, a.strategy, a.threads, a.max_enum, minimality=False)
    e = rep.oracle
    expected = e.value("spectrum") if e is not None else None
    if rep.distribution is None:
        code = EXIT_CAP
    elif expected is None:
        code = EXIT_OK
    else:
        code = EXIT_OK if rep.distribution.counts == expected else EXIT_MISMATCH
    if (a.format or "csv") == "csv":
        text = distribution_csv(rep, expected)
        if expected is None:
            text += "# no oracle spectrum for this descriptor\n"
        if rep.distribution is None:
            text += f"# distribution {NOT_COMPUTED}\n"
    else:
        text = dumps({
            "geometry": built.descriptor.params() if built.descriptor else {"source": "input"},
            "distribution": big(rep.distribution.counts) if rep.distribution else NOT_COMPUTED,
            "oracle_spectrum": big(expected) if expected is not None else "no oracle",
            "match": None if expected is None or rep.distribution is None else code == EXIT_OK,
        })
    emit(text, a.out)
    return code


def family_rows() -> list[dict]:
    rows = []
    for d in CATALOG_EXAMPLES:
        e = expected_parameters(d)
        K = e.value("K")
        feas = feasibility(d.q, K)
        desk = feas["message_enum"] or feas["hyperplane_sweep"]
        rows.append({
            "family": d.label,
            "params": {k: v for k, v in d.params().items() if k not in ("family", "variant")},
            "oracle": sorted(e.populated()),
            "N": e.value("N"),
            "K": K,
            "d": e.value("d"),
            "feasible": desk,
            "status": "desk scale" if desk else "oracle only - enumeration infeasible (paper claim, not computed)",
        })
    return rows


def cmd_list_families(a) -> int:
    rows = family_rows()
    if a.format == "json":
        text = dumps(big(rows))
    else:
        buf = io.StringIO()
        if a.format == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["family", "params", "N", "K", "d", "oracle", "status"])
            for r in rows:
                params = " ".join(f"{k}={v}" for k, v in r["params"].items())
                w.writerow([r["family"], params, r["N"], r["K"], r["d"], " ".join(r["oracle"]), r["status"]])
        else:
            for r in rows:
                params = " ".join(f"{k}={v}" for k, v in r["params"].items())
                buf.write(f"{r['family']:<18} {params:<24} N={r['N']} K={r['K']} d={r['d']}  {r['status']}\n")
        text = buf.getvalue()
    emit(text, a.out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "verify": cmd_verify, "spectrum": cmd_spectrum,
            "list-families": cmd_list_families}


def main(argv=None) -> int:
    a = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(a, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[a.command](a)
    except UsageError as exc:
        sys.stderr.write(f"embcodes: error: {exc}\n")
        return EXIT_USAGE
    except EnumerationCapExceeded as exc:
        sys.stderr.write(f"embcodes: {NOT_COMPUTED}: {exc}\n")
        return EXIT_CAP


if __name__ == "__main__":
    raise SystemExit(main())
