"""Command-line front end.

Every command builds a :class:`ReportDocument`; ``--format json`` prints it as
JSON and ``--format table`` as aligned text.  Exit codes: 0 when every record
passes, 1 on a verification failure, 2 on usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Sequence

from . import __version__
from .catalog import default_catalog, noflux_entry, s1_point_entry, s2_h3_entry, s2_rule_entry
from .errors import TwistKError
from .ktheory import PointPair, classify_pairs, compute_kgroups_closed, compute_kgroups_mv
from .restriction import RestrictionContext, rest_k0_closed, rest_k1_closed, verify_restriction_agreement
from .sweep import SUITES, iter_suites, run_sweep
from .tduality import dual_pair, duality_constants, verify_constants

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ReportDocument:
    command: dict
    results: list[dict]
    summary: dict = field(default_factory=dict)
    version: str = __version__
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()
        if not self.summary:
            passed = sum(1 for r in self.results if r.get("pass", True))
            self.summary = {"total": len(self.results), "passed": passed, "failed": len(self.results) - passed}

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.summary["failed"] == 0 else EXIT_FAIL

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "timestamp": self.timestamp,
            "results": self.results,
            "summary": self.summary,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        return cls(
            command=data["command"],
            results=list(data["results"]),
            summary=dict(data["summary"]),
            version=data["version"],
            timestamp=data["timestamp"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _positive(name: str, value: int):
    if value < 1:
        raise UsageError(f"{name} must be at least 1, got {value}")


def cmd_kgroups(n: int, k: int, ell: int) -> list[dict]:
    p = PointPair(n, k, ell)
    mv = compute_kgroups_mv(p)
    cf = compute_kgroups_closed(p)
    agree = mv.k0.invariant_factors == cf.k0.invariant_factors and mv.k1.invariant_factors == cf.k1.invariant_factors
    return [
        {
            "kind": "kgroups",
            "pair": p.to_dict(),
            "k0": cf.k0.to_dict(),
            "k1": cf.k1.to_dict(),
            "mv": mv.to_dict(),
            "closed": cf.to_dict(),
            "routes_agree": agree,
            "pass": agree,
        }
    ]


def cmd_pairs(n: int) -> list[dict]:
    _positive("n", n)
    out = []
    for p in classify_pairs(n):
        q = dual_pair(p)
        kg = compute_kgroups_closed(p)
        out.append(
            {
                "kind": "pair",
                "pair": p.to_dict(),
                "dual": q.to_dict(),
                "self_dual": p == q,
                "k0": kg.k0.to_dict(),
                "k1": kg.k1.to_dict(),
            }
        )
    return out


def cmd_restrict(n: int, m: int, k: int, ell: int) -> list[dict]:
    ctx = RestrictionContext(n, m, k, ell)
    r0, r1 = rest_k0_closed(ctx), rest_k1_closed(ctx)
    maps = {
        "kind": "restriction_maps",
        "instance": ctx.to_dict(),
        "j": ctx.j,
        "a_exponent": ctx.a_exponent,
        "k0": {"source": r0.source.to_dict(), "target": r0.target.to_dict(), "matrix": r0.matrix.to_dict()},
        "k1": {"source": r1.source.to_dict(), "target": r1.target.to_dict(), "matrix": r1.matrix.to_dict()},
    }
    return [maps, verify_restriction_agreement(ctx).to_dict()]


def cmd_constants(n: int, k: int | None, ell: int | None) -> list[dict]:
    _positive("n", n)
    if (k is None) != (ell is None):
        raise UsageError("give both --k and --twist, or neither")
    pairs = [PointPair(n, k, ell)] if k is not None else classify_pairs(n)
    out = []
    for p in pairs:
        rec = verify_constants(p).to_dict()
        rec["constants"] = duality_constants(p).to_dict()
        out.append(rec)
    return out


def cmd_catalog(kind: str, max_k: int) -> list[dict]:
    _positive("max-k", max_k)
    if kind == "all":
        entries = default_catalog(max_k)
    elif kind == "s1":
        entries = [s1_point_entry(k) for k in range(1, max_k + 1)]
    elif kind == "s2-h3":
        entries = [s2_h3_entry(p, q) for p in range(max_k + 1) for q in range(max_k + 1)]
    elif kind == "s2-dual":
        entries = [s2_rule_entry(p, q) for p in range(max_k + 1) for q in range(max_k + 1)]
    else:
        entries = [noflux_entry(max_k, k) for k in range(max_k)]
    return [e.to_dict() for e in entries]


def cmd_verify(suite: str, max_n: int, jobs: int, full: bool) -> tuple[list[dict], dict]:
    _positive("max-n", max_n)
    _positive("jobs", jobs)
    res = run_sweep(list(iter_suites(suite)), max_n, jobs=jobs, full=full)
    return res.reports, {"total": res.total, "passed": res.passed, "failed": res.failed}


# ---------------------------------------------------------------------------
# table rendering
# ---------------------------------------------------------------------------


def _group(rec: dict) -> str:
    parts = []
    if rec["rank"] == 1:
        parts.append("Z")
    elif rec["rank"] > 1:
        parts.append(f"Z^{rec['rank']}")
    parts += [f"Z/{t}" for t in rec["torsion"]]
    return " ⊕ ".join(parts) if parts else "0"


def _triple(d: dict) -> str:
    return "(" + ", ".join(f"{k}={v}" for k, v in d.items()) + ")"


def _row(rec: dict) -> str:
    kind = rec.get("kind")
    if kind == "kgroups":
        flag = "agree" if rec["routes_agree"] else "DISAGREE"
        return f"{_triple(rec['pair'])}  K0 = {_group(rec['k0'])}  K1 = {_group(rec['k1'])}  routes {flag}"
    if kind == "pair":
        tag = "  self-dual" if rec["self_dual"] else ""
        return f"{_triple(rec['pair'])} <-> {_triple(rec['dual'])}  K0 = {_group(rec['k0'])}  K1 = {_group(rec['k1'])}{tag}"
    if kind == "restriction_maps":
        return (
            f"{_triple(rec['instance'])}  j={rec['j']}  "
            f"K0: {_group(rec['k0']['source'])} -> {_group(rec['k0']['target'])}  "
            f"K1: {_group(rec['k1']['source'])} -> {_group(rec['k1']['target'])}"
        )
    if "checks" in rec:
        status = "PASS" if rec["pass"] else "FAIL [" + ", ".join(c["name"] for c in rec["checks"] if not c["pass"]) + "]"
        extra = ""
        if "constants" in rec:
            c = rec["constants"]
            extra = f"  alpha={c['alpha']} beta={c['beta']} beta'={c['beta_prime']} C={c['c_left']}"
        return f"{rec['kind']:<12} {_triple(rec['instance'])}  {status}{extra}"
    if "identifier" in rec:
        payload = ", ".join(
            f"{k}: {_group(v) if isinstance(v, dict) and 'rank' in v else v}" for k, v in rec["payload"].items()
        )
        return f"{rec['identifier']:<16} {payload}"
    return json.dumps(rec)


def render_table(doc: ReportDocument) -> str:
    lines = [_row(r) for r in doc.results]
    s = doc.summary
    lines.append(f"total {s['total']}  passed {s['passed']}  failed {s['failed']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "table"), default=default("json"))
    p.add_argument("--out", metavar="FILE", default=default(None), help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, metavar="N", default=default(1), help="worker processes for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kgroups", help="K-groups of (E_k, tau_ell) by both routes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--twist", type=int, required=True)
    _common(p, suppress=True)

    p = sub.add_parser("pairs", help="all T-duality pairs for Z_n with their duals")
    p.add_argument("--n", type=int, required=True)
    _common(p, suppress=True)

    p = sub.add_parser("restrict", help="restriction along Z_m -> Z_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--twist", type=int, required=True)
    _common(p, suppress=True)

    p = sub.add_parser("verify", help="exhaustive verification sweep")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--full", action="store_true", help="include passing reports too")
    _common(p, suppress=True)

    p = sub.add_parser("constants", help="duality constants alpha, beta, beta' and C")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--twist", type=int)
    _common(p, suppress=True)

    p = sub.add_parser("catalog", help="worked examples")
    p.add_argument("--kind", choices=("all", "s1", "s2-h3", "s2-dual", "noflux"), default="all")
    p.add_argument("--max-k", type=int, default=4)
    _common(p, suppress=True)
    return parser


def run(args: argparse.Namespace, argv: Sequence[str]) -> ReportDocument:
    summary: dict = {}
    c = args.command
    if c == "kgroups":
        results = cmd_kgroups(args.n, args.k, args.twist)
    elif c == "pairs":
        results = cmd_pairs(args.n)
    elif c == "restrict":
        results = cmd_restrict(args.n, args.m, args.k, args.twist)
    elif c == "verify":
        results, summary = cmd_verify(args.suite, args.max_n, args.jobs, args.full)
    elif c == "constants":
        results = cmd_constants(args.n, args.k, args.twist)
    else:
        results = cmd_catalog(args.kind, args.max_k)
    return ReportDocument(command={"name": c, "argv": list(argv)}, results=results, summary=summary)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc = run(args, argv)
    except (UsageError, TwistKError, ValueError) as exc:
        print(f"twistk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = doc.to_json() if args.format == "json" else render_table(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
