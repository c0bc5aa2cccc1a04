"""``zeta-audit`` command line.

Exit codes: 0 when the command completes (REFUTED verdicts included),
2 for usage and config errors, 3 when the reference anchors fail.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import random
import re
import sys
from pathlib import Path

from . import __version__
from .claims import (
    ZERO_CLAIM,
    ClaimId,
    ClaimSpec,
    GammaMode,
    ZeroSource,
    audit_claim,
    audit_zero_candidate,
    build_zero_candidate,
)
from .config import OUTPUT_ENV, AuditConfig, ConfigError
from .errors import AuditError, InvalidInput
from .power_sums import N_CAP, ComplexPair
from .reference import functional_equation_rhs, ref_eta, ref_gamma, ref_zeta
from .report import (
    EXIT_OK,
    EXIT_USAGE,
    disk_point,
    full_report,
    rows_to_csv,
    rows_to_markdown,
    to_json,
    verdict_row,
)

log = logging.getLogger("zeta_audit")

MAX_GRID = 200_000
_NEG_VALUE = re.compile(r"^-[\d.]")
_SOURCES = {
    "t14": (ZeroSource.T14,),
    "t15": (ZeroSource.T15,),
    "c2": (ZeroSource.C2_ARCCOS, ZeroSource.C2_ARCSIN),
    "c2-arccos": (ZeroSource.C2_ARCCOS,),
    "c2-arcsin": (ZeroSource.C2_ARCSIN,),
}
_CLAIMS = {
    "t10": ClaimId.T10_ZETA,
    "t11": ClaimId.T11_ETA,
    "t12": ClaimId.T12_STRIP,
    "t13": ClaimId.T13_REFLECTION,
}


# ------------------------------------------------------------ parsing


def int_range(text: str) -> list[int]:
    """``"3"``, ``"1..40"``, ``"-4..4"`` or a comma list of those."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        try:
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer range: {text!r}") from None
    return out


def complex_arg(text: str) -> complex:
    """Accepts ``3``, ``-0.5``, ``1.5+2i`` or ``1.5+2j``."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def merge_negative_values(argv: list[str]) -> list[str]:
    """Glue ``--opt -4..4`` into ``--opt=-4..4`` so argparse keeps the value."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _emit_rows(rows: list[dict], fmt: str, title: str) -> None:
    if fmt == "json":
        text = to_json(rows) + "\n"
    elif fmt == "csv":
        text = rows_to_csv(rows)
    else:
        text = rows_to_markdown(rows, title)
    sys.stdout.write(text)


# ----------------------------------------------------------- commands


def cmd_verify_identity(args, parser) -> int:
    ns, ks = args.n, args.k
    if not ns or not ks:
        parser.error("empty n or k range")
    bad = [n for n in ns if not 3 <= n <= N_CAP]
    if bad:
        parser.error(f"n must lie in 3..{N_CAP}, got {bad[0]}")
    if min(ks) < 1:
        parser.error("k must be >= 1")
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    fixed = args.a is not None or args.d is not None
    if fixed and (args.a is None or args.d is None):
        parser.error("--a and --d go together")
    per_point = 1 if fixed else args.samples
    if len(ns) * len(ks) * per_point > MAX_GRID:
        parser.error(f"grid exceeds {MAX_GRID} evaluations")
    if fixed and args.d == 0:
        parser.error("--d must be nonzero")

    cid = ClaimId.T1_IDENTITY if args.kind == "t1" else ClaimId.T2_IDENTITY
    rng = random.Random(args.seed)
    rows = []
    seq = 0
    for n in ns:
        for k in ks:
            for _ in range(per_point):
                if fixed:
                    a, d = args.a, args.d
                else:
                    a = disk_point(rng, args.radius)
                    d = disk_point(rng, args.radius)
                p = ComplexPair.from_complex(a, d)
                seq += 1
                rows.append(verdict_row(audit_claim(ClaimSpec(cid, n=n, k=k, params=p)), f"{cid.value}-{seq:05d}"))
    _emit_rows(rows, args.format, f"{cid.value} residuals")
    return EXIT_OK


def cmd_claimed_zeta(args, parser) -> int:
    try:
        spec = ClaimSpec(_CLAIMS[args.claim], Z=args.Z, n=args.n, k=args.k, m=args.m,
                         gamma_mode=GammaMode.parse(args.mode))
    except InvalidInput as exc:
        parser.error(str(exc))
    v = audit_claim(spec)
    row = verdict_row(v, f"{spec.claim_id.value}-00001")
    sys.stdout.write(to_json(row) + "\n")
    return EXIT_OK


def cmd_zero_audit(args, parser) -> int:
    ts = args.t
    if not ts:
        parser.error("empty t range")
    n = args.n if args.n is not None else (2 if args.source.startswith("c2") else 3)
    rows = []
    for source in _SOURCES[args.source]:
        for t in ts:
            try:
                c = build_zero_candidate(t, args.k, args.m, source)
            except InvalidInput as exc:
                parser.error(str(exc))
            except AuditError as exc:
                spec = ClaimSpec(ZERO_CLAIM[source], Z=0j, n=n, k=args.k, m=args.m, t=t, source=source)
                v = audit_claim(spec)
                g1 = g2 = math.nan
                feasible = False
                note = str(exc)
            else:
                v = audit_zero_candidate(c, n)
                g1, g2, feasible, note = c.gamma1, c.gamma2, c.feasible, v.notes
            ref = v.reference
            rows.append({
                "t": t, "source": source.value, "n": n,
                "gamma1": g1, "gamma2": g2, "feasible": feasible,
                "abs_reference": abs(ref) if not math.isnan(ref.real) else math.nan,
                "classification": v.classification.value,
                "notes": note,
            })
    _emit_rows(rows, args.format, "Zero-candidate audit")
    return EXIT_OK


def cmd_full_report(args, parser) -> int:
    try:
        cfg = AuditConfig.load(args.config) if args.config else AuditConfig()
    except ConfigError as exc:
        where = args.config or "<defaults>"
        print(f"zeta-audit: config error: {where}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = args.out or os.environ.get(OUTPUT_ENV) or cfg.output_dir
    code = full_report(cfg, Path(out))
    print(f"report written to {out} (exit {code})", file=sys.stderr)
    return code


def cmd_write_config(args, parser) -> int:
    path = Path(args.path)
    if path.exists() and not args.force:
        parser.error(f"{path} exists; pass --force to overwrite")
    path.write_text(AuditConfig().to_yaml())
    return EXIT_OK


def cmd_ref(args, parser) -> int:
    fn = {"zeta": ref_zeta, "eta": ref_eta, "gamma": ref_gamma, "fe": functional_equation_rhs}[args.function]
    try:
        r = fn(args.s)
    except AuditError as exc:
        print(f"zeta-audit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = {
        "function": args.function,
        "s_re": args.s.real, "s_im": args.s.imag,
        "value_re": r.value.real, "value_im": r.value.imag,
        "est_error": r.est_error, "method": r.method.value,
    }
    sys.stdout.write(to_json(out) + "\n")
    return EXIT_OK


# ------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zeta-audit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    fmt = dict(choices=("table", "json", "csv"), default="table")

    v = sub.add_parser("verify-identity", help="finite power-sum identities against brute force")
    v.add_argument("kind", choices=("t1", "t2"))
    v.add_argument("--n", type=int_range, default=[3, 4, 5, 6], help="exponent range, e.g. 3..6")
    v.add_argument("--k", type=int_range, default=list(range(1, 21)), help="term-count range, e.g. 1..20")
    v.add_argument("--samples", type=int, default=10, help="random (a, d) draws per grid point")
    v.add_argument("--seed", type=int, default=20240601)
    v.add_argument("--radius", type=float, default=2.0, help="draws lie in |a|, |d| <= radius")
    v.add_argument("--a", type=complex_arg, help="fixed first term (disables sampling)")
    v.add_argument("--d", type=complex_arg, help="fixed common difference")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_verify_identity, cmd_parser=v)

    c = sub.add_parser("claimed-zeta", help="one closed-form claim as a JSON verdict")
    c.add_argument("--Z", type=complex_arg, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--mode", choices=("gz", "gzn"), default="gz",
                   help="gz: gamma = Z; gzn: gamma = Z/(n-1)")
    c.add_argument("--claim", choices=sorted(_CLAIMS), default="t10")
    c.set_defaults(func=cmd_claimed_zeta, cmd_parser=c)

    z = sub.add_parser("zero-audit", help="audit the constructed zero candidates")
    z.add_argument("--t", type=int_range, required=True, help="integer range, e.g. -4..4")
    z.add_argument("--k", type=int, required=True)
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--n", type=int, help="default 2 for c2 sources, 3 otherwise")
    z.add_argument("--source", choices=sorted(_SOURCES), default="t14")
    z.add_argument("--format", **fmt)
    z.set_defaults(func=cmd_zero_audit, cmd_parser=z)

    f = sub.add_parser("full-report", help="run every grid and write the report directory")
    f.add_argument("--config", help="YAML config (defaults when omitted)")
    f.add_argument("--out", help=f"output directory (overrides ${OUTPUT_ENV} and the config)")
    f.set_defaults(func=cmd_full_report, cmd_parser=f)

    w = sub.add_parser("write-config", help="write the default config as YAML")
    w.add_argument("path")
    w.add_argument("--force", action="store_true")
    w.set_defaults(func=cmd_write_config, cmd_parser=w)

    r = sub.add_parser("ref", help="evaluate a reference function")
    r.add_argument("function", choices=("zeta", "eta", "gamma", "fe"))
    r.add_argument("--s", type=complex_arg, required=True)
    r.set_defaults(func=cmd_ref, cmd_parser=r)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = merge_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args, args.cmd_parser)


if __name__ == "__main__":
    sys.exit(main())
