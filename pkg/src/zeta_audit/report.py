"""Audit batches and their on-disk reports.

Verdict files are byte-stable for a fixed config and version: rows come out
in grid order, floats are written with 17 significant digits, and the only
timestamp lives in ``manifest.json``.
"""
from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import logging
import math
import random
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .claims import (
    AnchorCheck,
    ClaimId,
    ClaimSpec,
    ClaimVerdict,
    Classification,
    GammaMode,
    ProbeReport,
    ZERO_CLAIM,
    ZeroSource,
    audit_claim,
    build_zero_candidate,
    candidate_claim_spec,
    check_reference_anchors,
    nonuniqueness_probe,
    theorem14_consistency_check,
)
from .config import AuditConfig
from .errors import AuditError
from .power_sums import ComplexPair

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ANCHORS = 3


# --------------------------------------------------------------- grids


def identity_samples(cfg: AuditConfig) -> list[tuple[int, int, ComplexPair]]:
    """Deterministic (n, k, params) triples for the finite-identity grid."""
    rng = random.Random(cfg.identity_seed)
    r = cfg.identity_radius
    out = []
    for n in cfg.identity_n:
        for k in cfg.identity_k:
            for _ in range(cfg.identity_samples):
                a = disk_point(rng, r)
                d = disk_point(rng, r)
                while d == 0:
                    d = disk_point(rng, r)
                out.append((n, k, ComplexPair.from_complex(a, d)))
    return out


def disk_point(rng: random.Random, radius: float) -> complex:
    rho = radius * math.sqrt(rng.random())
    phi = 2 * math.pi * rng.random()
    return complex(rho * math.cos(phi), rho * math.sin(phi))


def build_specs(cfg: AuditConfig) -> list[ClaimSpec]:
    specs: list[ClaimSpec] = []
    samples = identity_samples(cfg)
    for cid in (ClaimId.T1_IDENTITY, ClaimId.T2_IDENTITY):
        specs.extend(ClaimSpec(cid, n=n, k=k, params=p) for n, k, p in samples)
    for cid in (ClaimId.T7_CLOSED_FORM, ClaimId.T8_CLOSED_FORM):
        for s in cfg.sum_s:
            for n in cfg.claim_n:
                specs.extend(ClaimSpec(cid, Z=s, n=n, k=k, m=m) for k, m in cfg.pairs)
    for cid, grid in (
        (ClaimId.T10_ZETA, cfg.zeta_Z),
        (ClaimId.T11_ETA, cfg.eta_Z),
        (ClaimId.T12_STRIP, cfg.strip_Z),
        (ClaimId.T13_REFLECTION, cfg.reflection_Z),
    ):
        for Z in grid:
            for n in cfg.claim_n:
                for k, m in cfg.pairs:
                    specs.extend(ClaimSpec(cid, Z=Z, n=n, k=k, m=m, gamma_mode=mode) for mode in GammaMode)
    if cfg.candidate_claims:
        specs.extend(_candidate_specs(cfg))
    for source in cfg.zero_sources:
        cid = ZERO_CLAIM[source]
        for k, m in cfg.pairs:
            for n in cfg.zero_n:
                specs.extend(
                    ClaimSpec(cid, Z=0j, n=n, k=k, m=m, t=t, source=source)
                    for t in range(cfg.t_min, cfg.t_max + 1)
                )
    for Z in cfg.probe_Z:
        for n in cfg.probe_n:
            specs.append(ClaimSpec(ClaimId.NONUNIQUENESS, Z=Z, n=n, pairs=cfg.pairs))
    return specs


def _candidate_specs(cfg: AuditConfig) -> list[ClaimSpec]:
    """Closed-form claims fed with the a = d candidates (expected claimed value 0)."""
    out = []
    for source, cid in ((ZeroSource.T14, ClaimId.T10_ZETA), (ZeroSource.T15, ClaimId.T11_ETA)):
        if source not in cfg.zero_sources:
            continue
        for k, m in cfg.pairs:
            for t in range(cfg.t_min, cfg.t_max + 1):
                try:
                    c = build_zero_candidate(t, k, m, source)
                except AuditError:
                    continue
                if not c.feasible:
                    continue
                for n in cfg.claim_n:
                    out.extend(candidate_claim_spec(c, n, cid, mode) for mode in GammaMode)
    return out


# ------------------------------------------------------------- running


@dataclass
class AuditRun:
    config: AuditConfig
    anchors: list[AnchorCheck]
    verdicts: list[ClaimVerdict]
    probes: list[ProbeReport]

    @property
    def anchors_ok(self) -> bool:
        return all(a.passed for a in self.anchors)


def run_audit(cfg: AuditConfig) -> AuditRun:
    """Anchors first; the grid only runs when every anchor passes."""
    policy = cfg.precision
    anchors = check_reference_anchors(policy)
    if not all(a.passed for a in anchors):
        return AuditRun(cfg, anchors, [], [])
    verdicts = [audit_claim(s, policy, cfg.partial_sum_terms) for s in build_specs(cfg)]
    if ZeroSource.T14 in cfg.zero_sources:
        for k, m in cfg.pairs:
            verdicts.extend(theorem14_consistency_check(t, k, m) for t in range(cfg.t_min, cfg.t_max + 1))
    probes = []
    for Z in cfg.probe_Z:
        for n in cfg.probe_n:
            try:
                probes.append(nonuniqueness_probe(Z, n, cfg.pairs, policy))
            except AuditError as exc:
                log.warning("probe Z=%s n=%d skipped: %s", Z, n, exc)
    return AuditRun(cfg, anchors, verdicts, probes)


# ------------------------------------------------------- serialization


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def _json_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v) if math.isfinite(v) else json.dumps(fmt_float(v))
    if v is None:
        return "null"
    return json.dumps(str(v), ensure_ascii=False)


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats at 17 significant digits; non-finite floats become strings."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _json_scalar(obj)


def _flatten_inputs(spec: ClaimSpec) -> dict:
    out = {}
    for key, value in spec.inputs().items():
        if isinstance(value, complex):
            out[f"{key}_re"] = value.real
            out[f"{key}_im"] = value.imag
        else:
            out[key] = value
    return out


def verdict_row(v: ClaimVerdict, vid: str) -> dict:
    row = {"id": vid, "claim_id": v.spec.claim_id.value}
    row.update(_flatten_inputs(v.spec))
    row.update(
        claimed_re=v.claimed.real,
        claimed_im=v.claimed.imag,
        reference_re=v.reference.real,
        reference_im=v.reference.imag,
        abs_residual=float(v.abs_residual),
        classification=v.classification.value,
        notes=v.notes,
    )
    return row


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    columns = list(rows[0]) if rows else []
    for r in rows:
        for key in r:
            if key not in columns:
                columns.append(key)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c, "")) for c in columns])
    return buf.getvalue()


def rows_to_markdown(rows: list[dict], title: str) -> str:
    lines = [f"# {title}", ""]
    if not rows:
        return "\n".join(lines + ["(no rows)", ""])
    columns = list(rows[0])
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("|" + "---|" * len(columns))
    for r in rows:
        cells = [_cell(r.get(c, "")).replace("|", "\\|") for c in columns]
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    return "\n".join(lines)


def probe_rows(probes: list[ProbeReport]) -> list[dict]:
    rows = []
    for p in probes:
        for r in p.rows:
            rows.append({
                "Z_re": p.Z.real, "Z_im": p.Z.imag, "n": p.n,
                "k": r.k, "m": r.m, "gamma_mode": r.gamma_mode.value,
                "claimed_re": r.claimed.real, "claimed_im": r.claimed.imag,
                "reference_re": p.reference.real, "reference_im": p.reference.imag,
                "abs_residual": float(r.abs_residual),
                "mode_spread": p.spread[r.gamma_mode.value],
                "nonunique": p.nonunique,
                "note": r.note,
            })
    return rows


def anchor_rows(anchors: list[AnchorCheck]) -> list[dict]:
    return [
        {"name": a.name, "value_re": a.value.real, "value_im": a.value.imag,
         "expected_re": a.expected.real, "expected_im": a.expected.imag,
         "error": a.error, "tolerance": a.tolerance, "passed": a.passed}
        for a in anchors
    ]


def _write(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8", newline="\n")


def _emit(out: Path, stem: str, rows: list[dict], formats, title: str) -> list[str]:
    written = []
    for fmt in formats:
        name = f"{stem}.{fmt}"
        if fmt == "json":
            _write(out / name, to_json(rows) + "\n")
        elif fmt == "csv":
            _write(out / name, rows_to_csv(rows))
        else:
            _write(out / name, rows_to_markdown(rows, title))
        written.append(name)
    return written


def write_report(run: AuditRun, out_dir: Path, timestamp: str | None = None) -> dict:
    """Write per-claim verdict files plus ``manifest.json``; return the manifest."""
    cfg = run.config
    out_dir.mkdir(parents=True, exist_ok=True)
    grouped: dict[ClaimId, list[ClaimVerdict]] = {}
    for v in run.verdicts:
        grouped.setdefault(v.spec.claim_id, []).append(v)

    index = []
    files = []
    counts: dict[str, int] = {c.value: 0 for c in Classification}
    for cid in ClaimId:
        verdicts = grouped.get(cid)
        if not verdicts:
            continue
        rows = []
        for seq, v in enumerate(verdicts, 1):
            vid = f"{cid.value}-{seq:05d}"
            rows.append(verdict_row(v, vid))
            counts[v.classification.value] += 1
        names = _emit(out_dir, cid.value, rows, cfg.formats, f"{cid.value} verdicts")
        files.extend(names)
        index.extend({"id": r["id"], "claim_id": cid.value, "classification": r["classification"],
                      "files": names} for r in rows)
    if run.probes:
        files.extend(_emit(out_dir, "NONUNIQUENESS_detail", probe_rows(run.probes), cfg.formats,
                           "Non-uniqueness probe detail"))

    manifest = {
        "artifact": "zeta-audit",
        "version": __version__,
        "config_digest": cfg.digest(),
        "timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "precision": {
            "working_digits": cfg.precision.working_digits,
            "series_terms": cfg.precision.series_terms,
            "tol_ref": cfg.precision.tol_ref,
            "tol_claim": cfg.precision.tol_claim,
        },
        "anchors_passed": run.anchors_ok,
        "anchors": anchor_rows(run.anchors),
        "aborted": not run.anchors_ok,
        "counts": counts,
        "files": files,
        "index": index,
    }
    _write(out_dir / "manifest.json", to_json(manifest) + "\n")
    return manifest


def full_report(cfg: AuditConfig, out_dir: Path) -> int:
    run = run_audit(cfg)
    write_report(run, out_dir)
    if not run.anchors_ok:
        failed = ", ".join(a.name for a in run.anchors if not a.passed)
        log.error("reference anchors failed (%s); audit aborted", failed)
        return EXIT_ANCHORS
    return EXIT_OK
