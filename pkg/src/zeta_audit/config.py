"""Audit configuration: a flat YAML document of scalars and arrays.

Complex values are written as two-element ``[re, im]`` arrays.  Unknown
keys, wrong types and YAML syntax errors raise :class:`ConfigError` with the
offending line number.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from .claims import ZeroSource
from .errors import AuditError, InvalidInput
from .policy import PrecisionPolicy

FORMATS = ("json", "csv", "md")
OUTPUT_ENV = "ZETA_AUDIT_OUTPUT_DIR"


class ConfigError(AuditError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _c(re_: float, im: float = 0.0) -> complex:
    return complex(re_, im)


@dataclass(frozen=True)
class AuditConfig:
    precision: PrecisionPolicy = field(default_factory=PrecisionPolicy)
    output_dir: str = "audit-report"
    formats: tuple[str, ...] = FORMATS

    identity_n: tuple[int, ...] = (3, 4, 5, 6)
    identity_k: tuple[int, ...] = tuple(range(1, 41))
    identity_samples: int = 5
    identity_seed: int = 20240601
    identity_radius: float = 2.0

    claim_n: tuple[int, ...] = (3, 4, 5)
    pairs: tuple[tuple[int, int], ...] = ((2, 3), (2, 5), (3, 4))
    sum_s: tuple[complex, ...] = (_c(2.0), _c(3.0), _c(1.5, 2.0))
    zeta_Z: tuple[complex, ...] = (_c(3.0), _c(2.0), _c(1.5, 2.0), _c(4.0, -1.0))
    eta_Z: tuple[complex, ...] = (_c(2.0), _c(1.0), _c(0.5, 3.0))
    strip_Z: tuple[complex, ...] = (_c(2.0), _c(0.5), _c(0.5, 14.134725))
    reflection_Z: tuple[complex, ...] = (_c(-1.0), _c(-2.0), _c(-0.5), _c(-1.5, 2.0))
    partial_sum_terms: int = 1_000_000

    t_min: int = -8
    t_max: int = 8
    zero_sources: tuple[ZeroSource, ...] = tuple(ZeroSource)
    zero_n: tuple[int, ...] = (2, 3)
    candidate_claims: bool = True

    probe_Z: tuple[complex, ...] = (_c(3.0), _c(2.0))
    probe_n: tuple[int, ...] = (3, 4)

    def __post_init__(self) -> None:
        if not self.formats:
            raise InvalidInput("at least one output format is required")
        for f in self.formats:
            if f not in FORMATS:
                raise InvalidInput(f"unknown format {f!r}; choose from {FORMATS}")
        if self.t_min > self.t_max:
            raise InvalidInput(f"t range is empty: t_min={self.t_min} > t_max={self.t_max}")
        for name in ("identity_n", "identity_k", "claim_n", "pairs", "zero_sources", "zero_n"):
            if not getattr(self, name):
                raise InvalidInput(f"grid {name} is empty")
        if self.identity_samples < 1:
            raise InvalidInput("identity_samples must be >= 1")

    # -------------------------------------------------------- round trip

    def to_dict(self) -> dict:
        out: dict = {}
        p = self.precision
        out.update(
            working_digits=p.working_digits,
            series_terms=p.series_terms,
            tol_ref=p.tol_ref,
            tol_claim=p.tol_claim,
        )
        for f in fields(self):
            if f.name == "precision":
                continue
            value = getattr(self, f.name)
            if f.name in _COMPLEX_LISTS:
                value = [[z.real, z.imag] for z in value]
            elif f.name == "pairs":
                value = [list(p) for p in value]
            elif f.name == "zero_sources":
                value = [s.value for s in value]
            elif isinstance(value, tuple):
                value = list(value)
            out[f.name] = value
        return out

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, default_flow_style=None, width=100)

    def digest(self) -> str:
        return hashlib.sha256(self.to_yaml().encode()).hexdigest()

    @classmethod
    def from_dict(cls, data: dict, text: str = "") -> "AuditConfig":
        if not isinstance(data, dict):
            raise ConfigError("top level must be a mapping of keys to values", 1)
        known = {f.name for f in fields(cls)} - {"precision"}
        precision_keys = {"working_digits", "series_terms", "tol_ref", "tol_claim"}
        kwargs: dict = {}
        pkw: dict = {}
        for key, value in data.items():
            line = _line_of(text, key)
            try:
                if key in precision_keys:
                    pkw[key] = _coerce_scalar(key, value, float if key.startswith("tol") else int)
                elif key in known:
                    kwargs[key] = _coerce(key, value)
                else:
                    raise ConfigError(f"unknown key {key!r}", line)
            except ConfigError as exc:
                if exc.line is None:
                    raise ConfigError(str(exc), line) from None
                raise
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{key}: {exc}", line) from None
        try:
            return cls(precision=PrecisionPolicy(**pkw), **kwargs)
        except InvalidInput as exc:
            raise ConfigError(str(exc), _first_line(text, str(exc), kwargs, pkw)) from None

    @classmethod
    def from_yaml(cls, text: str) -> "AuditConfig":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None) or getattr(exc, "context_mark", None)
            line = mark.line + 1 if mark is not None else None
            problem = getattr(exc, "problem", None) or str(exc)
            raise ConfigError(f"YAML syntax error: {problem}", line) from None
        if data is None:
            data = {}
        return cls.from_dict(data, text)

    @classmethod
    def load(cls, path: str | Path) -> "AuditConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        return cls.from_yaml(text)


_COMPLEX_LISTS = {"sum_s", "zeta_Z", "eta_Z", "strip_Z", "reflection_Z", "probe_Z"}
_INT_LISTS = {"identity_n", "identity_k", "claim_n", "zero_n", "probe_n"}
_INTS = {"identity_samples", "identity_seed", "partial_sum_terms", "t_min", "t_max"}


def _line_of(text: str, key: str) -> int | None:
    m = re.search(rf"^{re.escape(key)}\s*:", text, re.MULTILINE)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _first_line(text: str, message: str, *dicts) -> int | None:
    for d in dicts:
        for key in d:
            if key in message:
                return _line_of(text, key)
    return None


def _coerce_scalar(key: str, value, kind):
    if kind is float and isinstance(value, str):
        # YAML 1.1 reads exponent literals without a dot (1e-10) as strings
        try:
            value = float(value)
        except ValueError:
            pass
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if kind is int:
        if int(value) != value:
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        return int(value)
    return float(value)


def _as_list(key: str, value) -> list:
    if not isinstance(value, list):
        raise ConfigError(f"{key} must be an array, got {value!r}")
    return value


def _coerce(key: str, value):
    if key in _COMPLEX_LISTS:
        out = []
        for item in _as_list(key, value):
            if isinstance(item, (int, float)) and not isinstance(item, bool):
                out.append(complex(item))
            elif isinstance(item, list) and len(item) == 2:
                out.append(complex(_coerce_scalar(key, item[0], float), _coerce_scalar(key, item[1], float)))
            else:
                raise ConfigError(f"{key} entries must be numbers or [re, im] pairs, got {item!r}")
        return tuple(out)
    if key in _INT_LISTS:
        return tuple(_coerce_scalar(key, v, int) for v in _as_list(key, value))
    if key == "pairs":
        out = []
        for item in _as_list(key, value):
            if not (isinstance(item, list) and len(item) == 2):
                raise ConfigError(f"pairs entries must be [k, m], got {item!r}")
            out.append((_coerce_scalar(key, item[0], int), _coerce_scalar(key, item[1], int)))
        return tuple(out)
    if key == "zero_sources":
        try:
            return tuple(ZeroSource(str(v).upper()) for v in _as_list(key, value))
        except ValueError as exc:
            raise ConfigError(f"zero_sources: {exc}") from None
    if key == "formats":
        out = tuple(str(v) for v in _as_list(key, value))
        for f in out:
            if f not in FORMATS:
                raise ConfigError(f"unknown format {f!r}; choose from {', '.join(FORMATS)}")
        return out
    if key in ("output_dir",):
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string")
        return value
    if key == "candidate_claims":
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false")
        return value
    if key == "identity_radius":
        return _coerce_scalar(key, value, float)
    if key in _INTS:
        return _coerce_scalar(key, value, int)
    raise ConfigError(f"unknown key {key!r}")
