import pytest
import yaml
from hypothesis import given, strategies as st

from zeta_audit.claims import ZeroSource
from zeta_audit.config import AuditConfig, ConfigError
from zeta_audit.errors import InvalidInput
from zeta_audit.policy import PrecisionPolicy


def test_defaults_round_trip():
    cfg = AuditConfig()
    again = AuditConfig.from_yaml(cfg.to_yaml())
    assert again == cfg
    assert again.digest() == cfg.digest()


def test_yaml_is_flat():
    data = yaml.safe_load(AuditConfig().to_yaml())
    assert all(not isinstance(v, dict) for v in data.values())
    assert data["zeta_Z"][0] == [3.0, 0.0]


finite = st.floats(-50, 50, allow_nan=False)


@given(
    st.lists(st.tuples(finite, finite), min_size=1, max_size=4),
    st.lists(st.sampled_from(["json", "csv", "md"]), min_size=1, max_size=3, unique=True),
    st.integers(-10, 0),
    st.integers(0, 10),
    st.lists(st.sampled_from(list(ZeroSource)), min_size=1, max_size=4, unique=True),
    st.floats(1e-15, 1e-11),
)
def test_round_trip_property(zs, formats, t_min, t_max, sources, tol_ref):
    cfg = AuditConfig(
        precision=PrecisionPolicy(tol_ref=tol_ref),
        zeta_Z=tuple(complex(a, b) for a, b in zs),
        formats=tuple(formats),
        t_min=t_min,
        t_max=t_max,
        zero_sources=tuple(sources),
    )
    assert AuditConfig.from_yaml(cfg.to_yaml()) == cfg


def test_partial_document_keeps_defaults():
    cfg = AuditConfig.from_yaml("formats: [json]\npairs: [[2, 3], [3, 5]]\n")
    assert cfg.formats == ("json",)
    assert cfg.pairs == ((2, 3), (3, 5))
    assert cfg.claim_n == AuditConfig().claim_n


def test_real_numbers_accepted_for_complex_lists():
    assert AuditConfig.from_yaml("zeta_Z: [3, [1.5, 2]]\n").zeta_Z == (3 + 0j, 1.5 + 2j)


@pytest.mark.parametrize("text,line", [
    ("formats: [json]\nbogus: 1\n", 2),
    ("formats: [json]\n\nt_min: 'x'\n", 3),
    ("pairs: [[2, 3]]\nzeta_Z: [[1, 2, 3]]\n", 2),
    ("formats: [json\n", 2),
    ("a: b: c\n", 1),
    ("formats: [pdf]\n", 1),
    ("tol_ref: 1e-6\n", 1),
])
def test_errors_are_line_anchored(text, line):
    with pytest.raises(ConfigError) as exc:
        AuditConfig.from_yaml(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_top_level_must_be_mapping():
    with pytest.raises(ConfigError):
        AuditConfig.from_yaml("- 1\n- 2\n")


def test_empty_document_is_defaults():
    assert AuditConfig.from_yaml("") == AuditConfig()


def test_invariants():
    with pytest.raises(InvalidInput):
        AuditConfig(formats=())
    with pytest.raises(InvalidInput):
        AuditConfig(t_min=3, t_max=2)
    with pytest.raises(InvalidInput):
        AuditConfig(pairs=())


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        AuditConfig.load(tmp_path / "nope.yaml")
