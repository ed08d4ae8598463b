import json

import pytest

from hcframes import __version__
from hcframes import frames as fr
from hcframes.frames import Flags, FrameBounds, FrameDiagnostics
from hcframes.measure import make_atomic
from hcframes.report import (
    ReportEnvelope,
    body_digest,
    parse_structured,
    render_structured,
    render_text,
)
from hcframes.specfile import digest, loads, ramp_spec

from conftest import scalar_vec


def envelope(F, spec_digest="0" * 64, timings=None):
    return ReportEnvelope(spec_digest, __version__, {"tol": 1e-9}, fr.diagnose(F),
                          timings or {"diagnose_ms": 1.5})


def ramp_envelope():
    doc = ramp_spec(16)
    return envelope(loads(json.dumps(doc)).build(), digest(doc))


def pair(values):
    return fr.Frame.from_vectors(make_atomic(range(len(values)), [1] * len(values)),
                                 [scalar_vec(v) for v in values])


def test_text_ramp():
    text = render_text(ramp_envelope())
    assert "tight: true, A=1.000000000000" in text
    assert "frame: true" in text
    assert "exact: n/a" in text
    assert "riesz bounds: none" in text


def test_text_not_a_frame():
    text = render_text(envelope(pair([0, 0])))
    assert "frame: false" in text
    assert "riesz rows suppressed: not a frame" in text
    assert "riesz:" not in text and "riesz_type:" not in text


def test_text_overcomplete():
    text = render_text(envelope(pair([1, 1])))
    assert "riesz: false" in text
    assert "second dual found" in text


def test_text_riesz_both_conventions():
    text = render_text(envelope(pair([2])))
    assert "riesz bounds (squared): A=4.000000000000, B=4.000000000000" in text
    assert "riesz bounds (sqrt): A=2.000000000000, B=2.000000000000" in text


def test_text_is_fixed_order():
    lines = [l.split(":")[0] for l in render_text(envelope(pair([1]))).splitlines()]
    order = ["bessel", "frame", "tight", "mu_complete", "l2_independent", "riesz", "riesz_type", "exact"]
    assert [l for l in lines if l in order] == order


def test_structured_round_trip():
    for env in (ramp_envelope(), envelope(pair([1, 1])), envelope(pair([0]))):
        data = render_structured(env)
        assert parse_structured(data) == env
        doc = json.loads(data)
        assert list(doc) == sorted(doc)
        assert data == json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def test_structured_empty_notes_present():
    env = envelope(pair([1]))
    assert env.diagnostics.notes == []
    doc = json.loads(render_structured(env))
    assert doc["body"]["diagnostics"]["notes"] == []


def test_structured_completeness():
    doc = json.loads(render_structured(ramp_envelope()))["body"]["diagnostics"]
    assert set(doc) == {"bounds", "flags", "riesz_bounds", "reconstruction_residual", "notes"}
    assert set(doc["flags"]) == set(Flags.__dataclass_fields__)


def test_digest_stable_and_timing_independent():
    a = ramp_envelope()
    b = ramp_envelope()
    b.timings = {"diagnose_ms": 999.0}
    assert body_digest(a) == body_digest(b)
    da, db = json.loads(render_structured(a)), json.loads(render_structured(b))
    assert da["body"] == db["body"] and da["body_digest"] == db["body_digest"]
    assert da["timings"] != db["timings"]


def test_tampered_report_rejected():
    doc = json.loads(render_structured(ramp_envelope()))
    doc["body"]["diagnostics"]["flags"]["tight"] = False
    with pytest.raises(ValueError):
        parse_structured(json.dumps(doc).encode())
