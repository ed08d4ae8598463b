"""Text and structured (canonical JSON) renderings of a diagnostics run.

The structured form separates a ``body`` that depends only on the input and
the tool version from ``timings``, and carries a SHA-256 of the body so two
runs can be compared without diffing.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

from .frames import Flags, FrameBounds, FrameDiagnostics

FLAG_ORDER = ("bessel", "frame", "tight", "mu_complete", "l2_independent", "riesz", "riesz_type", "exact")
RIESZ_ROWS = ("l2_independent", "riesz", "riesz_type", "exact")


@dataclass
class ReportEnvelope:
    spec_digest: str
    tool_version: str
    tolerances: dict[str, float]
    diagnostics: FrameDiagnostics
    timings: dict[str, float] = field(default_factory=dict)


def _bool(x) -> str:
    return "n/a" if x is None else str(bool(x)).lower()


def _fixed(x: float) -> str:
    return f"{x:.12f}"


def _sci(x: float) -> str:
    return f"{x:.12e}"


def render_text(env: ReportEnvelope) -> str:
    d = env.diagnostics
    fl = d.flags
    lines = [
        f"tool version: {env.tool_version}",
        f"spec digest: {env.spec_digest}",
    ]
    for name in sorted(env.tolerances):
        lines.append(f"tolerance {name}: {env.tolerances[name]:.12g}")
    lines.append(f"bessel: {_bool(fl.bessel)}")
    lines.append(f"frame: {_bool(fl.frame)}")
    lines.append(f"tight: {_bool(fl.tight)}, A={_fixed(d.bounds.lower)}, B={_fixed(d.bounds.upper)}")
    lines.append(f"mu_complete: {_bool(fl.mu_complete)}")
    if fl.frame:
        for name in RIESZ_ROWS:
            lines.append(f"{name}: {_bool(getattr(fl, name))}")
        if d.riesz_bounds is not None:
            rb = d.riesz_bounds
            lines.append(f"riesz bounds (squared): A={_fixed(rb.lower)}, B={_fixed(rb.upper)}")
            lines.append(f"riesz bounds (sqrt): A={_fixed(math.sqrt(rb.lower))}, B={_fixed(math.sqrt(rb.upper))}")
        else:
            lines.append("riesz bounds: none")
        lines.append(f"reconstruction residual: {_sci(d.reconstruction_residual)}")
    else:
        lines.append("riesz rows suppressed: not a frame")
    lines.append("notes:")
    lines.extend(f"  - {n}" for n in d.notes)
    return "\n".join(lines) + "\n"


def _bounds_json(b):
    return None if b is None else {"lower": b.lower, "upper": b.upper}


def body_dict(env: ReportEnvelope) -> dict:
    d = env.diagnostics
    rb = _bounds_json(d.riesz_bounds)
    if rb is not None:
        rb["sqrt_lower"] = math.sqrt(d.riesz_bounds.lower)
        rb["sqrt_upper"] = math.sqrt(d.riesz_bounds.upper)
    return {
        "spec_digest": env.spec_digest,
        "tool_version": env.tool_version,
        "tolerances": dict(env.tolerances),
        "diagnostics": {
            "bounds": _bounds_json(d.bounds),
            "flags": asdict(d.flags),
            "riesz_bounds": rb,
            "reconstruction_residual": d.reconstruction_residual,
            "notes": list(d.notes),
        },
    }


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False).encode()


def body_digest(env: ReportEnvelope) -> str:
    return hashlib.sha256(_canonical(body_dict(env))).hexdigest()


def render_structured(env: ReportEnvelope) -> bytes:
    body = body_dict(env)
    return _canonical({
        "body": body,
        "body_digest": hashlib.sha256(_canonical(body)).hexdigest(),
        "timings": dict(env.timings),
    })


def parse_structured(data: bytes) -> ReportEnvelope:
    doc = json.loads(data)
    body = doc["body"]
    if hashlib.sha256(_canonical(body)).hexdigest() != doc["body_digest"]:
        raise ValueError("report body does not match its digest")
    dj = body["diagnostics"]
    rb = dj["riesz_bounds"]
    diag = FrameDiagnostics(
        bounds=FrameBounds(**dj["bounds"]),
        flags=Flags(**dj["flags"]),
        riesz_bounds=None if rb is None else FrameBounds(rb["lower"], rb["upper"]),
        reconstruction_residual=dj["reconstruction_residual"],
        notes=list(dj["notes"]),
    )
    return ReportEnvelope(body["spec_digest"], body["tool_version"], dict(body["tolerances"]),
                          diag, dict(doc["timings"]))
