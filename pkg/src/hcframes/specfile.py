"""Frame-spec files: JSON documents describing an algebra, a rank, a measure
and a frame map.

    {
      "algebra": {"block_dims": [1, 1]},
      "rank": 1,
      "measure": {"kind": "interval", "a": 0, "b": 1, "rule": "gauss-legendre", "m": 16},
      "frame": {"family": "polynomial", "coefficients": [<vector>, <vector>]},
      "tolerances": {"tol": 1e-9}
    }

An algebra element is a list of blocks, each block a row-major list of
[re, im] pairs; a module vector is a list of ``rank`` elements.  Explicit
frames use {"samples": [<vector>, ...]} with one vector per node; atomic
measures use {"kind": "atomic", "nodes": [...], "weights": [...]}.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import AlgebraElement, AlgebraShape
from .frames import Frame
from .measure import ATOMIC, INTERVAL, MeasureSpace, make_atomic, make_interval
from .module import ModuleVector


class SpecError(ValueError):
    """Malformed spec file; ``where`` names the offending line or field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


# serialization

def _number(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def element_to_json(a: AlgebraElement) -> list:
    return [[_number(z) for z in b.reshape(-1)] for b in a.blocks]


def vector_to_json(f: ModuleVector) -> list:
    return [element_to_json(e) for e in f.entries]


def measure_to_json(space: MeasureSpace) -> dict:
    if space.kind == INTERVAL:
        return {"kind": INTERVAL, "a": space.a, "b": space.b, "rule": space.rule, "m": space.m}
    return {"kind": ATOMIC, "nodes": list(space.nodes), "weights": list(space.weights)}


def frame_to_json(F: Frame, tolerances: Optional[dict] = None) -> dict:
    doc = {
        "algebra": {"block_dims": list(F.shape.block_dims)},
        "rank": F.rank,
        "measure": measure_to_json(F.space),
        "frame": {"samples": [vector_to_json(f) for f in F.values]},
    }
    if tolerances:
        doc["tolerances"] = dict(tolerances)
    return doc


_PAIR = re.compile(r"\[\s*(-?[\d.eE+-]+),\s*(-?[\d.eE+-]+)\s*\]")


def dumps(doc: dict) -> str:
    """Canonical, diff-friendly text form: sorted keys, one [re, im] pair per line."""
    text = json.dumps(doc, sort_keys=True, indent=2)
    return _PAIR.sub(r"[\1, \2]", text) + "\n"


def digest(doc: dict) -> str:
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


# parsing

def _expect(cond: bool, message: str, where: str):
    if not cond:
        raise SpecError(message, where)


def _get(obj: dict, key: str, where: str):
    _expect(isinstance(obj, dict), "expected an object", where)
    _expect(key in obj, f"missing field {key!r}", where)
    return obj[key]


def _real(x, where: str) -> float:
    _expect(isinstance(x, (int, float)) and not isinstance(x, bool), f"expected a number, got {x!r}", where)
    return float(x)


def element_from_json(obj, shape: AlgebraShape, where: str) -> AlgebraElement:
    _expect(isinstance(obj, list) and len(obj) == len(shape.block_dims),
            f"expected {len(shape.block_dims)} blocks", where)
    blocks = []
    for i, (blk, n) in enumerate(zip(obj, shape.block_dims)):
        w = f"{where}[{i}]"
        _expect(isinstance(blk, list) and len(blk) == n * n, f"expected {n * n} [re, im] pairs", w)
        vals = []
        for t, pair in enumerate(blk):
            _expect(isinstance(pair, list) and len(pair) == 2, "expected an [re, im] pair", f"{w}[{t}]")
            vals.append(complex(_real(pair[0], f"{w}[{t}]"), _real(pair[1], f"{w}[{t}]")))
        blocks.append(np.array(vals).reshape(n, n))
    return AlgebraElement(shape, blocks)


def vector_from_json(obj, shape: AlgebraShape, rank: int, where: str) -> ModuleVector:
    _expect(isinstance(obj, list) and len(obj) == rank, f"expected {rank} module entries", where)
    return ModuleVector(shape, tuple(element_from_json(e, shape, f"{where}[{q}]") for q, e in enumerate(obj)))


def measure_from_json(obj, where: str = "measure") -> MeasureSpace:
    kind = _get(obj, "kind", where)
    try:
        if kind == ATOMIC:
            nodes = _get(obj, "nodes", where)
            weights = _get(obj, "weights", where)
            _expect(isinstance(nodes, list) and isinstance(weights, list), "nodes/weights must be lists", where)
            _expect(len(nodes) == len(weights), f"{len(nodes)} nodes but {len(weights)} weights", where)
            return make_atomic([_real(x, f"{where}.nodes") for x in nodes],
                               [_real(w, f"{where}.weights") for w in weights])
        if kind == INTERVAL:
            m = _get(obj, "m", where)
            _expect(isinstance(m, int) and not isinstance(m, bool), "m must be an integer", f"{where}.m")
            return make_interval(_real(_get(obj, "a", where), f"{where}.a"),
                                 _real(_get(obj, "b", where), f"{where}.b"),
                                 obj.get("rule", "gauss-legendre"), m)
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(str(exc), where) from None
    raise SpecError(f"unknown measure kind {kind!r}", f"{where}.kind")


@dataclass
class FrameSpec:
    shape: AlgebraShape
    rank: int
    measure: dict
    frame: dict
    tolerances: dict = field(default_factory=dict)
    document: dict = field(default_factory=dict)

    @property
    def digest(self) -> str:
        return digest(self.document)

    def build(self, quadrature_nodes: Optional[int] = None) -> Frame:
        """Sample the frame map; ``quadrature_nodes`` overrides m for interval measures."""
        measure = dict(self.measure)
        if quadrature_nodes is not None and measure.get("kind") == INTERVAL:
            measure["m"] = int(quadrature_nodes)
        space = measure_from_json(measure)
        frame = self.frame
        if "samples" in frame:
            samples = frame["samples"]
            _expect(isinstance(samples, list), "samples must be a list", "frame.samples")
            _expect(len(samples) == len(space),
                    f"{len(samples)} samples for a measure with {len(space)} nodes", "frame.samples")
            vectors = [vector_from_json(s, self.shape, self.rank, f"frame.samples[{j}]")
                       for j, s in enumerate(samples)]
            return Frame.from_vectors(space, vectors)
        family = _get(frame, "family", "frame")
        _expect(family == "polynomial", f"unknown family {family!r}", "frame.family")
        coeffs = _get(frame, "coefficients", "frame")
        _expect(isinstance(coeffs, list) and coeffs, "coefficients must be a non-empty list",
                "frame.coefficients")
        vectors = [vector_from_json(c, self.shape, self.rank, f"frame.coefficients[{d}]")
                   for d, c in enumerate(coeffs)]
        return Frame.polynomial(space, vectors)


def loads(text: str) -> FrameSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    _expect(isinstance(doc, dict), "top level must be an object", "document")
    algebra = _get(doc, "algebra", "document")
    dims = _get(algebra, "block_dims", "algebra")
    _expect(isinstance(dims, list) and dims and all(isinstance(n, int) and n >= 1 for n in dims),
            "block_dims must be a non-empty list of positive integers", "algebra.block_dims")
    rank = _get(doc, "rank", "document")
    _expect(isinstance(rank, int) and not isinstance(rank, bool) and rank >= 1,
            "rank must be a positive integer", "rank")
    measure = _get(doc, "measure", "document")
    _expect(isinstance(measure, dict), "measure must be an object", "measure")
    frame = _get(doc, "frame", "document")
    _expect(isinstance(frame, dict), "frame must be an object", "frame")
    tolerances = doc.get("tolerances", {})
    _expect(isinstance(tolerances, dict), "tolerances must be an object", "tolerances")
    tolerances = {k: _real(v, f"tolerances.{k}") for k, v in tolerances.items()}
    return FrameSpec(AlgebraShape(tuple(dims)), rank, measure, frame, tolerances, doc)


def load(path) -> FrameSpec:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def ramp_spec(m: int = 16) -> dict:
    """F(w) = sqrt(3) w e on [0, 1] over C + C, a tight frame with A = B = 1."""
    zero = [[[0.0, 0.0]], [[0.0, 0.0]]]
    c1 = [[[3 ** 0.5, 0.0]], [[3 ** 0.5, 0.0]]]
    return {
        "algebra": {"block_dims": [1, 1]},
        "rank": 1,
        "measure": {"kind": INTERVAL, "a": 0.0, "b": 1.0, "rule": "gauss-legendre", "m": m},
        "frame": {"family": "polynomial", "coefficients": [[zero], [c1]]},
    }

