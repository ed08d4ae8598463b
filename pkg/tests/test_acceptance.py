"""One test per acceptance criterion, each at its stated tolerance and time budget.

Every test records a PASS/FAIL line, printed in the terminal summary.
"""
import contextlib
import json
import time

import numpy as np

from hcframes import algebra as alg
from hcframes import frames as fr
from hcframes.algebra import AlgebraShape
from hcframes.cli import main
from hcframes.generate import SHAPES, random_instance, random_riesz_basis
from hcframes.module import ModuleVector, inner, vec_norm
from hcframes.report import parse_structured
from hcframes.specfile import loads, ramp_spec
from hcframes.theorems import cauchy_schwarz_holds, frame_form, sandwich_holds

from conftest import ACCEPTANCE_LINES

TOL = 1e-9


@contextlib.contextmanager
def criterion(number, title, budget_s):
    detail = {}
    t0 = time.perf_counter()
    try:
        yield detail
        elapsed = time.perf_counter() - t0
        detail["time"] = f"{elapsed:.2f}s/{budget_s:g}s"
        assert elapsed < budget_s, f"took {elapsed:.2f}s, budget {budget_s}s"
    except AssertionError as exc:
        detail.setdefault("time", f"{time.perf_counter() - t0:.2f}s/{budget_s:g}s")
        ACCEPTANCE_LINES.append(f"[FAIL] {number}. {title} ({_fmt(detail)}): {exc}")
        raise
    ACCEPTANCE_LINES.append(f"[PASS] {number}. {title} ({_fmt(detail)})")


def _fmt(detail):
    return ", ".join(f"{k}={v}" for k, v in detail.items())


def instances(seed, n, **kw):
    for child in np.random.SeedSequence(seed).spawn(n):
        rng = np.random.default_rng(child)
        yield rng, random_instance(rng, TOL, **kw)


def test_1_ramp_example():
    with criterion(1, "ramp example is a tight frame with A=B=1", 1.0) as d:
        F = loads(json.dumps(ramp_spec(16))).build()
        diag = fr.diagnose(F, TOL)
        err = max(abs(diag.bounds.lower - 1), abs(diag.bounds.upper - 1))
        d["bound error"] = f"{err:.1e}"
        assert err <= 1e-10, f"bounds {diag.bounds}"
        assert diag.flags.tight


def test_2_bounds_attained():
    with criterion(2, "computed frame bounds are attained by eigenvectors", 10.0) as d:
        worst = 0.0
        for _, F in instances(2, 50):
            b = fr.frame_bounds(F)
            f_lo, f_hi = fr.extremal_vectors(F)
            worst = max(worst,
                        alg.norm(frame_form(F, f_lo) - b.lower * inner(f_lo, f_lo)),
                        alg.norm(frame_form(F, f_hi) - b.upper * inner(f_hi, f_hi)))
        d["worst gap"] = f"{worst:.1e}"
        assert worst <= 1e-8


def test_3_equivalence_chain():
    with criterion(3, "riesz / complete+independent / riesz-type / unique dual agree", 30.0) as d:
        disagree, riesz = [], 0
        for idx, (_, F) in enumerate(instances(3, 100)):
            chain = (
                fr.is_riesz(F, TOL),
                fr.mu_complete(F, TOL) and fr.l2_independent(F, TOL),
                fr.is_riesz_type(F, TOL),
                fr.non_canonical_dual(F, TOL) is None,
            )
            riesz += chain[0]
            if len(set(chain)) != 1:
                disagree.append((idx, chain))
        d["riesz"] = f"{riesz}/100"
        assert not disagree, f"disagreements {disagree}"
        assert 0 < riesz < 100


def test_4_riesz_is_exact():
    with criterion(4, "every Riesz basis is exact; each single removal kills the frame", 30.0) as d:
        worst, removals = 0.0, 0
        for _, F in instances(4, 100, kind="riesz"):
            assert fr.is_riesz(F, TOL)
            assert fr.is_exact(F, TOL)
            B = fr.frame_bounds(F).upper
            for j in range(len(F)):
                # removing the only atom leaves the zero map
                lower = 0.0 if len(F) == 1 else fr.frame_bounds(F.restricted([j])).lower
                worst = max(worst, lower / (1 + B))
                removals += 1
        d["removals"] = removals
        d["worst relative lower bound"] = f"{worst:.1e}"
        assert worst < 1e-9


def test_5_reconstruction():
    with criterion(5, "reconstruction with the canonical dual", 10.0) as d:
        worst = 0.0
        for rng, F in instances(5, 100):
            G = fr.canonical_dual(F, TOL)
            for _ in range(10):
                f = ModuleVector.random(F.shape, F.rank, rng)
                worst = max(worst, vec_norm(f - fr.reconstruct(F, G, f)) / (1 + vec_norm(f)))
        d["worst relative residual"] = f"{worst:.1e}"
        assert worst <= 1e-8


def test_6_second_dual():
    with criterion(6, "non-Riesz frames get a valid second dual", 10.0) as d:
        n, worst_defect, min_dist = 0, 0.0, np.inf
        for kind in ("overcomplete", "degenerate"):
            for _, F in instances(6, 50, kind=kind):
                G = fr.non_canonical_dual(F, TOL)
                assert G is not None
                assert fr.is_dual(F, G, TOL), f"dual defect {fr.dual_defect(F, G):.2e}"
                worst_defect = max(worst_defect, fr.dual_defect(F, G))
                min_dist = min(min_dist, fr.sampled_norm(fr.frame_difference(G, fr.canonical_dual(F, TOL))))
                n += 1
        d["frames"] = n
        d["worst defect"] = f"{worst_defect:.1e}"
        d["min distance"] = f"{min_dist:.3g}"
        assert min_dist >= 1e-3


def test_7_link_operator():
    with criterion(7, "G = S_G K* F for pairs of Riesz bases", 10.0) as d:
        worst = 0.0
        for child in np.random.SeedSequence(7).spawn(25):
            rng = np.random.default_rng(child)
            shape = AlgebraShape(SHAPES[int(rng.integers(len(SHAPES)))])
            k = int(rng.integers(1, max(1, min(3, 16 // shape.dim)) + 1))
            F = random_riesz_basis(rng, shape, k, k)
            G = fr.Frame.from_vectors(F.space, random_riesz_basis(rng, shape, k, k).values)
            K = fr.riesz_link_operator(F, G, TOL)
            for g, h in zip(G.values, fr.link_reconstruction(F, G, K)):
                worst = max(worst, vec_norm(g - h) / (1 + vec_norm(g)))
        d["worst relative error"] = f"{worst:.1e}"
        assert worst <= 1e-8


def test_8_inequality_lemmas():
    with criterion(8, "Cauchy-Schwarz and the TT*/T*T sandwich", 10.0) as d:
        rng = np.random.default_rng(8)
        cs_fail = 0
        for _ in range(200):
            shape = AlgebraShape(SHAPES[int(rng.integers(len(SHAPES)))])
            k = int(rng.integers(1, 4))
            f, g = ModuleVector.random(shape, k, rng), ModuleVector.random(shape, k, rng)
            cs_fail += not cauchy_schwarz_holds(f, g, TOL)
        tt_fail = 0
        for _, F in instances(80, 200):
            tt_fail += not sandwich_holds(fr.frame_operator(F).matrix, alg.norm(fr.gram_realization(F)), TOL)
        vv_fail = 0
        for _, F in instances(81, 200, kind="riesz"):
            gram = fr.gram_realization(F)
            vv_fail += not sandwich_holds(gram, alg.norm(gram), TOL)
        d["failures cs/TT*/T*T"] = f"{cs_fail}/{tt_fail}/{vv_fail}"
        assert cs_fail == tt_fail == vv_fail == 0


def test_9_determinism(tmp_path, capsys):
    with criterion(9, "generate is byte-identical; structured reports are digest-stable", 1.0) as d:
        args = ["generate", "--seed", "42", "--atoms", "5", "--rank", "2", "--blocks", "2,1"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first
        path = tmp_path / "g.spec"
        path.write_text(first)
        digests = []
        for _ in range(2):
            assert main(["analyze", str(path), "--format", "structured"]) in (0, 2)
            out = capsys.readouterr().out.strip().encode()
            parse_structured(out)
            digests.append(json.loads(out)["body_digest"])
        d["body digest"] = digests[0][:12]
        assert digests[0] == digests[1]
