"""Acceptance criteria, one check per criterion.

Each check prints a single ``PASS``/``FAIL`` line.  Run with ``pytest -s``
to see the lines inline, or run this file directly for a plain report.
"""

from __future__ import annotations

import random
import sys
from fractions import Fraction
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reference import (  # noqa: E402
    DIMENSIONS,
    GOLDEN_OPS,
    GOLDEN_STEPS,
    HARMONY,
    HMG,
    LOVE_CODE,
    STEP1_FRACTAL,
)

from mgtpr.analytics import covariance_pca, pca, trace_matrix, ztransform  # noqa: E402
from mgtpr.binding import bind_string, s as srole  # noqa: E402
from mgtpr.cli import bundled_lexicon_text  # noqa: E402
from mgtpr.fock import FockMachine, filler, represent_string, represent_tree  # noqa: E402
from mgtpr.grammar import parse_lexicon  # noqa: E402
from mgtpr.harmony import extract_hmg, harmony_series, regenerate_series, state_vectors  # noqa: E402
from mgtpr.processor import Status, derive  # noqa: E402
from mgtpr.schemes import ArithmeticScheme, FractalScheme, embedding_depth, encode_string_fractal, make_faithful_scheme  # noqa: E402
from mgtpr.terms import GT, LT, FeatureString, Leaf, Node, cons, extract, first, fs, label, parse_feature, parse_tree, serialize, shift  # noqa: E402
from mgtpr.verify import homomorphism_suite  # noqa: E402

LEX = parse_lexicon(bundled_lexicon_text())


def report(n: int, ok: bool, text: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")


# ---------------------------------------------------------------- checks

def criterion_1():
    t0 = time.perf_counter()
    tr = derive(LEX)
    dt = time.perf_counter() - t0
    trees = [serialize(w[-1]) for w in tr.states[1:]]
    ok = tr.status is Status.SUCCESS and tr.operations == GOLDEN_OPS and trees == GOLDEN_STEPS and dt < 1
    return ok, f"golden derivation ({len(tr.steps)} steps, {'/'.join(tr.operations)}, {dt * 1000:.1f} ms)"


def criterion_2():
    t0 = time.perf_counter()
    checks = homomorphism_suite(LEX, random_count=200)
    dt = time.perf_counter() - t0
    bad = [c.name for c in checks if not c.passed]
    ok = not bad and dt < 10
    return ok, f"exact homomorphism suite, {len(checks)} checks in {dt:.2f} s" + (f"; failing: {bad}" if bad else "")


def criterion_3():
    g = encode_string_fractal(fs("=d v -i :: love"))
    v = FractalScheme().represent(parse_tree(GOLDEN_STEPS[0]))
    ok = abs(g - LOVE_CODE) <= 5e-5 and np.allclose(v, STEP1_FRACTAL, atol=5e-4)
    return ok, f"fractal spot values g(love)={g:.4f}, step 1 = ({', '.join(f'{x:.3f}' for x in v)})"


def criterion_4():
    tr = derive(LEX)
    D = embedding_depth(tr.states)
    dims = {s.name: len(s.represent_state(tr.states[-1], D)) for s in (ArithmeticScheme(), FractalScheme())}
    return dims == DIMENSIONS, f"embedding dimensions {dims}"


def _local_min_at(values, k):
    i = k - 1
    return values[i] < values[i - 1] and values[i] < values[i + 1]


def criterion_5():
    tr = derive(LEX)
    series = {s.name: harmony_series(tr, s).values for s in (ArithmeticScheme(), FractalScheme())}
    err = {n: max(abs(a - b) for a, b in zip(series[n], HARMONY[n])) for n in series}
    primary = all(e <= 0.05 for e in err.values())
    a, f = series["arithmetic"], series["fractal"]
    props = {
        "non-positive": all(h <= 0 for v in series.values() for h in v),
        "final zero": all(v[-1] == 0 for v in series.values()),
        "arithmetic minimum at step 3": _local_min_at(a, 3),
        "fractal decreasing over steps 1-6": all(x > y for x, y in zip(f[:5], f[1:6])),
    }
    fallback = all(props.values())
    detail = ", ".join(f"{n} max deviation {e:.2f}" for n, e in err.items())
    detail += "; fallback properties: " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in props.items())
    return primary or fallback, "harmony table: " + detail


def criterion_6():
    tr = derive(LEX)
    parts = {}
    worst = {}
    for s in (ArithmeticScheme(), FractalScheme()):
        H = harmony_series(tr, s)
        W = extract_hmg(tr, H)
        worst[s.name] = max(abs(float(W.weights.get(k, 0)) - v) for k, v in HMG[s.name].items())
        parts[f"{s.name} telescopes"] = sum(W.weights.values()) == -Fraction(H[0])
        parts[f"{s.name} regenerates"] = regenerate_series(tr, W, H[0]) == list(H.values)
        Wref = extract_hmg(tr, HARMONY[s.name])
        parts[f"{s.name} reference-series extraction"] = all(
            abs(float(Wref.weights[k]) - v) <= 0.02 for k, v in HMG[s.name].items()
        )
    figure_ok = all(w <= 0.02 for w in worst.values())
    ok = figure_ok and all(parts.values())
    detail = ", ".join(f"{n} max weight deviation {w:.2f}" for n, w in worst.items())
    detail += "; " + ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in parts.items())
    return ok, "HMG weights: " + detail


def criterion_7():
    t0 = time.perf_counter()
    rng = random.Random(0)
    feats = [parse_feature(x) for x in ("d", "=d", "+K", "-k", "v")]
    fm = FockMachine(make_faithful_scheme(LEX), LEX)
    ok = {"unbinding": True, "discrimination": True, "order reversal": True,
          "round trip": True, "string oracle": True, "pca oracle": True, "ztransform": True}

    def rand_string():
        return FeatureString(tuple(rng.choice(feats) for _ in range(rng.randint(0, 6))))

    def rand_tree(d):
        if d == 0 or rng.random() < 0.3:
            return Leaf(rand_string())
        return Node(rng.choice([LT, GT]), rand_tree(d - 1), rand_tree(d - 1))

    for _ in range(1000):
        s = rand_string()
        u = represent_string(s)
        ok["unbinding"] &= all(u.unbind(srole(k)) == filler(f) for k, f in enumerate(s, 1))
        b = bind_string(s)
        ok["order reversal"] &= len(b) == len(s) and all(
            any(x.role.index == len(s) - i for x in b if x.filler == f) for i, f in enumerate(s)
        )
        if s:
            ok["string oracle"] &= first(s) == s.items[0] and shift(s).items == s.items[1:]
        t = rand_tree(4)
        simple = isinstance(t, Leaf) and bool(t.label)
        ok["discrimination"] &= (not fm.first(represent_tree(t)).is_zero()) == simple
        if isinstance(t, Node):
            ok["round trip"] &= cons(label("", t), extract(0, t), extract(1, t)) == t
    nprng = np.random.default_rng(0)
    for _ in range(50):
        M = nprng.normal(size=(int(nprng.integers(3, 9)), int(nprng.integers(3, 21))))
        a, c = pca(M, 2), covariance_pca(M, 2)
        ok["pca oracle"] &= np.allclose(a.projections, c.projections, atol=1e-9)
        Z = ztransform(M)
        ok["ztransform"] &= np.allclose(ztransform(Z), Z, atol=1e-9)
    dt = time.perf_counter() - t0
    bad = [k for k, v in ok.items() if not v]
    return not bad and dt < 60, f"property suites in {dt:.2f} s" + (f"; failing: {bad}" if bad else "")


def criterion_8():
    tr = derive(LEX)
    out = []
    good = True
    for s in (ArithmeticScheme(), FractalScheme()):
        res = pca(ztransform(trace_matrix(state_vectors(tr, s))), 2)
        signs = all(res.components[i, np.argmax(np.abs(res.components[i]))] > 0 for i in range(2))
        again = pca(ztransform(trace_matrix(state_vectors(tr, s))), 2)
        good &= res.projections.shape == (9, 2) and signs and np.array_equal(res.projections, again.projections)
        x, y = res.projections[0]
        out.append(f"{s.name} step 1 at ({x:.2f}, {y:.2f})")
    return good, "phase portraits, 9 points each, deterministic signs; " + ", ".join(out)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n):
    ok, text = CRITERIA[n - 1]()
    report(n, ok, text)
    assert ok, text


def main() -> int:
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, text = fn()
        report(n, ok, text)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
