from fractions import Fraction

import numpy as np
import pytest

from mgtpr.errors import AlignmentError, MissingWeight, StuckTrace
from mgtpr.grammar import parse_lexicon
from mgtpr.harmony import (
    HarmonySeries,
    WeightedLexicon,
    delta_table,
    extract_hmg,
    harmony_filter,
    harmony_series,
    hmerge,
    hmove,
    parse_weighted_lexicon,
    regenerate_series,
    run_hmg,
    tree_harmony,
)
from mgtpr.processor import derive
from mgtpr.schemes import ArithmeticScheme, FractalScheme, make_faithful_scheme

from reference import HARMONY, HMG

SCHEMES = [ArithmeticScheme(), FractalScheme()]


def weighted(lex, name):
    return WeightedLexicon(lex, dict(HMG[name]))


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
def test_series_properties(trace, scheme):
    H = harmony_series(trace, scheme)
    assert len(H) == 9
    assert H[-1] == 0.0
    assert all(h <= 0 for h in H.values)


def test_faithful_series(trace, lex):
    H = harmony_series(trace, make_faithful_scheme(lex))
    assert H[-1] == 0.0 and all(h < 0 for h in H.values[:-1])


def test_stuck_trace_rejected():
    tr = derive(parse_lexicon("=t c ::\nd ::\nt ::\nt ::"))
    with pytest.raises(StuckTrace):
        harmony_series(tr, FractalScheme())


def test_tree_harmony(lex, trace):
    zero = WeightedLexicon(lex)
    for w in trace.states:
        for t in w:
            try:
                assert tree_harmony(t, zero) == 0
            except MissingWeight:
                pass
    c_entry, love = trace.states[0][0], trace.states[0][2]
    assert tree_harmony(c_entry, weighted(lex, "arithmetic")) == 4.76
    assert tree_harmony(love, weighted(lex, "fractal")) == -0.34


def test_hmerge_hmove(lex, trace):
    zero = WeightedLexicon(lex)
    love, deadlines = trace.states[0][2], trace.states[0][5]
    h, t = hmerge(1.5, love, deadlines, zero)
    assert h == 1.5 and t == trace.states[1][-1]
    h, t = hmove(0.0, trace.states[2][-1], weighted(lex, "arithmetic"))
    assert h == pytest.approx(0.77) and t == trace.states[3][-1]


def test_cumulative_harmony(lex, trace):
    hs = run_hmg(trace, weighted(lex, "arithmetic"))
    assert abs(hs[-1] - 6.49) <= 0.03
    assert harmony_filter(hs[-1])
    assert not harmony_filter(-0.1)


@pytest.mark.parametrize("name", ["arithmetic", "fractal"])
def test_extraction_from_reference_series(trace, name):
    W = extract_hmg(trace, HARMONY[name])
    for site, w in HMG[name].items():
        assert abs(float(W.weights[site]) - w) <= 0.02, site
    assert len(W.weights) == len(HMG[name])


@pytest.mark.parametrize("scheme", SCHEMES, ids=lambda s: s.name)
def test_telescoping_and_regeneration(trace, scheme):
    H = harmony_series(trace, scheme)
    W = extract_hmg(trace, H)
    assert sum(W.weights.values()) == -Fraction(H[0])
    assert regenerate_series(trace, W, H[0]) == list(H.values)


def test_constant_series_gives_zero_weights(trace):
    W = extract_hmg(trace, [0.0] * 9)
    assert all(w == 0 for w in W.weights.values())


def test_alignment(trace):
    with pytest.raises(AlignmentError):
        extract_hmg(trace, [0.0] * 4)


def test_render_and_parse(lex, trace):
    W = extract_hmg(trace, HARMONY["arithmetic"])
    text = W.render()
    assert text.splitlines()[0] == "=t@4.76 c ::"
    back = parse_weighted_lexicon(text, lex)
    for site, w in W.weights.items():
        assert back.weights[site] == pytest.approx(float(w), abs=0.005)


def test_csv_outputs(trace):
    H = harmony_series(trace, FractalScheme())
    assert H.to_csv().splitlines()[0] == "step,harmony"
    assert len(delta_table(trace, H).splitlines()) == 9


def test_series_accepts_sequences(trace):
    H = HarmonySeries(tuple(HARMONY["fractal"]), "fractal")
    assert np.allclose(H.deltas()[0], -0.34)
