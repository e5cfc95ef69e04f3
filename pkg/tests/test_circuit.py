from fractions import Fraction
from math import sqrt
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcube.circuit import (
    AngleNotQuarterTurn,
    Circuit,
    ClassicalModeViolation,
    LexError,
    Measure,
    MissingPreparation,
    Mix,
    ParseError,
    Prepare,
    Rot,
    WeightsNotNormalized,
    eval_exact,
    eval_json,
    format_circuit,
    parse,
    sample,
    sample_scalar,
    tokenize,
)
from qcube.epistemic import Face, face_state, membership
from qcube.ontic import mixture

CORPUS = sorted((Path(__file__).resolve().parents[1] / "circuits").glob("*.cq"))
Q = Fraction(1, 4)


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def probs(text):
    return {b.key: b.probability for b in eval_exact(parse(text))}


# ---------------------------------------------------------------- lexer

def test_tokenize_examples():
    assert kinds("prepare U # init") == [("KW", "prepare"), ("FACE", "U")]
    toks = tokenize("mix U:1/2, D:1/2")
    assert [t.kind for t in toks] == ["KW", "FACE", "COLON", "RAT", "COMMA", "FACE", "COLON", "RAT"]
    assert toks[3].value == Fraction(1, 2)
    assert kinds("rot w 90") == [("KW", "rot"), ("IDENT", "w"), ("RAT", "90")]
    with pytest.raises(ParseError):
        parse("prepare U\nrot w 90")


def test_token_positions_and_separators():
    toks = tokenize("prepare U\n  measure z; measure x")
    assert [(t.line, t.col) for t in toks] == [(1, 1), (1, 9), (1, 10), (2, 3), (2, 11), (2, 12), (2, 14), (2, 22)]
    assert toks[5].kind == "NEWLINE"
    assert tokenize("rot y −90")[2].value == -90


def test_lex_error_position():
    with pytest.raises(LexError) as e:
        tokenize("prepare U\nmeasure z $")
    assert (e.value.line, e.value.col) == (2, 11)
    assert str(e.value).startswith("2:11:")


# ---------------------------------------------------------------- parser

def test_parse_examples():
    c = parse("prepare U\nrot y 90\nmeasure z")
    assert c == Circuit("full", (Prepare(Face.U), Rot("y", 1), Measure("z")))
    c = parse("mode classical\nmix U:1/3, D:2/3\nmeasure z as bit")
    assert c.mode == "classical"
    assert c.statements[0] == Mix(((Face.U, Fraction(1, 3)), (Face.D, Fraction(2, 3))))
    assert c.measurements == (Measure("z", "bit"),)
    assert parse("prepare U\nrot x -270").statements[1].quarter_turns == -3


@pytest.mark.parametrize("text,err", [
    ("mode classical\nprepare U\nrot x 90", ClassicalModeViolation),
    ("mode classical\nprepare U\nmeasure x", ClassicalModeViolation),
    ("mode classical\nprepare F", ClassicalModeViolation),
    ("prepare U\nrot x 45", AngleNotQuarterTurn),
    ("prepare U\nrot x 360", AngleNotQuarterTurn),
    ("mix U:1/2, D:1/3", WeightsNotNormalized),
    ("mix U:3/2, D:-1/2", WeightsNotNormalized),
    ("measure z", MissingPreparation),
    ("# nothing here\n", MissingPreparation),
    ("prepare U\nprepare D", ParseError),
    ("prepare U measure z", ParseError),
    ("prepare Q", ParseError),
    ("mode quantum\nprepare U", ParseError),
    ("prepare U\nmeasure z as", ParseError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse(text)


def test_parse_error_position():
    with pytest.raises(AngleNotQuarterTurn) as e:
        parse("prepare U\n\nrot x 45")
    assert (e.value.line, e.value.col) == (3, 7)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_corpus_round_trip(path):
    c = parse(path.read_text())
    assert parse(format_circuit(c)) == c


_stmt = st.one_of(
    st.builds(Rot, st.sampled_from("xyz"), st.sampled_from([-3, -2, -1, 1, 2, 3])),
    st.builds(Measure, st.sampled_from("xyz"), st.one_of(st.none(), st.sampled_from(["a", "tag_2", "front"]))),
)


@st.composite
def circuits(draw):
    faces = draw(st.lists(st.sampled_from(list(Face)), min_size=1, max_size=3, unique=True))
    raw = draw(st.lists(st.integers(1, 9), min_size=len(faces), max_size=len(faces)))
    prep = Prepare(faces[0]) if len(faces) == 1 else Mix(tuple((f, Fraction(w, sum(raw))) for f, w in zip(faces, raw)))
    return Circuit("full", (prep, *draw(st.lists(_stmt, max_size=6))))


@given(circuits())
def test_round_trip_property(c):
    assert parse(format_circuit(c)) == c


@given(circuits())
def test_branch_invariants(c):
    branches = eval_exact(c)
    assert sum(b.probability for b in branches) == 1
    assert all(b.probability > 0 for b in branches)
    assert all(membership(b.final_state.p) for b in branches)
    assert len({b.key for b in branches}) == len(branches)


# ---------------------------------------------------------------- exact evaluation

def test_eval_exact_examples():
    assert probs("prepare U; measure z") == {"U": 1}
    assert probs("prepare U; measure x; measure z") == {"F,U": Q, "F,D": Q, "B,U": Q, "B,D": Q}
    assert probs("prepare U; rot y 90; measure x") == {"F": 1}
    assert probs("prepare U; measure z; measure z") == {"U,U": 1}


def test_eval_order_and_final_state():
    bs = eval_exact(parse("prepare U; measure x; measure z"))
    assert [b.key for b in bs] == ["F,U", "F,D", "B,U", "B,D"]
    assert bs[1].final_state.p == face_state(Face.D)
    js = eval_json(parse("prepare U; measure x as a"))
    assert js == {"mode": "full", "branches": [
        {"outcomes": [{"axis": "x", "tag": "a", "face": "F"}], "probability": "1/2", "final_bloch": ["1", "0", "0"]},
        {"outcomes": [{"axis": "x", "tag": "a", "face": "B"}], "probability": "1/2", "final_bloch": ["-1", "0", "0"]},
    ]}


def test_no_measurement_single_branch():
    bs = eval_exact(parse("mix U:1/2, F:1/2\nrot z 90"))
    assert len(bs) == 1 and bs[0].key == "" and bs[0].final_state.bloch == (0, Fraction(1, 2), Fraction(1, 2))


@given(st.fractions(0, 1, max_denominator=30), st.integers(0, 5))
def test_classical_mode_is_a_bit(alpha, n_meas):
    text = f"mode classical\nmix U:{alpha}, D:{1 - alpha}\n" + "measure z\n" * n_meas
    c = parse(text)
    bs = eval_exact(c)
    allowed = {face_state(Face.U), face_state(Face.D), mixture([(alpha, face_state(Face.U)), (1 - alpha, face_state(Face.D))])}
    for b in bs:
        assert b.final_state.p in allowed
        faces = [f for _, _, f in b.outcomes]
        assert len(set(faces)) <= 1  # repeatable once the first z outcome is known
    if n_meas:
        assert {b.key.split(",")[0]: b.probability for b in bs} == {k: v for k, v in {"U": alpha, "D": 1 - alpha}.items() if v}


# ---------------------------------------------------------------- sampling

def test_sampler_agrees_with_scalar_path():
    for path in CORPUS:
        c = parse(path.read_text())
        assert sample(c, 3000, 11) == sample_scalar(c, 3000, 11)


def test_sample_examples():
    assert sample(parse("prepare U; measure z"), 1000, 0) == {"U": 1000}
    n = 100_000
    counts = sample(parse("prepare U; measure x"), n, 123)
    assert abs(counts["F"] / n - 0.5) <= 4 * sqrt(0.25 / n)


def test_sample_determinism_across_workers():
    c = parse("mix U:1/3, R:1/2, B:1/6; measure x; rot y 90; measure z; measure y")
    base = sample(c, 50_000, 5)
    assert sample(c, 50_000, 5) == base
    for w in (2, 3, 8):
        assert sample(c, 50_000, 5, workers=w) == base
    assert sample(c, 50_000, 6) != base


def test_sample_rejects_zero_shots():
    with pytest.raises(ValueError):
        sample(parse("prepare U"), 0, 0)


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_sampler_matches_evaluator(path):
    n = 100_000
    c = parse(path.read_text())
    exact = {b.key: float(b.probability) for b in eval_exact(c)}
    counts = sample(c, n, 2024)
    assert set(counts) <= set(exact)
    for key, p in exact.items():
        sigma = sqrt(p * (1 - p) / n)
        assert abs(counts.get(key, 0) / n - p) <= 5 * sigma + 1e-12
