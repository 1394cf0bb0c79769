import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import c_one, census_measures, w1, w2, w3
from lrsynth.flagcheck import FlagBasis, PrimeField, evaluate, random_flags
from lrsynth.hive_enum import lr_coeff, unique_measure
from lrsynth.measure import SetTriple, add, boundary, boundary_from_sets, sets_of, stub_masses
from lrsynth.skeleton import decompose
from lrsynth.synth import (
    LatticePoly,
    Synthesizer,
    Unsupported,
    combine,
    de_morgan,
    dual_measure,
    dual_set,
    dual_sets,
    normalize,
    parse,
    reduction_data,
    stretched_sets_closed_form,
    synthesize,
    var,
)
from lrsynth.trilattice import Chirality

FLD = PrimeField()


def same_space(p, q, n, seeds=range(3)):
    for seed in seeds:
        fl = random_flags(n, seed, FLD)
        if not evaluate(p, fl) == evaluate(q, fl):
            return False
    return True


def test_dual_set_examples():
    assert dual_set(3, (1, 3)) == (2,)
    assert dual_set(4, (1, 3, 4)) == (3,)


@settings(max_examples=200)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, n)))))
def test_dual_set_is_an_involution(arg):
    n, s = arg
    s = tuple(sorted(s))
    assert dual_set(n, dual_set(n, s)) == s
    assert len(dual_set(n, s)) == n - len(s)


def test_dual_measure_examples():
    d = dual_measure(w2())
    assert d.chirality is Chirality.STAR
    assert sets_of(d) == SetTriple(3, (2,), (2,), (3,))
    assert boundary(dual_measure(d)) == boundary(w2())
    d3 = dual_measure(w3())
    assert sets_of(d3) == SetTriple(4, (3,), (3,), (3,))


def test_reduction_example_with_w1_split_off():
    m = add(w1(), w2())
    d = decompose(m)
    first = [i for i, c in enumerate(d.components) if c.mu == w1()][0]
    red = reduction_data(m, d, first=first)
    assert red.m_prime == w2()
    assert stub_masses(w2())["C"] == [1, 0, 0]
    assert red.positions["C"] == [0, 2, 3]
    assert red.r1 == 3


def test_reduction_bookkeeping_on_census():
    checked = closed = 0
    for s, count, m in census_measures(5):
        if count != 1 or m.is_zero():
            continue
        d = decompose(m)
        if len(d.components) < 2:
            continue
        red = reduction_data(m, d)
        assert red.sets_m_prime.n == red.r1
        assert all(len(x) == red.r1 for x in red.sets_mu1.sets)
        assert red.sets_mu1.n == s.n
        for big, sub, orig in zip(red.sets_mu1.sets, red.sets_m_prime.sets, s.sets):
            assert [big[i - 1] for i in sub] == list(orig)
        ap = stub_masses(red.m_prime)
        formula = stretched_sets_closed_form(red)
        for side, got, want in zip("ABC", formula, red.sets_mu1.sets):
            if ap[side][-1] == 0:
                assert got == want
                closed += 1
        checked += 1
    assert checked > 0 and closed > 0


def test_synthesis_examples():
    assert synthesize(SetTriple(3, (1, 2), (2, 3), (2, 3))).text() == "E2"
    p = synthesize(SetTriple(3, (1, 3), (1, 3), (2, 3)))
    assert same_space(p, combine("join", var(3, "E", 1), var(3, "F", 1)), 3)
    q = synthesize(SetTriple(4, (1, 3, 4), (1, 3, 4), (1, 3, 4)))
    assert same_space(q, combine("join", var(4, "E", 1), var(4, "F", 1), var(4, "G", 1)), 4)


def test_synthesis_rejects_other_coefficients():
    with pytest.raises(Unsupported) as err:
        synthesize(SetTriple(6, (2, 4, 6), (2, 4, 6), (2, 4, 6)))
    assert err.value.coeff == 2
    with pytest.raises(Unsupported):
        synthesize(SetTriple(2, (1,), (1,), (1,)))


def test_synthesis_depth_and_indices():
    for n in range(1, 6):
        synth = Synthesizer()
        for s in c_one(n):
            p = synth(s)
            assert all(0 <= j <= n for _, j in p.variables())
        assert synth.stats.max_depth <= 2 * n


def test_synthesis_is_deterministic():
    s = SetTriple(5, (1, 3, 5), (2, 4, 5), (2, 4, 5))
    if lr_coeff(s) == 1:
        assert synthesize(s) == synthesize(s)


def test_normalize_examples():
    assert normalize(combine("meet", var(6, "E", 2), var(6, "E", 5))).text() == "E2"
    p = combine("meet", var(4, "E", 1), var(4, "F", 3))
    assert normalize(combine("join", p, parse("0", 4))) == normalize(p)
    assert normalize(var(4, "F", 4)).text() == "1"
    assert normalize(var(4, "F", 0)).text() == "0"
    assert normalize(combine("meet", p, p)) == normalize(p)
    assert normalize(parse("E1 ∧ (E1 ∨ F2)", 4)).text() == "E1"


def test_de_morgan_twice_is_identity():
    for n in (3, 4, 5):
        for s in c_one(n)[:20]:
            p = synthesize(s)
            assert de_morgan(de_morgan(p)) == p
            assert same_space(de_morgan(de_morgan(p)), p, n, seeds=[0])


def test_normalize_preserves_meaning():
    for s in c_one(5)[:40]:
        p = Synthesizer()._solve(unique_measure(boundary_from_sets(s)), 1)
        assert same_space(p, normalize(p), 5, seeds=[1])


def _inverse_mod(fld, m):
    n = m.shape[0]
    red, piv = fld.rref(np.hstack([m % fld.p, np.eye(n, dtype=np.int64)]))
    assert piv[:n] == list(range(n))
    return red[:, n:]


def dual_flags(flags):
    out = {}
    for f, fb in flags.items():
        inv = _inverse_mod(FLD, fb.matrix)
        # rows of M^-1 pair to the columns of M; the last j rows annihilate E_{n-j}
        out[f] = FlagBasis(FLD, inv[::-1].T.copy())
    return out


def test_dual_flags_are_annihilators():
    flags = random_flags(5, 3, FLD)
    dual = dual_flags(flags)
    for f in "EFG":
        for j in range(6):
            assert dual[f][j] == flags[f][5 - j].annihilator()


def test_de_morgan_matches_annihilators():
    for n in (3, 4, 5):
        for s in c_one(n)[:25]:
            q = synthesize(s)
            for seed in range(2):
                flags = random_flags(n, seed, FLD)
                lhs = evaluate(q, dual_flags(flags)).annihilator()
                assert lhs == evaluate(de_morgan(q), flags)


def test_poly_json_and_text_round_trip():
    p = synthesize(SetTriple(4, (1, 3, 4), (1, 3, 4), (1, 3, 4)))
    assert LatticePoly.from_json(p.as_json()) == p
    assert same_space(parse(p.text(), 4), p, 4, seeds=[0])
    data = combine("join", var(4, "E", 1), var(4, "F", 1)).as_json()
    assert data["nodes"][-1] == {"op": "join", "args": [0, 1]} and data["root"] == 2


def test_poly_validation():
    with pytest.raises(ValueError):
        LatticePoly(3, (("var", "E", 4),), 0)
    with pytest.raises(ValueError):
        LatticePoly(3, (("meet", 0, 1),), 0)
    with pytest.raises(ValueError):
        LatticePoly(3, (("var", "H", 1),), 0)
