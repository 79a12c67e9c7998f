import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringwalk.rings import (
    Field,
    fqu,
    fqu_trace,
    gr4,
    hensel_lift,
    primitive_modulus,
    ring_from_spec,
    zpm,
)


def test_z4_weights_are_lee():
    assert zpm(2, 2).HOM.tolist() == [0, 1, 2, 1]


def test_z8_weights():
    assert zpm(2, 3).HOM.tolist() == [0, 2, 2, 2, 4, 2, 2, 2]


def test_z9_weights():
    assert zpm(3, 2).HOM.tolist() == [0, 2, 2, 3, 2, 2, 3, 2, 2]


def test_f2u_weights():
    # enc(a + u b) = a + 2b, so u = 2 and 1 + u = 3
    assert fqu(2).HOM.tolist() == [0, 1, 2, 1]


def test_gr4_weights():
    R = gr4(3)
    w = R.HOM
    assert w[0] == 0
    assert np.all(w[R.LEVEL == 0] == 7) and (R.LEVEL == 0).sum() == 56
    assert np.all(w[R.LEVEL == 1] == 8) and (R.LEVEL == 1).sum() == 7


def test_field_weight_is_hamming():
    R = zpm(5, 1)
    assert R.e == 1
    assert R.HOM.tolist() == [0, 1, 1, 1, 1]


@pytest.mark.parametrize("R", [zpm(2, 2), zpm(2, 3), zpm(3, 2), fqu(2), fqu(3), gr4(2)])
def test_unit_count(R):
    assert len(R.units) == (R.q - 1) * R.q ** (R.e - 1)


@pytest.mark.parametrize("R", [zpm(2, 2), zpm(2, 3), zpm(3, 2), fqu(2), fqu(3), gr4(2)])
def test_weight_averages_over_cyclic_modules(R):
    # sum of weights over Rx equals (q-1) q^{e-2} |Rx| for every x != 0
    avg = R.q ** (R.e - 2) * (R.q - 1)
    for x in range(1, R.size):
        mod = np.unique(R.vmul(R.elements, np.int64(x)))
        assert R.HOM[mod].sum() == avg * len(mod)


@pytest.mark.parametrize("R", [zpm(2, 2), zpm(3, 2), zpm(2, 3), fqu(2), fqu(3), fqu(3, 2)])
def test_ring_axioms_exhaustive(R):
    e = R.elements
    a, b, c = e[:, None, None], e[None, :, None], e[None, None, :]
    assert np.array_equal(R.ADD[R.ADD[a, b], c], R.ADD[a, R.ADD[b, c]])
    assert np.array_equal(R.MUL[R.MUL[a, b], c], R.MUL[a, R.MUL[b, c]])
    assert np.array_equal(R.MUL[a, R.ADD[b, c]].squeeze(), R.ADD[R.MUL[a, b], R.MUL[a, c]].squeeze())
    assert np.array_equal(R.ADD[e[:, None], e[None, :]], R.ADD[e[None, :], e[:, None]])
    assert np.array_equal(R.MUL[e[:, None], e[None, :]], R.MUL[e[None, :], e[:, None]])
    assert np.array_equal(R.ADD[e, np.zeros_like(e)], e)
    assert np.array_equal(R.MUL[e, np.ones_like(e)], e)
    assert np.array_equal(R.ADD[e, R.NEG[e]], np.zeros_like(e))


@settings(max_examples=200)
@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_gr4_axioms_sampled(a, b, c):
    R = gr4(3)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, b) == R.add(b, a)
    assert R.add(a, R.neg(a)) == 0


def test_hensel_lift_frozen():
    # x^3 + x + 1 lifts to x^3 + 2x^2 + x + 3
    assert hensel_lift((1, 1, 0, 1)) == (3, 1, 2, 1)


def test_hensel_lift_reduces_mod_2():
    for pf in [(1, 0, 1, 0, 0, 1), (1, 0, 0, 1, 0, 0, 0, 1)]:
        h = hensel_lift(pf)
        assert tuple(c % 2 for c in h) == pf


def test_gr4_teichmuller_order():
    R = gr4(3)
    assert len(R.teich_pow) == 7
    assert R.teich_pow[0] == 1
    assert R.mul(int(R.teich_pow[-1]), R.xi) == 1
    # residues of the Teichmueller set cover the residue field
    assert sorted(R.TEICH.tolist()) == sorted(np.concatenate([[0], R.teich_pow]).tolist())


def test_gr4_frobenius():
    R = gr4(3)
    assert R.FROB[R.xi] == R.mul(R.xi, R.xi)
    for c in range(4):  # Z4 constants are fixed
        assert R.FROB[c] == c
    cur = R.elements
    for _ in range(R.r):
        cur = R.FROB[cur]
    assert np.array_equal(cur, R.elements)


def test_gr4_trace_values():
    R = gr4(3)
    assert R.TRACE[0] == 0
    assert R.TRACE[1] == 3
    counts = np.bincount(R.TRACE, minlength=4)
    assert counts.tolist() == [16, 16, 16, 16]


@settings(max_examples=100)
@given(st.integers(0, 63), st.integers(0, 63))
def test_gr4_trace_is_additive_and_galois_invariant(a, b):
    R = gr4(3)
    assert R.TRACE[R.add(a, b)] == (R.TRACE[a] + R.TRACE[b]) % 4
    assert R.TRACE[R.FROB[a]] == R.TRACE[a]


def test_gr4_big_ring_vectorized_ops():
    R = gr4(6)
    assert not R._dense
    rng = np.random.default_rng(7)
    a, b, c = rng.integers(0, R.size, (3, 500))
    assert np.array_equal(R.vmul(R.vmul(a, b), c), R.vmul(a, R.vmul(b, c)))
    assert np.array_equal(R.vmul(a, R.vadd(b, c)), R.vadd(R.vmul(a, b), R.vmul(a, c)))
    assert np.array_equal(R.vadd(a, R.vneg(a)), np.zeros(500, dtype=np.int64))
    counts = np.bincount(R.TRACE, minlength=4)
    assert counts.tolist() == [1024] * 4


def test_zpm_large_vectorized():
    R = zpm(2, 12)
    assert not R._dense
    assert R.level(0) == 12
    assert R.level(3 * 2 ** 5) == 5
    rng = np.random.default_rng(11)
    a, b = rng.integers(0, R.size, (2, 100))
    assert np.array_equal(R.vadd(a, b), (a + b) % R.size)
    assert np.array_equal(R.vmul(a, b), (a * b) % R.size)


def test_field_f9_trace_and_order():
    F = Field(3, 2)
    assert len(set(F.POW.tolist())) == 8
    assert F.TR[0] == 0
    assert F.TR[1] == 2
    assert F.TR[3] == 2  # x encodes as 3
    assert (F.TR == 0).sum() == 3


def test_field_trace_transitivity_sample():
    F = Field(2, 4)
    # trace is F_2-linear and balanced
    assert np.array_equal(F.TR[F.ADD[np.arange(16)[:, None], np.arange(16)[None, :]]],
                          (F.TR[:, None] + F.TR[None, :]) % 2)
    assert (F.TR == 0).sum() == 8


def test_primitive_modulus_search_fallback():
    mod = primitive_modulus(5, 3)  # not in the table, found by search
    F = Field(5, 3, modulus=mod)
    assert len(set(F.POW.tolist())) == 124


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        Field(2, 2, modulus=(1, 0, 1))  # (x+1)^2 is not irreducible


@pytest.mark.parametrize("R", [zpm(2, 3), zpm(3, 2), fqu(2), fqu(3), gr4(2)])
def test_rep_mod_is_min_of_coset(R):
    for k in range(R.e + 1):
        ideal = R.ideal(k)
        reps = set()
        for a in range(R.size):
            coset = R.vadd(np.int64(a), ideal)
            rep = int(coset.min())
            assert int(R.rep_mod(np.int64(a), k)) == rep
            reps.add(rep)
        assert R.transversal(k).tolist() == sorted(reps)
        assert len(reps) == R.q ** k


@pytest.mark.parametrize("R", [zpm(2, 2), zpm(2, 3), zpm(3, 2), fqu(2), fqu(3, 2), gr4(3)])
def test_units_invert_and_normalize(R):
    for u in R.units.tolist():
        assert R.mul(u, R.inv(u)) == 1
    for a in range(1, R.size):
        u = R.unit_to_gamma(a)
        assert R.mul(u, a) == R.pow_gamma(R.level(a))


@pytest.mark.parametrize("R", [zpm(2, 2), zpm(5, 2), fqu(2), fqu(3), fqu(3, 2), gr4(3)])
def test_parse_format_roundtrip(R):
    for a in range(R.size):
        assert R.parse(R.format(a)) == a


def test_parse_variants():
    assert zpm(2, 2).parse("-1") == 3
    R = fqu(2)
    assert R.parse("X+1") == 3
    assert R.parse("1+X") == 3
    assert R.parse("X") == 2
    G = gr4(3)
    assert G.parse("1") == 1
    assert G.parse("1,0,0") == 1
    assert G.parse("0,1") == 4
    assert G.parse("2,3,1") == 2 + 3 * 4 + 16


def test_ring_from_spec_aliases_and_cache():
    assert ring_from_spec("z4") is zpm(2, 2)
    assert ring_from_spec("f2u") is fqu(2, 1)
    assert ring_from_spec("zpm:3,2") is zpm(3, 2)
    assert ring_from_spec("gr4:3") is gr4(3)
    assert ring_from_spec("fqu:3,2") is fqu(3, 2)
    with pytest.raises(ValueError):
        ring_from_spec("q8")


def test_matmul_over_z4():
    R = zpm(2, 2)
    A = np.array([[1, 2], [0, 3]])
    B = np.array([[1], [1]])
    assert R.matmul(A, B).ravel().tolist() == [3, 3]


def test_fqu_trace():
    big, small = fqu(3, 2), fqu(3, 1)
    vals = fqu_trace(big, small, big.elements)
    counts = np.bincount(vals, minlength=9)
    assert counts.tolist() == [9] * 9
    a, b = np.meshgrid(big.elements, big.elements)
    assert np.array_equal(fqu_trace(big, small, big.vadd(a, b)),
                          small.ADD[fqu_trace(big, small, a), fqu_trace(big, small, b)])
    # u maps to u-multiples: trace of u*1 has zero residue part
    assert fqu_trace(big, small, 9) % 3 == 0
