"""Family constructors: Kerdock pairs, trace codes, Teichmuller parameters."""

from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from ringwalk.catalog import exemplar
from ringwalk.codes import gray_map, is_projective, is_proper, is_regular
from ringwalk.families import kerdock, teichmuller_params, trace_code
from ringwalk.graphs import cayley_graph, is_swrg, ssum_set_check, unit_expansion
from ringwalk.rings import fqu
from ringwalk.spectral import weight_distribution


# ---------------------------------------------------------------------------
# Kerdock

def test_kerdock3_matches_catalog():
    k3 = kerdock(3)
    assert k3.minus.n == 7 and k3.minus.size == 64
    assert k3.minus.shape == (3, 0)
    assert k3.weights == (6, 8, 10)
    assert sum(k3.weights) == 3 * (k3.minus.n + 1)
    ref = exemplar("g_7_1")
    assert dict(k3.wd_minus.entries) == {0: 1, **dict(zip(ref.weights, ref.counts))}
    # the unpunctured code picks up the all-2 word of weight 2^{s+1}
    assert k3.code.size == 256
    assert dict(k3.wd_full.entries) == {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}


def test_kerdock3_graph_certificate():
    g = kerdock(3).graph(b=2)
    assert (g.n_vertices, g.degree, g.b) == (64, 14, 2)
    cert = is_swrg(g, 3)
    assert cert.ok and (cert.lam, cert.mu, cert.nu) == (76, 60, 92)


@pytest.mark.parametrize("s", [3, 5])
def test_kerdock_gray_nonlinear(s):
    inst = kerdock(s)
    i, j = inst.gray_witness()
    bits = gray_map(inst.minus)
    rows = {row.tobytes() for row in bits}
    assert (bits[i] ^ bits[j]).tobytes() not in rows


def test_kerdock5():
    k5 = kerdock(5)
    assert k5.minus.size == 4 ** 5 and k5.code.size == 4 ** 6
    assert dict(k5.wd_minus.entries) == {0: 1, 28: 620, 32: 31, 36: 372}
    g = k5.graph(b=2)
    assert g.n_vertices == 1024
    cert = is_swrg(g, 3)
    assert cert.ok and (cert.lam, cert.mu, cert.nu) == (316, 252, 380)


def test_kerdock7_weights():
    k7 = kerdock(7)
    assert k7.weights == (120, 128, 136)
    assert dict(k7.wd_minus.entries) == {0: 1, 120: 9144, 128: 127, 136: 7112}


@pytest.mark.parametrize("s", [1, 2, 4, 9])
def test_kerdock_rejects(s):
    with pytest.raises(ValueError):
        kerdock(s)


# ---------------------------------------------------------------------------
# trace codes over F_p + uF_p

def oracle_trace_wd():
    """Weight counts of the (3,2) trace code from scratch: F_9 realized
    as F_3[i] with i^2 = -1, trace z + z^3, no shared code with rings."""
    els = [(a, b) for a in range(3) for b in range(3)]

    def mul(z, w):
        (a, b), (c, d) = z, w
        return ((a * c + 2 * b * d) % 3, (a * d + b * c) % 3)

    def tr(z):  # z + z^3 = (a + bi) + (a - bi) = 2a
        return (2 * z[0]) % 3

    nonzero = [z for z in els if z != (0, 0)]
    squares = sorted(set(mul(z, z) for z in nonzero))
    assert len(squares) == 4
    L = [(s, f) for s in squares for f in els]
    counts = Counter()
    for alpha in els:
        for beta in els:
            w = 0
            for sig, phi in L:
                c = tr(mul(alpha, sig))
                d = tr(((mul(alpha, phi)[0] + mul(beta, sig)[0]) % 3,
                        (mul(alpha, phi)[1] + mul(beta, sig)[1]) % 3))
                if c:
                    w += 2
                elif d:
                    w += 3
            counts[w] += 1
    return dict(counts)


def test_trace_code_structure():
    t = trace_code(3, 2)
    assert (t.code.n, t.core.n, t.projective_core.n) == (36, 18, 6)
    assert t.factor == 2 and t.code.size == t.core.size == 81
    assert dict(t.wd_code.entries) == {0: 1, 54: 4, 72: 72, 108: 4}
    assert dict(t.wd_core.entries) == {0: 1, 27: 4, 36: 72, 54: 4}
    assert len(t.wd_core.weights()) == 3
    # unit orbits of evaluation points are larger than the scalar orbits,
    # so the factor-2 dedup still carries repeated columns
    assert t.core_projective is False and not is_projective(t.core)
    assert is_proper(t.projective_core) and is_regular(t.code)
    assert dict(weight_distribution(t.projective_core).entries) == \
        {0: 1, 9: 4, 12: 72, 18: 4}
    assert len(t.omega) == 36
    assert t.omega == unit_expansion(fqu(3), t.code.rows.T)


def test_trace_code_oracle():
    t = trace_code(3, 2)
    assert dict(t.wd_code.entries) == oracle_trace_wd()


def test_trace_code_weight_sums():
    t = trace_code(3, 2)
    # the classical closed forms would put the scaled sum at 3(1-1/p)n;
    # the enumerated distribution misses it by exactly one socle unit
    # per weight, which is what b_star repairs
    scaled = sum(Fraction(w) * t.scale for w in t.wd_core.weights())
    target = 3 * (1 - t.scale) * t.core.n
    assert target == 36 and scaled == 39
    assert t.b_star == 3


def test_trace_code_sum_set():
    t = trace_code(3, 2)
    R = fqu(3)
    plain = ssum_set_check(R, t.omega, 3)
    assert not plain.ok and plain.sigma0 == 729 and plain.sigma1 is None
    fixed = ssum_set_check(R, t.omega, 3, include_zero=t.b_star)
    assert fixed.ok and (fixed.sigma0, fixed.sigma1) == (837, 648)
    cert = is_swrg(cayley_graph(R, t.omega, b=t.b_star), 3)
    assert cert.ok and (cert.lam, cert.mu, cert.nu) == (837, 648, 675)
    assert not is_swrg(cayley_graph(R, t.omega, b=0), 3).ok


def test_trace_code_5_2():
    t = trace_code(5, 2)
    assert (t.code.n, t.core.n, t.projective_core.n) == (300, 75, 15)
    assert t.factor == 4
    assert t.wd_code.weights() == (1000, 1200, 1500)
    assert [(w // 4, a) for w, a in t.wd_code.entries] == list(t.wd_core.entries)
    # q*S = 925 is not divisible by 3: no loop count can balance here
    assert t.b_star is None


@pytest.mark.parametrize("p,m", [(2, 2), (4, 2), (3, 3), (3, 4), (3, 6), (7, 6)])
def test_trace_rejects(p, m):
    with pytest.raises(ValueError):
        trace_code(p, m)


# ---------------------------------------------------------------------------
# Teichmuller parameters

def test_teichmuller_examples():
    t = teichmuller_params(2, 3, 0)
    assert (t.n, t.weights, t.counts) == (7, (6, 8, 10), (42, 7, 14))
    assert (t.b, t.weight_sum, t.degenerate) == (2, 24, False)
    t = teichmuller_params(4, 3, 0)
    assert (t.n, t.counts, t.b) == (21, (2520, 63, 1512), 4)
    t = teichmuller_params(2, 3, 2)
    assert t.counts[2] == 0 and t.degenerate
    assert (t.n, t.weights) == (28, (28, 32, 36))
    t = teichmuller_params(8, 2, 3)
    assert (t.n, t.weights) == (72, (504, 512, 520))
    assert t.degenerate  # s = r(k-1) collapses the third frequency


def legal_s(r, k):
    lo = 0 if k % 2 else r
    return range(lo, (k - 1) * r + 1, 2)


def test_teichmuller_identity_sweep():
    for q in (2, 4, 8):
        r = q.bit_length() - 1
        for k in (2, 3, 4):
            hit = 0
            for s in legal_s(r, k):
                t = teichmuller_params(q, k, s)
                hit += 1
                assert t.b == (1 << s) * q
                assert q * t.weight_sum == 3 * (t.b + t.n * (q - 1) * q)
                assert sum(t.counts) + 1 == q ** (2 * k)
                assert t.weights[0] < t.weights[1] < t.weights[2]
                assert all(a >= 0 for a in t.counts)
                assert t.degenerate == (s == r * (k - 1))
            assert hit >= 1


@pytest.mark.parametrize("q,k,s", [(2, 3, 1), (2, 3, 4), (4, 2, 0), (4, 2, 3),
                                   (3, 3, 0), (6, 2, 2), (2, 1, 0)])
def test_teichmuller_rejects(q, k, s):
    with pytest.raises(ValueError):
        teichmuller_params(q, k, s)
