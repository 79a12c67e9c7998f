"""Infinite families: cyclic Kerdock codes, trace codes over F_p+uF_p,
and the generalized Teichmuller parameter oracle.

K^- is built directly as the trace code over GR(4,s) rather than by
puncturing K; that form is cyclic by construction and reproduces the
catalogued n=7 instance exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import (LinearCode, column_keys, gray_map, is_binary_linear,
                    is_projective)
from .graphs import syndrome_graph, unit_expansion
from .rings import _is_prime, fqu, fqu_trace, gr4, zpm
from .spectral import WeightDistribution, weight_distribution


@dataclass(frozen=True)
class KerdockInstance:
    s: int
    minus: LinearCode
    code: LinearCode
    weights: tuple
    wd_minus: WeightDistribution
    wd_full: WeightDistribution

    def graph(self, b: int = 2):
        return syndrome_graph(self.minus.rows, zpm(2, 2), b)

    def gray_witness(self):
        """Pair of codewords whose Gray images break F_2 closure."""
        linear, witness = is_binary_linear(gray_map(self.minus))
        return None if linear else witness

    def record(self) -> dict:
        return {"s": self.s, "n": self.minus.n, "size": self.minus.size,
                "weights": list(self.weights),
                "wd_minus": {int(w): int(a) for w, a in self.wd_minus.entries},
                "wd_full": {int(w): int(a) for w, a in self.wd_full.entries}}


def kerdock(s: int) -> KerdockInstance:
    """Cyclic Kerdock pair (K, K^-) over Z4 for odd s in 3..7.

    K^- = {(Tr(lam xi^t))_{t<2^s-1} : lam in GR(4,s)} with xi a
    Teichmuller generator; K = Z4*j + [G|0] restores the punctured
    coordinate.
    """
    if s % 2 == 0:
        raise ValueError("s must be odd")
    if not 3 <= s <= 7:
        raise ValueError("s out of the supported range 3..7")
    R4 = gr4(s)
    Z4 = zpm(2, 2)
    n = (1 << s) - 1
    rows = np.stack([R4.TRACE[R4.vmul(np.int64(1 << (2 * j)), R4.teich_pow)]
                     for j in range(s)])
    minus = LinearCode(Z4, rows)
    assert minus.size == 4 ** s and minus.shape == (s, 0)
    full_rows = np.vstack([np.ones(n + 1, dtype=np.int64),
                           np.hstack([rows, np.zeros((s, 1), dtype=np.int64)])])
    code = LinearCode(Z4, full_rows)
    assert code.size == 4 ** (s + 1)
    half = 1 << ((s - 1) // 2)
    weights = ((1 << s) - half, 1 << s, (1 << s) + half)
    wd_minus = weight_distribution(minus)
    assert wd_minus.weights() == weights
    return KerdockInstance(s, minus, code, weights, wd_minus,
                           weight_distribution(code))


@dataclass(frozen=True)
class TraceCodeInstance:
    p: int
    m: int
    code: LinearCode
    core: LinearCode
    projective_core: LinearCode
    factor: int
    wd_code: WeightDistribution
    wd_core: WeightDistribution
    core_projective: bool
    omega: tuple
    b_star: int | None

    @property
    def scale(self) -> Fraction:
        # socle-normalized weights; the classical sum rule reads 3(1-1/p)n in it
        return Fraction(1, self.p)

    def record(self) -> dict:
        return {"p": self.p, "m": self.m, "n": self.code.n, "n_core": self.core.n,
                "n_projective": self.projective_core.n, "factor": self.factor,
                "core_projective": self.core_projective, "b_star": self.b_star,
                "wd": {int(w): int(a) for w, a in self.wd_code.entries},
                "wd_core": {int(w): int(a) for w, a in self.wd_core.entries},
                "scale": [self.scale.numerator, self.scale.denominator]}


def trace_code(p: int, m: int) -> TraceCodeInstance:
    """Trace code over F_p+uF_p evaluated on L = Q + uF_{p^m}.

    Q is read as the nonzero squares, which matches the stated length
    (p^{2m}-p^m)/2.  Scalars from F_p^x are squares for even m, so the
    columns replicate with factor p-1; the deduplicated code keeps one
    column per F_p^x orbit.  Deduplication by the full unit group goes
    further (orbits have size p(p-1)), so that code is not projective;
    the genuinely projective quotient is kept alongside it.

    b_star is the loop count that balances the weight-sum rule
    q*S = 3(b + n(q-1)q) on the projective core, or None when no
    nonnegative integer does.  It need not be zero, and for (3,2) it is
    not: the loopless syndrome graph of this family is not 3-SWRG, the
    one with b_star = 3 loops per vertex is.  At (5,2) there is no
    balancing b at all.
    """
    if not _is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if m % 4 != 2:
        raise ValueError("m must be singly even (m = 2 mod 4)")
    if p ** (2 * m) > 3 ** 10:
        raise ValueError("p^{2m} exceeds the enumeration budget")
    big = fqu(p, m)
    small = fqu(p)
    F = big.field
    squares = sorted({int(F.MUL[a, a]) for a in range(1, F.q)})
    L = np.array([s + big.q * f for s in squares for f in range(F.q)],
                 dtype=np.int64)
    rows = np.stack([fqu_trace(big, small, big.vmul(np.int64(p ** j), L))
                     for j in range(m)])
    code = LinearCode(small, rows)
    assert code.size == p ** (2 * m)

    # one representative per F_p^x scalar orbit of evaluation points
    seen, reps = set(), []
    for pos, x in enumerate(L):
        orbit = {int(big.vmul(np.int64(c), x)) for c in range(1, p)}
        key = min(orbit)
        if key not in seen:
            seen.add(key)
            reps.append(pos)
        assert len(orbit) == p - 1
    core = LinearCode(small, rows[:, reps])
    wd_code, wd_core = weight_distribution(code), weight_distribution(core)
    same = [(w // (p - 1), a) for w, a in wd_code.entries]
    assert same == list(wd_core.entries)

    # one column per unit orbit; this is the projective object behind Omega
    first = {}
    for j, key in enumerate(column_keys(core)):
        first.setdefault(key, j)
    pc = LinearCode(small, core.rows[:, sorted(first.values())])
    assert is_projective(pc)
    S = sum(weight_distribution(pc).weights())
    num = p * S - 3 * pc.n * (p - 1) * p
    b_star = num // 3 if num % 3 == 0 and num >= 0 else None
    return TraceCodeInstance(p, m, code, core, pc, p - 1, wd_code, wd_core,
                             is_projective(core),
                             unit_expansion(small, core.rows.T), b_star)


@dataclass(frozen=True)
class TeichmullerParams:
    q: int
    k: int
    s: int
    n: int
    weights: tuple
    counts: tuple
    b: int
    weight_sum: int
    degenerate: bool

    def record(self) -> dict:
        return {"q": self.q, "k": self.k, "s": self.s, "n": self.n,
                "w": list(self.weights), "A": list(self.counts), "b": self.b,
                "S": self.weight_sum, "degenerate": self.degenerate}


def teichmuller_params(q: int, k: int, s: int) -> TeichmullerParams:
    """Parameters of the generalized Teichmuller code over GR(4,r), q = 2^r.

    Pure arithmetic: n = 2^s (q^k-1)/(q-1), the weight and frequency
    triples, and b = 2^s q; checks q*S = 3(b + n(q-1)q) exactly.
    Instances with a vanishing frequency are flagged degenerate.
    """
    r = q.bit_length() - 1
    if q < 2 or q != 1 << r:
        raise ValueError("q must be a power of two")
    if k < 2:
        raise ValueError("k must be >= 2")
    lo = 0 if k % 2 else r
    if s < lo or s > (k - 1) * r or (s - lo) % 2:
        raise ValueError(f"illegal s for (q={q}, k={k}): "
                         f"need s in {{{lo}, {lo + 2}, ..., {(k - 1) * r}}}")
    n = (1 << s) * (q ** k - 1) // (q - 1)
    mid = (1 << s) * q ** k
    delta = 1 << ((s + r * (k - 1)) // 2)    # 2^{s/2} q^{(k-1)/2}
    eps = 1 << ((s + r * (k + 1)) // 2)      # 2^{s/2} q^{(k+1)/2}
    weights = (mid - delta, mid, mid + delta)
    counts = ((q ** k - 1) * (q ** k + eps) // 2, q ** k - 1,
              (q ** k - 1) * (q ** k - eps) // 2)
    assert all(a >= 0 for a in counts)
    assert sum(counts) + 1 == q ** (2 * k)
    b = (1 << s) * q
    S = sum(weights)
    assert q * S == 3 * (b + n * (q - 1) * q)
    return TeichmullerParams(q, k, s, n, weights, counts, b, S,
                             degenerate=counts[2] == 0)
