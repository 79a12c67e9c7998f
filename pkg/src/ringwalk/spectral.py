"""Weight enumeration and the arithmetic around it.

Weight distributions, the binary MacWilliams transform (rings of order
4, where homogeneous weight transports to Hamming weight), Pless power
moments, the parametric solver for three-weight distributions, the
feasibility scans behind the parameter tables, and the exact eigenvalue
conditions for s-sum sets.

All arithmetic is exact: counts and moment solutions are Fractions,
eigenvalue conditions are evaluated in big integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class WeightDistribution:
    """Sorted (weight, frequency) pairs of a code, zero weight included.

    q and e describe the underlying chain ring when known; scale is an
    optional rational unit carried for families whose natural weights
    differ from the homogeneous normalization by a constant factor.
    """

    n: int
    size: int
    entries: tuple[tuple[int, int], ...]
    q: int | None = None
    e: int | None = None
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        ent = tuple(sorted((int(w), int(a)) for w, a in self.entries))
        object.__setattr__(self, "entries", ent)
        if sum(a for _, a in ent) != self.size:
            raise ValueError("frequencies do not sum to the code size")
        if any(a <= 0 for _, a in ent) or any(w < 0 for w, _ in ent):
            raise ValueError("weights and frequencies must be non-negative")
        if ent and ent[0][0] == 0 and ent[0][1] != 1:
            raise ValueError("zero weight must have frequency 1")
        if self.q is not None and self.e is not None:
            top = self.n * self.q ** (self.e - 1)
            if any(w > top for w, _ in ent):
                raise ValueError("weight exceeds n*q^(e-1)")

    def counts(self) -> dict:
        return dict(self.entries)

    def nonzero(self) -> tuple[tuple[int, int], ...]:
        return tuple((w, a) for w, a in self.entries if w > 0)

    def weights(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.nonzero())


def weight_distribution(code) -> WeightDistribution:
    from collections import Counter

    cnt = Counter(int(w) for w in code.hom_weights())
    R = code.ring
    return WeightDistribution(code.n, code.size, tuple(cnt.items()), q=R.q, e=R.e)


def three_weight(obj):
    """The (w1,w2,w3) of a three-weight code/distribution, else None."""
    wd = obj if isinstance(obj, WeightDistribution) else weight_distribution(obj)
    w = wd.weights()
    return w if len(w) == 3 else None


# ---------------------------------------------------------------------------
# MacWilliams over the Gray image

def krawtchouk(N: int, j: int, w: int) -> int:
    return sum(
        (-1) ** t * math.comb(w, t) * math.comb(N - w, j - t)
        for t in range(max(0, j - (N - w)), min(j, w) + 1)
    )


def macwilliams_hom(wd: WeightDistribution, dual_size: int | None = None) -> WeightDistribution:
    """Dual homogeneous distribution through the binary transform.

    Valid for the order-4 chain rings, where the Gray isometry turns the
    homogeneous enumerator into a binary Hamming enumerator of length
    2n.  Raises if the transform output is not a non-negative integer
    vector, which signals an inconsistent input distribution.
    """
    if (wd.q, wd.e) != (2, 2):
        raise ValueError("homogeneous MacWilliams transform needs a ring of order 4")
    N = 2 * wd.n
    M = wd.size
    if dual_size is None:
        dual_size = (1 << N) // M
    out = []
    for j in range(N + 1):
        bj = Fraction(sum(a * krawtchouk(N, j, w) for w, a in wd.entries), M)
        if bj.denominator != 1 or bj < 0:
            raise ValueError(f"transform coefficient B_{j} = {bj} is not in N_0")
        if bj:
            out.append((j, int(bj)))
    return WeightDistribution(wd.n, dual_size, tuple(out), q=wd.q, e=wd.e)


@dataclass(frozen=True)
class PowerMoments:
    size: int
    n: int
    b2: Fraction
    b3: Fraction


def power_moments(wd, n: int | None = None, k1: int | None = None,
                  k2: int | None = None) -> PowerMoments:
    """Solve the four Pless power moments (B1 = 0) for B2 and B3.

    Works on the Gray image: length N = 2n, M words.  The first two
    moments are parameter-free and raise when violated; the last two
    return the implied B2 and B3 as exact rationals.
    """
    is_wd = isinstance(wd, WeightDistribution)
    entries = wd.entries if is_wd else tuple(wd.items())
    if n is None:
        if not is_wd:
            raise ValueError("length n required for a bare weight dict")
        n = wd.n
    M = 2 ** (2 * k1 + (k2 or 0)) if k1 is not None else wd.size
    if is_wd and M != wd.size:
        raise ValueError("shape disagrees with the recorded code size")
    s0 = sum(a for w, a in entries if w > 0)
    s1 = sum(Fraction(a) * w for w, a in entries)
    s2 = sum(Fraction(a) * w * w for w, a in entries)
    s3 = sum(Fraction(a) * w ** 3 for w, a in entries)
    if s0 != M - 1:
        raise ValueError(f"zeroth moment: {s0 + 1} words vs M = {M}")
    if s1 != Fraction(M) * n:
        raise ValueError(f"first moment: sum w*A = {s1} but M*n = {M * n}")
    b2 = 2 * s2 / M - n * (2 * n + 1)
    b3 = 2 * n * b2 - (4 * s3 / M - 2 * n * n * (2 * n + 3)) / 3
    return PowerMoments(M, n, b2, b3)


# ---------------------------------------------------------------------------
# parametric three-weight solver

@dataclass(frozen=True)
class TriplePrediction:
    n: int
    y: int
    weights: tuple[int, int, int]
    a1: Fraction
    a2: Fraction
    a3: Fraction
    b3: Fraction

    @property
    def admissible(self) -> bool:
        ints = all(x.denominator == 1 for x in (self.a1, self.a2, self.a3, self.b3))
        return ints and min(self.a1, self.a2, self.a3) >= 1 and self.b3 >= 0

    def counts(self) -> tuple[int, int, int]:
        return (int(self.a1), int(self.a2), int(self.a3))


def predict_three_weight(n: int, y: int, w1: int, w2: int, w3: int) -> TriplePrediction:
    """Frequencies of a hypothetical three-weight code with |C| = 2y.

    Solves the first three power moments (with B1 = B2 = 0) for the
    A_i and the fourth for B3; admissibility of the result is a flag,
    never an error.
    """
    if not w1 < w2 < w3:
        raise ValueError("weights must be strictly increasing")
    ws = (w1, w2, w3)
    a = []
    for i in range(3):
        wi = ws[i]
        wj, wk = (ws[j] for j in range(3) if j != i)
        num = y * (2 * n * n - 2 * n * wj - 2 * n * wk + 2 * wj * wk + n) - wj * wk
        den = (wi - wj) * (wi - wk)
        a.append(Fraction(num, den))
    M = 2 * y
    s3 = sum(ai * w ** 3 for ai, w in zip(a, ws))
    b3 = -(4 * s3 / M - 2 * n * n * (2 * n + 3)) / 3
    return TriplePrediction(n, y, ws, a[0], a[1], a[2], b3)


# ---------------------------------------------------------------------------
# feasibility scans

@dataclass(frozen=True)
class FeasibleTriple:
    n: int
    klass: int | None          # 2*k1 + k2, None in the weight-sum-only mode
    weights: tuple[int, int, int]
    counts: tuple[int, int, int] | None
    b3: int | None
    s: int                     # S = w1 + w2 + w3
    b: int | None              # loop count with S = 3(b + 2n)/2, if integral >= 0

    def record(self) -> dict:
        return {
            "n": self.n,
            "class": self.klass,
            "w": list(self.weights),
            "A": list(self.counts) if self.counts else None,
            "B3": self.b3,
            "S": self.s,
            "b": self.b,
        }


def _implied_b(s: int, n: int) -> int | None:
    # S = 3(b + n(q-1)q^{e-1})/q at q = 2, e = 2
    num = 2 * s - 6 * n
    if num >= 0 and num % 3 == 0:
        return num // 3
    return None


def _s_filter_ok(s: int, n: int, s_filter: str | None) -> bool:
    if s_filter is None:
        return True
    if s_filter == "3n":
        return s == 3 * n
    if s_filter == "mod3":
        return s >= 3 * n and s % 3 == 0
    raise ValueError(f"unknown S-filter {s_filter!r}")


def feasible_triples(n: int, classes=None, *, s_filter: str = "mod3",
                     sum_exactly: int | None = None,
                     even_length_rule: bool = True,
                     macwilliams_rule: bool = False) -> list[FeasibleTriple]:
    """Weight triples 1 <= w1 < w2 < w3 <= 2n passing the arithmetic sieve.

    With ``sum_exactly`` the function only enumerates triples of the
    given weight sum (no frequency conditions at all).  Otherwise each
    triple must admit, for some class 2k1+k2 (restricted to ``classes``
    when given), frequencies A_i >= 1 and B3 >= 0 that are integral.
    The even-length exclusion (S = 3n forces n even when d-perp >= 3)
    is proved and applied by default.  ``macwilliams_rule`` is a
    strictly stronger opt-in sieve: it drops any triple whose full
    binary transform leaves N_0, which removes parameter sets that the
    moment conditions alone cannot decide.
    """
    if classes is not None:
        classes = tuple(classes)
    out = []
    if sum_exactly is not None:
        for w1 in range(1, 2 * n + 1):
            for w2 in range(w1 + 1, 2 * n + 1):
                w3 = sum_exactly - w1 - w2
                if w2 < w3 <= 2 * n:
                    out.append(FeasibleTriple(n, None, (w1, w2, w3), None, None,
                                              sum_exactly, _implied_b(sum_exactly, n)))
        return out
    for w1 in range(1, 2 * n + 1):
        for w2 in range(w1 + 1, 2 * n + 1):
            for w3 in range(w2 + 1, 2 * n + 1):
                s = w1 + w2 + w3
                if not _s_filter_ok(s, n, s_filter):
                    continue
                if even_length_rule and s == 3 * n and n % 2:
                    continue
                v2 = sum(_v2(w) for w in (w1, w2, w3))
                ks = classes if classes is not None else range(2, v2 + 3)
                for k in ks:
                    if k < 2 or (w1 * w2 * w3) % (1 << max(k - 2, 0)):
                        continue
                    pred = predict_three_weight(n, 1 << (k - 1), w1, w2, w3)
                    if not pred.admissible:
                        continue
                    if macwilliams_rule:
                        entries = ((0, 1),) + tuple(zip((w1, w2, w3), pred.counts()))
                        try:
                            macwilliams_hom(WeightDistribution(n, 2 << (k - 1), entries,
                                                               q=2, e=2))
                        except ValueError:
                            continue
                    out.append(FeasibleTriple(n, k, (w1, w2, w3), pred.counts(),
                                              int(pred.b3), s, _implied_b(s, n)))
    return out


def _v2(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class ExceptionalHit:
    n: int
    weights: tuple[int, int, int]
    y: int
    counts: tuple[int, int, int]
    b3: int
    macwilliams_ok: bool

    def record(self) -> dict:
        return {"n": self.n, "w": list(self.weights), "y": self.y,
                "A": list(self.counts), "B3": self.b3,
                "macwilliams_ok": self.macwilliams_ok}


def exceptional_scan(n_max: int) -> list[ExceptionalHit]:
    """Arithmetically admissible tuples with S = 3n but w2 != n.

    These are the obstructions to concluding w2 = n from the power
    moments alone.  The full binary MacWilliams non-negativity check is
    recorded as a flag on each hit, never used as a filter: a tuple
    failing it is still a genuine solution of the moment conditions.
    """
    hits = []
    for n in range(2, n_max + 1):
        for w1 in range(1, n):
            for w2 in range(w1 + 1, 2 * n + 1):
                w3 = 3 * n - w1 - w2
                if not (w2 < w3 <= 2 * n) or w2 == n:
                    continue
                v2 = sum(_v2(w) for w in (w1, w2, w3))
                for k in range(2, v2 + 3):
                    pred = predict_three_weight(n, 1 << (k - 1), w1, w2, w3)
                    if not pred.admissible:
                        continue
                    entries = ((0, 1),) + tuple(zip((w1, w2, w3), pred.counts()))
                    wd = WeightDistribution(n, 2 << (k - 1), entries, q=2, e=2)
                    try:
                        macwilliams_hom(wd)
                        ok = True
                    except ValueError:
                        ok = False
                    hits.append(ExceptionalHit(n, (w1, w2, w3), 1 << (k - 1),
                                               pred.counts(), int(pred.b3), ok))
    return hits


# ---------------------------------------------------------------------------
# eigenvalue conditions

def predicted_spectrum(wd: WeightDistribution, b: int) -> tuple[tuple[int, int], ...]:
    """Spectrum (eigenvalue, multiplicity) of the coset graph with b loops.

    Weight w contributes theta = b + n(q-1)q^{e-1} - q*w with
    multiplicity A_w; the zero weight gives the valency eigenvalue.
    """
    if wd.q is None or wd.e is None:
        raise ValueError("distribution lacks ring data (q, e)")
    top = b + wd.n * (wd.q - 1) * wd.q ** (wd.e - 1)
    spec = [(top - wd.q * w, a) for w, a in wd.entries]
    return tuple(sorted(spec, reverse=True))


def walk_form(thetas, s: int) -> int:
    """(t2-t3)t1^s + (t3-t1)t2^s + (t1-t2)t3^s, exactly."""
    t1, t2, t3 = thetas
    return (t2 - t3) * t1 ** s + (t3 - t1) * t2 ** s + (t1 - t2) * t3 ** s


def restricted_eigenvalues(n: int, q: int, e: int, b: int, weights) -> tuple[int, int, int]:
    w1, w2, w3 = weights
    if not w1 < w2 < w3:
        raise ValueError("weights must be strictly increasing")
    top = b + n * (q - 1) * q ** (e - 1)
    return (top - q * w1, top - q * w2, top - q * w3)


def ssum_condition(n: int, q: int, e: int, b: int, s: int, weights) -> bool:
    """Does the three-weight triple satisfy the s-sum-set eigenvalue identity?

    The restricted eigenvalues are theta_i = b + n(q-1)q^{e-1} - q*w_i;
    the identity is the vanishing of `walk_form`, which for s = 3
    collapses to theta_1 + theta_2 + theta_3 = 0.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    return walk_form(restricted_eigenvalues(n, q, e, b, weights), s) == 0


def odd_s_family_check(n: int, q: int, e: int, weights) -> bool:
    """Loopless family condition: sum sets for every odd s > 1.

    Holds iff w2 = n(q-1)q^{e-2} and w1 + w3 = 2n(q-1)q^{e-2}, i.e. the
    b = 0 eigenvalues are symmetric around theta_2 = 0.
    """
    w1, w2, w3 = weights
    mid = n * (q - 1) * q ** (e - 2)
    return w2 == mid and w1 + w3 == 2 * mid


def uniqueness_guard(n: int, q: int, e: int, b: int, weights) -> bool:
    """True when the triple can pass ssum_condition for at most one s.

    The only escape is a centrally symmetric spectrum (theta_2 = 0 and
    theta_1 = -theta_3), which passes for every odd s.
    """
    t1, t2, t3 = restricted_eigenvalues(n, q, e, b, weights)
    return not (t2 == 0 and t1 + t3 == 0)
