"""Linear codes over finite chain rings.

A code is the row span of a generator matrix over one of the rings in
`rings`.  The standard form groups pivots by ideal level, which for
chain length 2 is the familiar block shape

    [ I_{k1}  A        B   ]
    [ 0       gamma*I  gamma*D ]

and the shape (k1, ..., k_{e-1}) determines |C|.  Duals come from the
block structure when e <= 2 and from brute force otherwise; the Gray
map, defined for the three rings of order 4, is the weight-preserving
bridge to binary codes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rings import ChainRing

ENUM_BUDGET = 1 << 24


def parse_matrix(ring: ChainRing, text: str) -> np.ndarray:
    """Rows separated by newlines or ';', entries by whitespace."""
    rows = []
    for chunk in text.replace(";", "\n").splitlines():
        line = chunk.split("#")[0].strip()
        if not line:
            continue
        rows.append([ring.parse(tok) for tok in line.split()])
    if not rows:
        raise ValueError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return np.array(rows, dtype=np.int64)


def format_matrix(ring: ChainRing, M) -> str:
    return "\n".join(" ".join(ring.format(int(x)) for x in row) for row in np.asarray(M))


class LinearCode:
    """Row span of `rows` over `ring`; rows need not be independent."""

    def __init__(self, ring: ChainRing, rows, require_effective: bool = True):
        rows = np.array(rows, dtype=np.int64)
        if rows.ndim != 2:
            rows = rows.reshape(0, 0) if rows.size == 0 else rows.reshape(1, -1)
        if np.any(rows < 0) or np.any(rows >= ring.size):
            raise ValueError("entry out of range for ring")
        self.ring = ring
        self.rows = rows
        self.n = rows.shape[1]
        if require_effective and self.n and rows.size:
            dead = np.all(rows == 0, axis=0)
            if np.any(dead):
                raise ValueError(f"zero column(s) at {np.nonzero(dead)[0].tolist()}")

    @cached_property
    def standard(self) -> "StandardForm":
        return standard_form(self.ring, self.rows)

    @property
    def shape(self):
        return self.standard.shape

    @property
    def size(self) -> int:
        R = self.ring
        s = 1
        for t, k in enumerate(self.standard.shape):
            s *= R.q ** ((R.e - t) * k)
        return s

    @cached_property
    def words(self) -> np.ndarray:
        return enumerate_words(self)

    def hom_weights(self) -> np.ndarray:
        return self.ring.HOM[self.words].sum(axis=1)

    def min_distance(self) -> int:
        w = self.hom_weights()
        nz = w[w > 0]
        return int(nz.min()) if len(nz) else 0

    def __repr__(self):
        return f"<LinearCode {self.ring.spec} n={self.n} shape={self.standard.shape}>"


@dataclass
class StandardForm:
    ring: ChainRing
    matrix: np.ndarray          # reduced pivot rows, original column order
    shape: tuple                # pivot counts per level 0..e-1
    pivots: list                # (level, row, col) in selection order
    col_perm: list              # pivot columns by level, then the rest

    @property
    def permuted(self) -> np.ndarray:
        return self.matrix[:, self.col_perm]


def standard_form(ring: ChainRing, rows) -> StandardForm:
    """Reduce generator rows to the level-blocked standard form.

    Pivots are chosen globally by minimal ideal level (ties: column,
    then row), normalized to exactly gamma^t, cleared below and reduced
    above modulo gamma^t.  Choosing the global minimum each round keeps
    pivot levels non-decreasing and leaves every level-t row inside
    (gamma^t), which is what the block pattern needs.
    """
    M = np.array(rows, dtype=np.int64)
    if M.ndim != 2:
        M = M.reshape(0, 0)
    m, n = M.shape
    pivots = []
    used = np.zeros(n, dtype=bool)
    r = 0
    while r < m:
        lv = ring.LEVEL[M[r:, :]]
        lv = np.where(used[None, :], ring.e, lv)
        t = int(lv.min()) if lv.size else ring.e
        if t >= ring.e:
            break
        hits = np.argwhere(lv == t)
        c = int(hits[:, 1].min())
        i = int(hits[hits[:, 1] == c][:, 0].min()) + r
        M[[r, i]] = M[[i, r]]
        u = ring.unit_to_gamma(int(M[r, c]))
        M[r] = ring.vmul(np.int64(u), M[r])
        col = M[:, c]
        for j in range(m):
            if j == r:
                continue
            v = int(col[j])
            if j > r:
                diff = v
            else:
                diff = ring.sub(v, int(ring.rep_mod(np.int64(v), t)))
            if diff == 0:
                continue
            b = ring.mul(ring.inv(ring.unit_to_gamma(diff)),
                         ring.pow_gamma(ring.level(diff) - t))
            M[j] = ring.vsub(M[j], ring.vmul(np.int64(b), M[r]))
        pivots.append((t, r, c))
        used[c] = True
        r += 1
    k = len(pivots)
    shape = tuple(sum(1 for t, _, _ in pivots if t == lvl) for lvl in range(ring.e))
    perm = [c for _, _, c in pivots] + sorted(set(range(n)) - {c for _, _, c in pivots})
    return StandardForm(ring, M[:k], shape, pivots, perm)


def enumerate_words(code: LinearCode, budget: int = ENUM_BUDGET) -> np.ndarray:
    """All codewords, each exactly once.

    A pivot row of level t contributes coefficients from a transversal
    of (gamma^{e-t}); triangularity at the pivot columns makes distinct
    coefficient tuples give distinct words.
    """
    R = code.ring
    sf = code.standard
    if code.size * max(code.n, 1) > budget:
        raise ValueError(f"codeword enumeration over budget: |C| = {code.size}")
    W = np.zeros((1, code.n), dtype=np.int64)
    for (t, _, _), row in zip(sf.pivots, sf.matrix):
        coeffs = R.transversal(R.e - t)
        prod = R.vmul(coeffs[:, None, None], row[None, None, :])
        W = R.vadd(W[None, :, :], prod).reshape(-1, code.n)
    return W


def dual_code(code: LinearCode, budget: int = ENUM_BUDGET) -> LinearCode:
    """Annihilator of the code under the standard bilinear form."""
    R = code.ring
    sf = code.standard
    n = code.n
    if R.e == 1:
        k1 = sf.shape[0]
        A = sf.permuted[:, k1:]
        H = np.zeros((n - k1, n), dtype=np.int64)
        H[:, :k1] = R.vneg(A).T
        H[:, k1:] = np.eye(n - k1, dtype=np.int64)
        return _unpermute(R, H, sf.col_perm, n)
    if R.e == 2:
        k1, k2 = sf.shape
        P = sf.permuted
        A = P[:k1, k1:k1 + k2]
        B = P[:k1, k1 + k2:]
        gD = P[k1:, k1 + k2:]
        D = np.array([[_div_gamma(R, int(v)) for v in row] for row in gD],
                     dtype=np.int64).reshape(k2, n - k1 - k2)
        k3 = n - k1 - k2
        H = np.zeros((k3 + k2, n), dtype=np.int64)
        if k3:
            AD = R.matmul(A, D) if k2 else np.zeros((k1, k3), dtype=np.int64)
            H[:k3, :k1] = R.vsub(AD, B).T
            H[:k3, k1:k1 + k2] = R.vneg(D).T
            H[:k3, k1 + k2:] = np.eye(k3, dtype=np.int64)
        if k2:
            H[k3:, :k1] = R.vneg(R.vmul(np.int64(R.gamma), A)).T
            H[k3:, k1:k1 + k2] = R.gamma * np.eye(k2, dtype=np.int64)
        return _unpermute(R, H, sf.col_perm, n)
    # chain length > 2: brute force over the ambient space
    if R.size ** n * n > budget:
        raise ValueError("ambient space too large for brute-force dual")
    amb = np.stack(np.meshgrid(*([R.elements] * n), indexing="ij"), axis=-1).reshape(-1, n)
    syn = np.zeros((len(amb), max(len(sf.matrix), 1)), dtype=np.int64)
    for i, row in enumerate(sf.matrix):
        acc = np.zeros(len(amb), dtype=np.int64)
        for j in range(n):
            acc = R.vadd(acc, R.vmul(amb[:, j], np.int64(row[j])))
        syn[:, i] = acc
    words = amb[np.all(syn == 0, axis=1)]
    return LinearCode(R, words, require_effective=False)


def _div_gamma(R: ChainRing, v: int) -> int:
    if v == 0:
        return 0
    lvl = R.level(v)
    if lvl < 1:
        raise ValueError("entry not divisible by gamma")
    return R.mul(R.inv(R.unit_to_gamma(v)), R.pow_gamma(lvl - 1))


def _unpermute(R: ChainRing, H, perm, n) -> LinearCode:
    out = np.zeros_like(H)
    out[:, perm] = H
    return LinearCode(R, out, require_effective=False)


# ---------------------------------------------------------------------------
# column predicates

def is_regular(code: LinearCode) -> bool:
    """Every coordinate map is onto R, i.e. every column holds a unit."""
    return bool(np.all((code.ring.LEVEL[code.rows] == 0).any(axis=0)))


def column_keys(code: LinearCode) -> list:
    """Canonical key per column: lexicographic minimum over unit multiples."""
    R = code.ring
    keys = []
    for j in range(code.n):
        P = R.vmul(R.units[:, None], code.rows[:, j][None, :])
        idx = np.lexsort(P[:, ::-1].T)
        keys.append(tuple(P[idx[0]].tolist()))
    return keys


def is_projective(code: LinearCode) -> bool:
    """No two columns are unit multiples of each other."""
    keys = column_keys(code)
    return len(set(keys)) == len(keys)


def is_proper(code: LinearCode) -> bool:
    return is_regular(code) and is_projective(code)


def dual_distance_at_least(code: LinearCode, d: int, budget: int = ENUM_BUDGET) -> bool:
    """Check min homogeneous weight of the dual, enumerating it if it is
    small enough, else through the MacWilliams transform (rings of order
    4 only, where the homogeneous enumerator obeys the binary identity)."""
    R = code.ring
    dual_size = R.size ** code.n // code.size
    if dual_size * max(code.n, 1) <= budget:
        dd = dual_code(code).min_distance()
        return dd >= d or dual_size == 1
    if R.size == 4:
        from .spectral import macwilliams_hom, weight_distribution
        B = dict(macwilliams_hom(weight_distribution(code)).entries)
        return all(B.get(j, 0) == 0 for j in range(1, d))
    raise ValueError("dual too large and no MacWilliams route for this ring")


# ---------------------------------------------------------------------------
# Gray map and binary linearity

_GRAY_BITS = np.array([[0, 0], [0, 1], [1, 1], [1, 0]], dtype=np.uint8)


def gray_map(code_or_words, ring: ChainRing | None = None) -> np.ndarray:
    """Isometric Gray image for the order-4 rings (Z4, F2+uF2).

    Encodings 0,1,2,3 map to bit pairs 00,01,11,10; the same table works
    for both rings and sends homogeneous weight to Hamming weight.
    """
    if isinstance(code_or_words, LinearCode):
        ring, words = code_or_words.ring, code_or_words.words
    else:
        words = np.asarray(code_or_words)
    if ring is None or ring.size != 4:
        raise ValueError("Gray map is defined here for rings of order 4")
    bits = _GRAY_BITS[words]
    return bits.reshape(bits.shape[0], -1)


def is_binary_linear(bits) -> tuple[bool, tuple | None]:
    """Is this set of binary words closed under XOR?

    Rank certificate: a set containing 0 of size 2^k is linear iff its
    F_2 span has dimension k.  On failure the witness is a pair of
    indices whose XOR is not in the set.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    packed = [int.from_bytes(np.packbits(row).tobytes(), "big") for row in bits]
    m = len(packed)
    if m & (m - 1):
        linear = False
    else:
        basis = []
        linear = True
        for w in packed:
            for b in basis:
                w = min(w, w ^ b)
            if w:
                basis.append(w)
        basis_count = len(basis)
        linear = (1 << basis_count) == m
    if linear:
        return True, None
    seen = set(packed)
    for i in range(m):
        for j in range(i + 1, m):
            if packed[i] ^ packed[j] not in seen:
                return False, (i, j)
    raise AssertionError("rank said nonlinear but closure scan found no witness")


# ---------------------------------------------------------------------------
# derived codes

def even_weight_subcode(code: LinearCode, budget: int = 1 << 16) -> LinearCode:
    """Submodule of words of even homogeneous weight (unit scaling
    preserves weight, parity is additive over order-4 rings)."""
    if code.size > budget:
        raise ValueError("code too large to sieve for the even subcode")
    W = code.words
    even = W[code.hom_weights() % 2 == 0]
    return LinearCode(code.ring, even, require_effective=False)


def punctured(code: LinearCode, cols) -> LinearCode:
    keep = [j for j in range(code.n) if j not in set(cols)]
    return LinearCode(code.ring, code.rows[:, keep], require_effective=False)


@dataclass
class Replication:
    factor: int
    counts: list        # multiplicity of each distinct column class, in first-seen order
    core: LinearCode    # one copy block: each class kept counts[i] // factor times


def replication(code: LinearCode, factor: int | None = None) -> Replication:
    """Factor the column multiset as `factor` copies of a smaller code.

    Columns are grouped up to unit multiples.  Default factor is the gcd
    of the class multiplicities (the largest valid choice); an explicit
    factor must divide every multiplicity.
    """
    keys = column_keys(code)
    order, counts = [], {}
    for k in keys:
        if k not in counts:
            order.append(k)
            counts[k] = 0
        counts[k] += 1
    cts = [counts[k] for k in order]
    g = math.gcd(*cts) if cts else 1
    if factor is None:
        factor = g
    if factor < 1 or any(c % factor for c in cts):
        raise ValueError(f"{factor} does not divide all column multiplicities {cts}")
    first = {}
    for j, k in enumerate(keys):
        first.setdefault(k, j)
    cols = []
    for k in order:
        cols.extend([first[k]] * (counts[k] // factor))
    core = LinearCode(code.ring, code.rows[:, cols], require_effective=False)
    return Replication(factor, cts, core)
