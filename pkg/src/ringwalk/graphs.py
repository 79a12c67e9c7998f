"""Cayley graphs of codes, exact walk counting, and sum-set checks.

The vertex set of a syndrome graph is the column span of a check
matrix over a chain ring; two syndromes are adjacent when they differ
by a unit multiple of a column.  Everything downstream (SWRG
certificates, spectrum certification, s-fold convolution) is computed
in exact integer arithmetic; no floating-point eigensolver is ever
involved.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .codes import ENUM_BUDGET, LinearCode, column_keys, enumerate_words, parse_matrix
from .rings import ChainRing

VERTEX_BUDGET = 1 << 16

# int64 matmul is safe while max|a| * max|b| * inner stays below this
_SAFE = 1 << 62


def _vectors(ring: ChainRing, vecs) -> np.ndarray:
    arr = np.array(sorted(tuple(int(x) for x in v) for v in vecs), dtype=np.int64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("need a non-empty family of equal-length vectors")
    if arr.min() < 0 or arr.max() >= ring.size:
        raise ValueError("entry out of range for ring")
    return arr


def _radix(ring: ChainRing, k: int) -> np.ndarray:
    return ring.size ** np.arange(k - 1, -1, -1, dtype=np.int64)


def unit_expansion(ring: ChainRing, vectors) -> tuple:
    """All distinct unit multiples of the given vectors, zero dropped."""
    out = set()
    for v in np.atleast_2d(np.asarray(list(vectors), dtype=np.int64)):
        for u in ring.units:
            w = tuple(int(x) for x in ring.vmul(np.int64(u), v))
            if any(w):
                out.add(w)
    return tuple(sorted(out))


def _closure(ring: ChainRing, gens: np.ndarray, budget: int) -> np.ndarray:
    """Additive span of `gens`, grown breadth-first from 0."""
    k = gens.shape[1]
    known = {(0,) * k}
    frontier = np.zeros((1, k), dtype=np.int64)
    while len(frontier):
        fresh = []
        for g in gens:
            for row in ring.vadd(frontier, g):
                t = tuple(int(x) for x in row)
                if t not in known:
                    known.add(t)
                    fresh.append(t)
        if len(known) > budget:
            raise ValueError(f"vertex budget exceeded ({budget})")
        frontier = np.array(fresh, dtype=np.int64).reshape(len(fresh), k)
    return np.array(sorted(known), dtype=np.int64)


class CayleyGraph:
    """Immutable Cayley graph on a subgroup of R^k with b loops per vertex."""

    def __init__(self, ring: ChainRing, elements: np.ndarray, gens: tuple,
                 b: int, projective: bool | None, connected: bool,
                 warning: str | None = None):
        self.ring = ring
        self.elements = elements
        self.gens = gens
        self.b = int(b)
        self.projective = projective
        self.connected = connected
        self.warning = warning
        v, k = elements.shape
        radix = _radix(ring, k)
        self._keys = elements @ radix
        A = np.zeros((v, v), dtype=np.int8)
        rows = np.arange(v)
        for g in gens:
            shifted = ring.vadd(elements, np.asarray(g, dtype=np.int64))
            cols = np.searchsorted(self._keys, shifted @ radix)
            A[rows, cols] = 1
        A.setflags(write=False)
        elements.setflags(write=False)
        self.adjacency = A

    @property
    def n_vertices(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return len(self.gens)

    def index(self, vector) -> int:
        key = int(np.asarray(vector, dtype=np.int64) @ _radix(self.ring, self.elements.shape[1]))
        i = int(np.searchsorted(self._keys, key))
        if i == len(self._keys) or self._keys[i] != key:
            raise KeyError(f"{vector} is not a vertex")
        return i

    def matrix(self) -> np.ndarray:
        """Walk matrix A + bI."""
        M = self.adjacency.astype(np.int64)
        if self.b:
            M[np.diag_indices_from(M)] += self.b
        return M

    def export(self, spectrum=None) -> str:
        """JSON header line followed by one `i j` line per edge."""
        head = {"vertices": self.n_vertices, "degree": self.degree, "b": self.b,
                "spectrum": None if spectrum is None
                else [[int(t), int(m)] for t, m in spectrum]}
        lines = [json.dumps(head)]
        for i, j in np.argwhere(np.triu(self.adjacency, 1)):
            lines.append(f"{i} {j}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"<CayleyGraph {self.ring.spec} v={self.n_vertices} "
                f"deg={self.degree} b={self.b}>")


def cayley_graph(ring: ChainRing, gens, b: int = 0, *, full_space: bool = False,
                 budget: int = VERTEX_BUDGET) -> CayleyGraph:
    """Graph of an explicit symmetric connection set.

    With ``full_space`` the vertex set is all of R^k even when the
    connection set spans a proper subgroup; the graph is then
    disconnected and carries a warning.
    """
    garr = _vectors(ring, gens)
    gset = {tuple(int(x) for x in g) for g in garr}
    if (0,) * garr.shape[1] in gset:
        raise ValueError("connection set contains zero")
    for g in garr:
        if tuple(int(x) for x in ring.vneg(g)) not in gset:
            raise ValueError("connection set is not symmetric")
    span = _closure(ring, garr, budget)
    if full_space:
        k = garr.shape[1]
        if ring.size ** k > budget:
            raise ValueError(f"vertex budget exceeded ({budget})")
        mesh = np.meshgrid(*([ring.elements] * k), indexing="ij")
        elements = np.stack([m.ravel() for m in mesh], axis=1).astype(np.int64)
        elements = elements[np.lexsort(elements.T[::-1])]
    else:
        elements = span
    connected = len(span) == len(elements)
    warning = None if connected else "disconnected: connection set spans a proper subgroup"
    return CayleyGraph(ring, elements, tuple(sorted(gset)), b,
                       projective=None, connected=connected, warning=warning)


def syndrome_graph(H, ring: ChainRing, b: int = 0, *,
                   budget: int = VERTEX_BUDGET) -> CayleyGraph:
    """Cayley graph on the column span of H, connection set {u h_i}.

    Columns that are non-regular or repeat up to a unit are allowed but
    mark the graph as non-projective; the degree then falls short of
    n(q-1)q^{e-1}.
    """
    if isinstance(H, str):
        H = parse_matrix(ring, H)
    H = np.asarray(H, dtype=np.int64)
    if H.ndim != 2 or H.size == 0:
        raise ValueError("check matrix must be a non-empty 2d array")
    holder = LinearCode(ring, H, require_effective=False)
    regular = bool(np.all((ring.LEVEL[H] == 0).any(axis=0)))
    keys = column_keys(holder)
    projective = regular and len(set(keys)) == len(keys)
    gens = unit_expansion(ring, H.T)
    if not gens:
        elements = np.zeros((1, H.shape[0]), dtype=np.int64)
    else:
        elements = _closure(ring, np.array(gens, dtype=np.int64), budget)
    return CayleyGraph(ring, elements, gens, b, projective=projective,
                       connected=True)


# ---------------------------------------------------------------------------
# exact matrix powers

def _matmul(a: np.ndarray, b: np.ndarray, threads: int = 1) -> np.ndarray:
    bound = int(abs(a).max(initial=0)) * int(abs(b).max(initial=0)) * a.shape[1]
    if bound >= _SAFE:
        return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    if threads > 1 and a.shape[0] >= 256:
        blocks = np.array_split(np.arange(a.shape[0]), threads)
        out = np.empty((a.shape[0], b.shape[1]), dtype=np.int64)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for rows, part in zip(blocks, pool.map(lambda r: a[r] @ b, blocks)):
                out[rows] = part
        return out
    return a @ b


def _power(M: np.ndarray, s: int, threads: int = 1) -> np.ndarray:
    P = M
    for _ in range(s - 1):
        P = _matmul(P, M, threads)
    return P


# ---------------------------------------------------------------------------
# strong walk-regularity

@dataclass(frozen=True)
class SwrgCertificate:
    s: int
    ok: bool
    lam: int | None
    mu: int | None
    nu: int | None
    srg: tuple | None
    witness: tuple | None
    warning: str | None

    def record(self) -> dict:
        return {"s": self.s, "ok": self.ok, "lambda": self.lam, "mu": self.mu,
                "nu": self.nu, "srg": list(self.srg) if self.srg else None,
                "witness": self.witness, "warning": self.warning}


def _class_value(P: np.ndarray, mask: np.ndarray):
    """(constant, witness) for one adjacency class; constant None if the
    class is empty, witness None if the walk count is constant."""
    flat = np.flatnonzero(mask.ravel())
    if not len(flat):
        return None, None
    vals = P.ravel()[flat]
    lo, hi = int(vals.min()), int(vals.max())
    if lo == hi:
        return lo, None
    v = P.shape[0]
    a = int(flat[int(np.argmin(vals))])
    b = int(flat[int(np.argmax(vals))])
    return None, ((a // v, a % v, lo), (b // v, b % v, hi))


def is_swrg(graph: CayleyGraph, s: int, threads: int = 1) -> SwrgCertificate:
    """Certify (A+bI)^s = lam*A + mu*(J-I-A) + nu*I or refute it.

    A refutation names two vertex pairs of equal adjacency status with
    different length-s walk counts.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    A = graph.adjacency.astype(bool)
    P = _power(graph.matrix(), s, threads)
    eye = np.eye(graph.n_vertices, dtype=bool)
    classes = (("diagonal", eye), ("adjacent", A), ("non-adjacent", ~A & ~eye))
    vals, witness = {}, None
    for name, mask in classes:
        c, w = _class_value(P, mask)
        vals[name] = c
        if w is not None and witness is None:
            witness = (*w, name)
    ok = witness is None
    lam, mu, nu = vals["adjacent"], vals["non-adjacent"], vals["diagonal"]
    srg = None
    if ok and s == 2 and graph.b == 0 and mu is not None:
        srg = (graph.n_vertices, graph.degree, lam, mu)
    return SwrgCertificate(s, ok, lam, mu, nu, srg, witness, graph.warning)


# ---------------------------------------------------------------------------
# spectrum certification

@dataclass(frozen=True)
class SpectrumCertificate:
    spectrum: tuple
    ok: bool
    residual_max: int
    moments: tuple

    def record(self) -> dict:
        return {"spectrum": [[int(t), int(m)] for t, m in self.spectrum],
                "ok": self.ok, "residual_max": self.residual_max,
                "moments": [list(m) for m in self.moments]}


def verify_spectrum(graph: CayleyGraph, predicted,
                    threads: int = 1) -> SpectrumCertificate:
    """Certify a predicted spectrum of A + bI without diagonalizing.

    The eigenvalue set is confirmed by the vanishing of the annihilator
    product, the multiplicities by the trace moments trace(M^t) for
    t < #eigenvalues; together these pin the spectrum uniquely.
    """
    predicted = tuple((int(t), int(m)) for t, m in predicted)
    thetas = [t for t, _ in predicted]
    if len(set(thetas)) != len(thetas):
        raise ValueError("repeated eigenvalue in prediction")
    if sum(m for _, m in predicted) != graph.n_vertices:
        raise ValueError("multiplicities must sum to the vertex count")
    M = graph.matrix()
    eye = np.eye(graph.n_vertices, dtype=np.int64)
    Q = eye
    for t in thetas:
        Q = _matmul(Q, M - t * eye, threads)
    residual = int(abs(Q).max())
    moments, Mt, ok = [], eye, residual == 0
    for t in range(len(thetas)):
        tr = int(np.trace(Mt))
        want = sum(m * th ** t for th, m in predicted)
        moments.append((t, tr, want))
        ok = ok and tr == want
        if t + 1 < len(thetas):
            Mt = _matmul(Mt, M, threads)
    return SpectrumCertificate(predicted, ok, residual, tuple(moments))


# ---------------------------------------------------------------------------
# s-sum sets by convolution

@dataclass(frozen=True)
class SsumResult:
    s: int
    ok: bool
    sigma0: int | None
    sigma1: int | None
    witness: tuple | None

    def record(self) -> dict:
        return {"s": self.s, "ok": self.ok, "sigma0": self.sigma0,
                "sigma1": self.sigma1, "witness": self.witness}


def ssum_set_check(ring: ChainRing, omega, s: int, include_zero: int = 0, *,
                   budget: int = VERTEX_BUDGET) -> SsumResult:
    """Two-valuedness of the s-fold representation counts off zero.

    Counts ordered s-tuples from omega (with 0 adjoined include_zero
    times) summing to each element of the group omega generates; walk
    counts from 0 in the matching Cayley graph agree with these numbers.
    """
    if s < 2:
        raise ValueError("need s >= 2")
    arr = _vectors(ring, omega)
    oset = {tuple(int(x) for x in v) for v in arr}
    k = arr.shape[1]
    if (0,) * k in oset:
        raise ValueError("omega contains zero")
    for v in arr:
        for u in ring.units:
            if tuple(int(x) for x in ring.vmul(np.int64(u), v)) not in oset:
                raise ValueError("omega is not unit-stable")
    elements = _closure(ring, arr, budget)
    radix = _radix(ring, k)
    keys = elements @ radix
    base = np.zeros(len(elements), dtype=np.int64)
    base[np.searchsorted(keys, arr @ radix)] = 1
    base[0] += int(include_zero)
    # one index permutation per support point y: h -> h - y
    perms = []
    for y in np.flatnonzero(base):
        shifted = ring.vadd(elements, ring.vneg(elements[y]))
        perms.append((int(base[y]), np.searchsorted(keys, shifted @ radix)))
    counts = base
    for _ in range(s - 1):
        nxt = np.zeros_like(counts)
        for fy, perm in perms:
            nxt += fy * counts[perm]
        counts = nxt
    member = np.zeros(len(elements), dtype=bool)
    member[np.searchsorted(keys, arr @ radix)] = True
    sig = {}
    witness = None
    for name, mask in (("sigma0", member), ("sigma1", ~member)):
        mask = mask.copy()
        mask[0] = False
        idx = np.flatnonzero(mask)
        if not len(idx):
            sig[name] = None
            continue
        vals = counts[idx]
        lo, hi = int(vals.min()), int(vals.max())
        if lo == hi:
            sig[name] = lo
        else:
            sig[name] = None
            if witness is None:
                a = elements[idx[int(np.argmin(vals))]]
                b = elements[idx[int(np.argmax(vals))]]
                witness = ((tuple(map(int, a)), lo), (tuple(map(int, b)), hi),
                           "inside omega" if name == "sigma0" else "outside omega")
    ok = witness is None
    return SsumResult(s, ok, sig["sigma0"], sig["sigma1"], witness)


def dual_weight_count_check(ring: ChainRing, omega, *,
                            budget: int = ENUM_BUDGET) -> int:
    """Number of nonzero homogeneous weights of the row span of H(omega).

    H(omega) has the given vectors as columns; its row span is the dual
    of the code they cut out as a check matrix.
    """
    H = _vectors(ring, omega).T
    code = LinearCode(ring, H, require_effective=False)
    weights = ring.HOM[enumerate_words(code, budget)].sum(axis=1)
    return len({int(w) for w in weights if w})
