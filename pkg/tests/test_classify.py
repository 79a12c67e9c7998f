"""Classifier tests: point spaces, pruned search vs brute force, table
drivers, and the equivalence invariant."""

import itertools
import json

import numpy as np
import pytest

from ringwalk.catalog import (EXTRA_EXEMPLARS, PARAM_ROWS, ParamRow,
                              Z4_EXEMPLARS, candidate_shapes)
from ringwalk.classify import (EMPTY, REALIZED, UNDECIDED, SearchSpec,
                               TableMismatch, _coeff_classes,
                               _stab_orbit_reps, canonical_invariant,
                               points_of_shape, projective_points, run_table,
                               search)
from ringwalk.codes import LinearCode, is_proper, standard_form
from ringwalk.families import kerdock
from ringwalk.rings import fqu, zpm
from ringwalk.spectral import predict_three_weight, weight_distribution

Z4 = zpm(2, 2)
F2U = fqu(2)


def by_name(name):
    return next(e for e in Z4_EXEMPLARS if e.name == name)


# ---------------------------------------------------------------------------
# point spaces


def test_projective_points_ell2_frozen():
    got = [tuple(map(int, p)) for p in projective_points(Z4, 2)]
    assert got == [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 1)]


@pytest.mark.parametrize("ring", [Z4, F2U])
@pytest.mark.parametrize("ell", [1, 2, 3, 4, 5])
def test_projective_point_count(ring, ell):
    assert len(projective_points(ring, ell)) == (4 ** ell - 2 ** ell) // 2


@pytest.mark.parametrize("shape,count", [
    ((2, 1), 12), ((1, 5), 32), ((2, 3), 48), ((3, 1), 56),
])
def test_point_counts_with_socle_block(shape, count):
    assert len(points_of_shape(Z4, *shape)) == count


def test_points_regular_canonical_e1_first():
    pts = points_of_shape(F2U, 2, 2)
    assert tuple(pts[0]) == (1, 0, 0, 0)
    seen = set()
    for p in pts:
        assert int(F2U.LEVEL[p[:2]].min()) == 0     # regular
        assert all(int(x) in (0, 2) for x in p[2:])  # socle block
        orbit = frozenset(tuple(map(int, F2U.vmul(np.int64(u), p)))
                          for u in F2U.units)
        assert orbit not in seen                     # one point per unit class
        seen.add(orbit)


def test_point_space_errors():
    with pytest.raises(ValueError):
        points_of_shape(zpm(3, 2), 2, 0)
    with pytest.raises(ValueError):
        points_of_shape(Z4, 0, 4)
    with pytest.raises(ValueError):
        points_of_shape(Z4, 11, 2)
    with pytest.raises(ValueError):
        projective_points(Z4, 6)


def test_coeff_classes_and_stab_orbits():
    assert len(_coeff_classes(Z4, 2, 1)) == 19
    pts = projective_points(Z4, 2)
    assert _stab_orbit_reps(Z4, pts, 2) == [1, 3]   # (0,1) and (1,2)


# ---------------------------------------------------------------------------
# spec'd search cells


def check_witness(ring, rec, shape, weights):
    assert rec.witnesses
    M = np.array(rec.witnesses[0], dtype=np.int64)
    code = LinearCode(ring, M)
    assert code.shape == shape
    assert is_proper(code)
    wd = weight_distribution(code)
    assert tuple(w for w, _ in wd.entries if w) == weights


def test_decide_z4_n6_realized():
    rec = search(SearchSpec(Z4, 6, (2, 1), (4, 6, 8), "decide"))
    assert rec.status == REALIZED
    assert rec.nodes == 28
    assert rec.witnesses[0] == [(1, 0, 0, 1, 1, 1), (0, 1, 1, 0, 1, 1),
                                (0, 0, 2, 2, 0, 2)]
    check_witness(Z4, rec, (2, 1), (4, 6, 8))


def test_exhaust_z4_n4_empty():
    rec = search(SearchSpec(Z4, 4, (2, 0), (2, 4, 6), "exhaust"))
    assert rec.status == EMPTY
    assert rec.nodes == 9
    assert not rec.witnesses


def test_exhaust_f2u_n8_empty():
    rec = search(SearchSpec(F2U, 8, (2, 1), (6, 8, 10), "exhaust"))
    assert rec.status == EMPTY
    assert rec.nodes == 310


def test_search_validation():
    with pytest.raises(ValueError):
        search(SearchSpec(Z4, 4, (2, 0), (2, 4, 6), "prove"))
    with pytest.raises(ValueError):
        search(SearchSpec(Z4, 4, (2, 0), (6, 4, 2), "exhaust"))
    with pytest.raises(ValueError):
        search(SearchSpec(Z4, 4, (2, 0), (4, 4, 6), "exhaust"))


def test_budget_exhaustion_is_undecided():
    spec = SearchSpec(Z4, 8, (3, 0), (6, 8, 10), "exhaust")
    rec = search(spec, budget_nodes=50)
    assert rec.status == UNDECIDED
    decide = SearchSpec(Z4, 8, (3, 0), (6, 8, 10), "decide")
    rec = search(decide, budget_nodes=50, witness_seconds=0)
    assert rec.status == UNDECIDED


def test_infeasible_frequencies_short_circuit():
    # no positive integral (A1,A2,A3) solves the moment equations here
    pred = predict_three_weight(4, 8, 1, 2, 6)
    assert not all(a.denominator == 1 and a > 0
                   for a in (pred.a1, pred.a2, pred.a3))
    rec = search(SearchSpec(Z4, 4, (2, 0), (1, 2, 6), "exhaust"))
    assert rec.status == EMPTY and rec.nodes == 0


def test_determinism():
    spec = SearchSpec(Z4, 6, (3, 0), (4, 6, 8), "exhaust")
    a = search(spec)
    b = search(spec)
    for key in ("status", "nodes", "leaves", "witnesses", "prunes", "distinct"):
        assert getattr(a, key) == getattr(b, key)


def test_threads_match_sequential():
    spec = SearchSpec(Z4, 6, (3, 0), (4, 6, 8), "exhaust")
    seq = search(spec, threads=1)
    par = search(spec, threads=2)
    assert par.status == seq.status == REALIZED
    assert par.nodes == seq.nodes
    assert par.leaves == seq.leaves
    assert sorted(map(str, par.witnesses)) == sorted(map(str, seq.witnesses))


def test_checkpoint_resume(tmp_path):
    spec = SearchSpec(Z4, 6, (3, 0), (4, 6, 8), "exhaust")
    full = search(spec)
    ck = tmp_path / "run.jsonl"
    first = search(spec, checkpoint=str(ck))
    lines = ck.read_text().splitlines()
    assert len(lines) == len(first.subtrees)
    # drop the tail, resume, and land on the same verdict
    ck.write_text("\n".join(lines[:1]) + "\n")
    resumed = search(spec, checkpoint=str(ck))
    assert resumed.status == full.status
    assert resumed.leaves == full.leaves
    assert resumed.nodes < full.nodes          # finished subtree was skipped
    done = [json.loads(line)["subtree"] for line in ck.read_text().splitlines()]
    assert sorted(done) == sorted(p["subtree"] for p in full.subtrees)


# ---------------------------------------------------------------------------
# pruned search against a brute force over all point subsets


def brute_realized(ring, shape, n):
    """Sorted-weight triples realized by SOME n-subset, no pruning at all."""
    pts = points_of_shape(ring, *shape)
    classes = _coeff_classes(ring, *shape)
    T = ring.HOM[ring.matmul(classes, pts.T)].astype(np.int32)
    out = set()
    for combo in itertools.combinations(range(len(pts)), n):
        sums = T[:, combo].sum(axis=1)
        weights = np.unique(sums)
        if len(weights) != 3 or weights[0] == 0:
            continue
        M = pts[list(combo)].T
        if standard_form(ring, M).shape != shape:
            continue
        code = LinearCode(ring, M)
        assert is_proper(code)
        out.add(tuple(int(w) for w in weights))
    return out


@pytest.mark.parametrize("ring", [Z4, F2U], ids=["z4", "f2u"])
@pytest.mark.parametrize("shape", [(2, 0), (1, 1), (1, 2), (2, 1), (3, 0)])
def test_pruned_search_matches_brute_force(ring, shape):
    k = 2 * shape[0] + shape[1]
    for n in range(2, 6):
        if n > len(points_of_shape(ring, *shape)):
            continue
        realized = brute_realized(ring, shape, n)
        for triple in sorted(realized):
            rec = search(SearchSpec(ring, n, shape, triple, "exhaust"))
            assert rec.status == REALIZED, (shape, n, triple)
            check_witness(ring, rec, shape, triple)
        # moment-feasible triples the brute force did not realize
        tried = 0
        for triple in itertools.combinations(range(1, 2 * n + 1), 3):
            if triple in realized or tried >= 10:
                continue
            pred = predict_three_weight(n, 1 << (k - 1), *triple)
            if not all(a.denominator == 1 and a > 0
                       for a in (pred.a1, pred.a2, pred.a3)):
                continue
            tried += 1
            rec = search(SearchSpec(ring, n, shape, triple, "exhaust"))
            assert rec.status == EMPTY, (shape, n, triple)


# ---------------------------------------------------------------------------
# large DECIDE targets (tree phase hands over to the MILP phase)


@pytest.mark.parametrize("ex", EXTRA_EXEMPLARS, ids=lambda e: e.name)
def test_extra_exemplar_matrices(ex):
    code = LinearCode(Z4, ex.rows)
    assert code.n == ex.n
    assert code.shape == ex.shape
    assert is_proper(code)
    wd = dict(weight_distribution(code).entries)
    assert wd == {0: 1, **dict(zip(ex.weights, ex.counts))}


@pytest.mark.parametrize("ex", EXTRA_EXEMPLARS, ids=lambda e: e.name)
def test_extra_parameters_decided(ex):
    spec = SearchSpec(Z4, ex.n, ex.shape, ex.weights, "decide")
    rec = search(spec, budget_nodes=2_000_000)
    assert rec.status == REALIZED
    assert any(p.get("subtree") == "milp" for p in rec.subtrees)
    check_witness(Z4, rec, ex.shape, ex.weights)


# ---------------------------------------------------------------------------
# equivalence invariant


def test_invariant_separates_shapes():
    g62 = LinearCode(Z4, by_name("g_6_2").rows)
    g63 = LinearCode(Z4, by_name("g_6_3").rows)
    assert canonical_invariant(g62) != canonical_invariant(g63)


def test_invariant_under_column_permutation_and_scaling():
    rows = np.array(by_name("g_6_2").rows, dtype=np.int64)
    base = canonical_invariant(LinearCode(Z4, rows))
    perm = rows[:, [3, 0, 5, 1, 4, 2]]
    assert canonical_invariant(LinearCode(Z4, perm)) == base
    scaled = rows.copy()
    scaled[:, 2] = Z4.vmul(np.int64(3), scaled[:, 2])
    assert canonical_invariant(LinearCode(Z4, scaled)) == base


def test_invariant_under_row_transform():
    rows = np.array(by_name("g_6_2").rows, dtype=np.int64)
    mixed = rows.copy()
    mixed[0] = Z4.vadd(mixed[0], mixed[1])
    mixed = mixed[[2, 0, 1]]
    a = canonical_invariant(LinearCode(Z4, rows))
    b = canonical_invariant(LinearCode(Z4, mixed))
    assert a == b


def test_invariant_kerdock_matches_table_matrix():
    inst = kerdock(3)
    table = LinearCode(Z4, by_name("g_7_1").rows)
    assert canonical_invariant(inst.minus) == canonical_invariant(table)


# ---------------------------------------------------------------------------
# table drivers


def test_run_table_5_reverifies_matrices():
    report = run_table("5")
    assert report["all_match"] and len(report["rows"]) == 11


def test_run_table_2_small():
    report = run_table("2", n_max=4)
    assert report["all_match"]
    assert not report["undecided"]
    assert all(cell["expected"] == EMPTY for cell in report["rows"])


def test_run_table_1_small():
    report = run_table("T1", n_max=6)
    assert report["all_match"]
    got = {(c["n"], tuple(c["shape"])): c["got"] for c in report["rows"]}
    assert got[(6, (2, 1))] == REALIZED


def test_run_table_rejects_unknown():
    with pytest.raises(ValueError):
        run_table("7")


def test_run_table_mismatch_raises(monkeypatch):
    # claim an attainable shape we know is empty
    fake = ParamRow(4, 4, (2, 4, 6), (1, 11, 3), ((2, 0),), ((2, 0),))
    monkeypatch.setattr("ringwalk.classify.PARAM_ROWS", (fake,))
    with pytest.raises(TableMismatch):
        run_table("1", n_max=4)


def test_candidate_shapes_layout():
    assert candidate_shapes(6, 5) == ((2, 1), (1, 3))
    assert candidate_shapes(6, 6) == ((3, 0), (2, 2), (1, 4))
    assert candidate_shapes(2, 6) == ()     # no shape fits in two columns
    for row in PARAM_ROWS:
        listed = set(row.z4_shapes) | set(row.f2u_shapes)
        assert listed <= set(candidate_shapes(row.n, row.k))
