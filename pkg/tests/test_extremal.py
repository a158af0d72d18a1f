import io
import json

import pytest

from m0n.chen_coskun import class_in_basis
from m0n.classes import DivisorClass, class_from_polynomial
from m0n.errors import BadK, ClassMismatch, UnsupportedN
from m0n.extremal import (
    DatabaseRecord,
    PairingReport,
    bipyramid_matches_lambda,
    build_database,
    counterexample_check,
    dk_class,
    dk_pairing,
    dk_weights,
    interleaving,
    record_is_consistent,
    write_database,
)
from m0n.hypertree import COMPLETE_QUADRILATERAL, bipyramid, divisor_polynomial


@pytest.fixture(scope="module")
def small_db():
    return build_database(6, 8)


def test_dk_weights():
    assert dk_weights(1) == (1, 1, -1, -1)
    assert dk_weights(3) == (3, 1, -1, -1, -1, -1)
    with pytest.raises(BadK):
        dk_weights(0)


@pytest.mark.parametrize(
    "k, terms",
    [(1, (4, 1, 4)), (2, (9, 4, 6)), (5, (36, 25, 12))],
)
def test_pairing_examples(k, terms):
    rep = dk_pairing(k)
    assert (rep.degree_term, rep.point_term, rep.span_term) == terms
    assert rep.pairing == -1
    assert rep.to_json()["pairing"] == -1


def test_pairing_report_invariant():
    with pytest.raises(ValueError):
        PairingReport(1, 4, 1, 4, 0)


def test_dk_class_reading():
    c = dk_class(3)
    assert (c.n, c.basis_index, c.h) == (8, 1, 4)
    assert c.coeff((2,)) == 3


def test_counterexample_examples():
    assert not counterexample_check(1).is_counterexample
    rep = counterexample_check(2)
    assert (rep.pullback_h, rep.hypertree_degree_bound, rep.is_counterexample) == (5, 4, True)
    rep = counterexample_check(10)
    assert (rep.pullback_h, rep.hypertree_degree_bound) == (21, 12) and rep.is_counterexample


def test_interleaving_sends_color_classes_to_blocks():
    perm = interleaving(3)
    assert [perm[i] for i in range(1, 7)] == [1, 4, 2, 5, 3, 6]
    assert perm[7] == 7 and perm[8] == 8


def test_bipyramid_alternating_weights_without_relabeling():
    # consecutive equator labels make the two color classes the odd and even vertices
    for k in (2, 3):
        h = bipyramid(k)
        alternating = tuple(1 if i % 2 else -1 for i in range(1, 2 * k + 1))
        assert class_from_polynomial(divisor_polynomial(h), h.n, 1) == class_in_basis(alternating, 1)
        assert bipyramid_matches_lambda(k)


def test_database_small(small_db):
    assert [r.n for r in small_db] == [6, 7, 8, 8, 8]
    first = small_db[0]
    assert first.polynomial_degree == 3
    # pushed-down H-coefficient is the multiplicity m_{1}; the pullback coefficient is deg = 3
    assert first.divisor_class.h == 2
    assert first.automorphism_order == 24
    assert all(record_is_consistent(r) for r in small_db)


def test_database_record_roundtrip(small_db):
    for rec in small_db:
        assert DatabaseRecord.from_json(json.loads(json.dumps(rec.to_json()))) == rec


def test_database_record_invariant():
    c = DivisorClass(6, 1, 2)
    with pytest.raises(ClassMismatch):
        DatabaseRecord(6, COMPLETE_QUADRILATERAL, c, 24, 4)


def test_database_range_checks():
    for lo, hi in ((5, 6), (7, 6), (6, 11)):
        with pytest.raises(UnsupportedN):
            build_database(lo, hi)
    with pytest.raises(UnsupportedN):
        build_database(6, 9)


def test_database_json_is_deterministic():
    runs = []
    for _ in range(2):
        buf = io.StringIO()
        assert write_database(buf, 6, 8) == (5, False)
        runs.append(buf.getvalue())
    assert runs[0] == runs[1]
    data = json.loads(runs[0])
    assert len(data) == 5 and data[0]["n"] == 6


def test_database_truncation_marker():
    buf = io.StringIO()
    count, truncated = write_database(buf, 6, 8, budget_seconds=0.0)
    data = json.loads(buf.getvalue())
    assert truncated and count == 1
    assert data[-1] == {"truncated": True, "records": 1, "last_n": 6}
