import json

import pytest

from semicomm import verifier
from semicomm.constructions import (
    catalan_idempotent_pair,
    cycle,
    derive_rng,
    gerstenhaber_witness,
    idempotent_pair_7x7,
    intertwiner_basis,
    jordan_block,
)
from semicomm.errors import InputError, UsageError
from semicomm.exact import Matrix, matrix_to_json
from semicomm.verifier import THEOREM_IDS, Outcome, check, instance_digest, run_suite, summarize

P7 = idempotent_pair_7x7()


def test_theorem_ids():
    assert len(THEOREM_IDS) == 18
    assert set(THEOREM_IDS) == set(verifier.SOURCES)


def test_thm_3_3_n4():
    r = check("THM_3_3", {"n": 4})
    assert r.outcome is Outcome.HOLDS and r.holds is True
    assert r.details["dim"] == 10


def test_thm_6_6_example():
    r = check("THM_6_6", {"E": P7.e, "F": P7.f})
    assert r.holds and r.details["dim"] == 9


def test_lem_4_2_not_applicable():
    rng = derive_rng("lem42-na")
    a = Matrix([[rng.randint(1, 5) for _ in range(5)] for _ in range(3)])
    assert not (cycle(3) @ a == a @ cycle(5))
    r = check("LEM_4_2", {"A": a})
    assert r.outcome is Outcome.NOT_APPLICABLE and r.holds is None
    assert "reason" in r.details


def test_lem_4_2_holds_on_intertwiner():
    u = intertwiner_basis(4, 6)[1]
    assert check("LEM_4_2", {"A": u}).holds


def test_json_instances_accepted():
    inst = {"E": matrix_to_json(P7.e), "F": matrix_to_json(P7.f)}
    a = check("GLS", inst)
    b = check("GLS", {"E": P7.e, "F": P7.f})
    assert a.holds and a.instance_digest == b.instance_digest
    assert a.details == {"n": 7, "dim": 9, "bound": 13}


@pytest.mark.parametrize("tid,inst", [
    ("LEM_2_1", {"A": Matrix.identity(2)}),
    ("THM_3_2", {"A": Matrix.identity(2), "B": Matrix.identity(3)}),
    ("COR_4_3", {"m": -1, "n": 2}),
    ("COR_4_3", {"m": True, "n": 2}),
    ("GLS", {"E": {"rows": 1, "cols": 1, "entries": [["1/0"]]}, "F": Matrix.identity(1)}),
])
def test_malformed_instances(tid, inst):
    with pytest.raises(InputError):
        check(tid, inst)


def test_unknown_theorem():
    with pytest.raises(UsageError):
        check("THM_9_9", {})


def test_hypothesis_failures_are_not_violations():
    n2, n2t = Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])
    assert check("THM_NIL", {"E": n2, "F": n2t}).outcome is Outcome.NOT_APPLICABLE
    assert check("THM_3_2", {"A": -n2, "B": n2}).outcome is Outcome.NOT_APPLICABLE
    assert check("PROP_5_2", {"A": cycle(3), "B": cycle(3)}).outcome is Outcome.NOT_APPLICABLE
    assert check("THM_4_5", {"P": jordan_block(2), "A": n2}).outcome is Outcome.NOT_APPLICABLE


def test_each_predicate_detects_a_broken_conclusion(monkeypatch):
    monkeypatch.setattr(verifier, "_dim", lambda *g: 10**6)
    r = check("THM_6_6", {"E": P7.e, "F": P7.f})
    assert r.outcome is Outcome.VIOLATED and r.holds is False
    assert r.details["dim"] == 10**6 and r.details["checks"]["dim<=9"] is False
    r = check("THM_3_2", dict(zip("AB", gerstenhaber_witness(3))))
    assert r.outcome is Outcome.VIOLATED


def test_lem_2_1_violation_reports_entry(monkeypatch):
    # pretend J_2 is irreducible: the commutator with diag(1,2) is then a witness
    monkeypatch.setattr(verifier, "is_ideal_irreducible", lambda m: True)
    r = check("LEM_2_1", {"A": jordan_block(2), "B": Matrix.diag([1, 2])})
    assert r.outcome is Outcome.VIOLATED
    assert r.details["nonzero_commutator_entry"] == [0, 1, "1"]


def test_thm_6_3_negates():
    e = Matrix([[1, 1], [0, 0]])
    a = Matrix([[0, 0], [0, 1]])
    r = check("THM_6_3", {"E": e, "A": -a})
    assert r.holds and r.details["negated"]


def test_cor_tri_orientation():
    cat = catalan_idempotent_pair(2)
    e, f = Matrix([[1, 1], [0, 0]]), Matrix([[1, 0], [0, 0]])
    r = check("COR_TRI", {"E": e, "F": f})
    assert r.holds and r.details["swapped"]
    assert check("GLS", {"E": cat.e, "F": cat.f}).details["dim"] == 3


def test_digest_is_canonical():
    a = {"A": jordan_block(2), "B": Matrix.identity(2)}
    b = {"B": Matrix.identity(2), "A": jordan_block(2)}
    assert instance_digest(a) == instance_digest(b)
    assert len(instance_digest(a)) == 16


def test_suite_n1():
    reports = run_suite(1, 1, 3)
    assert all(r.outcome is not Outcome.VIOLATED for r in reports)
    assert all(r.holds for r in reports if r.case.startswith("random"))


def test_suite_deterministic_and_parallel_safe():
    ids = ["THM_3_2", "LEM_6_1", "COR_4_3"]
    a = run_suite(3, 5, 11, ids)
    b = run_suite(3, 5, 11, ids, jobs=2)
    dump = lambda rs: json.dumps([r.to_json() for r in rs], sort_keys=True)
    assert dump(a) == dump(b) == dump(run_suite(3, 5, 11, ids))
    counts = summarize(a)["COR_4_3"]
    assert counts["not-applicable"] == counts["violated"] == 0


def test_suite_rejects_bad_arguments():
    with pytest.raises(UsageError):
        run_suite(0, 1, 0)
    with pytest.raises(UsageError):
        run_suite(2, 1, 0, ["NOPE"])


@pytest.mark.parametrize("tid", THEOREM_IDS)
def test_witnesses_hold(tid):
    reports = [check(tid, inst, case=name) for name, inst in verifier.witnesses(tid, 4)]
    assert all(r.outcome is not Outcome.VIOLATED for r in reports)
    assert any(r.holds for r in reports)
