import json

import pytest

from semicomm.algebra import algebra_dimension
from semicomm.constructions import gerstenhaber_witness, jordan_block
from semicomm.errors import InputError, UsageError
from semicomm.exact import Matrix
from semicomm.search import Witness, canonical_pair, search_dims, search_idempotent_even


def test_explicit_pairs_behind_n2():
    assert algebra_dimension(jordan_block(2), Matrix.identity(2)) == 2
    assert algebra_dimension(*gerstenhaber_witness(2)) == 3


def test_search_n1():
    attained, witnesses = search_dims(1, None, 20, 0)
    assert attained == {1}
    assert [w.dim for w in witnesses] == [1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_search_bounds_and_replay(n):
    attained, witnesses = search_dims(n, None, 150, 3)
    assert max(attained) <= n * (n + 1) // 2
    assert sorted(attained) == [w.dim for w in witnesses]
    for w in witnesses:
        assert w.replays()
        assert w.certificates["positive"]
        assert w.certificates["commutator_sign"] in ("Positive", "Zero")


def test_search_deterministic_and_prefix_monotone():
    a = search_dims(3, None, 60, 9)
    b = search_dims(3, None, 60, 9, jobs=2)
    assert a[0] == b[0]
    assert [w.to_json() for w in a[1]] == [w.to_json() for w in b[1]]
    assert search_dims(3, None, 30, 9)[0] <= a[0]


def test_search_family_validation():
    with pytest.raises(UsageError):
        search_dims(2, ["bogus"], 5, 0)
    with pytest.raises(UsageError):
        search_dims(2, [], 5, 0)
    attained, _ = search_dims(3, ["commuting_poly"], 40, 0)
    assert max(attained) <= 3


def test_idempotent_even():
    best, witnesses = search_idempotent_even(2, 50, 0)
    assert 3 <= best <= 4
    best4, w4 = search_idempotent_even(4, 100, 0)
    assert best4 <= 8 and all(w.replays() for w in w4)
    assert all(w.certificates["idempotent"] == [True, True] for w in w4)
    assert [w.to_json() for w in w4] == [w.to_json() for w in search_idempotent_even(4, 100, 0)[1]]
    with pytest.raises(UsageError):
        search_idempotent_even(3, 10, 0)


def test_canonical_pair():
    a, b = gerstenhaber_witness(3)
    perm = [2, 0, 1]
    ca, cb = canonical_pair(a, b)
    assert canonical_pair(a.permuted(perm), b.permuted(perm)) == (ca, cb)
    assert algebra_dimension(ca, cb) == 6


def test_witness_files(tmp_path):
    _, witnesses = search_dims(3, None, 80, 2)
    for w in witnesses:
        path = w.save(tmp_path)
        assert path.name == f"witness-{w.dim}.json"
        back = Witness.load(path)
        assert back == w and back.replays()
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(InputError):
        Witness.load(bad)
    obj = witnesses[0].to_json()
    obj["A"]["entries"][0][0] = "1/0"
    bad.write_text(json.dumps(obj))
    with pytest.raises(InputError) as info:
        Witness.load(bad)
    assert info.value.path == "$.A.entries[0][0]"


def test_tampered_witness_does_not_replay():
    _, witnesses = search_dims(3, None, 80, 2)
    w = witnesses[-1]
    forged = Witness(w.n, w.dim + 1, w.family, w.seed_path, w.a, w.b, w.certificates)
    assert not forged.replays()
