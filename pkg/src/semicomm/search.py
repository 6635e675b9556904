"""Seeded exploration of attainable algebra dimensions.

Trial ``t`` draws from a stream keyed by ``(seed, n, t)``, so a run with
more trials extends a shorter one and parallel chunks merge without
depending on completion order.  Nothing here claims non-existence: a
missing dimension only means "not found in the trials run".
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .algebra import algebra_dimension
from .constructions import FAMILIES, derive_rng, random_idempotent_pair, random_semicommuting_pair
from .errors import InputError, UsageError
from .exact import Matrix, matrix_from_json, matrix_to_json
from .order import SignClass, commutator_sign, is_positive

__all__ = [
    "CANONICAL_MAX_N",
    "Witness",
    "canonical_pair",
    "certificates",
    "search_dims",
    "search_idempotent_even",
]

CANONICAL_MAX_N = 6


def certificates(a: Matrix, b: Matrix) -> dict:
    return {
        "commutator_sign": str(commutator_sign(a, b)),
        "positive": is_positive(a) and is_positive(b),
        "idempotent": [a.is_idempotent(), b.is_idempotent()],
    }


@dataclass(frozen=True)
class Witness:
    n: int
    dim: int
    family: str
    seed_path: tuple[int, int]
    a: Matrix
    b: Matrix
    certificates: dict

    def replays(self) -> bool:
        """Recompute dimension and certificates from the stored pair."""
        return (algebra_dimension(self.a, self.b) == self.dim
                and certificates(self.a, self.b) == self.certificates)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "family": self.family,
            "seed_path": list(self.seed_path),
            "A": matrix_to_json(self.a),
            "B": matrix_to_json(self.b),
            "certificates": self.certificates,
        }

    @classmethod
    def from_json(cls, obj) -> "Witness":
        if not isinstance(obj, dict):
            raise InputError("witness must be a JSON object", "$")
        try:
            n, dim, family = obj["n"], obj["dim"], obj["family"]
            seed_path = tuple(obj["seed_path"])
            certs = obj["certificates"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"missing or malformed witness field {exc}", "$") from None
        a = matrix_from_json(obj.get("A"), "$.A")
        b = matrix_from_json(obj.get("B"), "$.B")
        return cls(n, dim, family, seed_path, a, b, certs)

    def save(self, directory: str | Path) -> Path:
        path = Path(directory) / f"witness-{self.dim}.json"
        path.write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")
        return path

    @classmethod
    def load(cls, path: str | Path) -> "Witness":
        try:
            obj = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}", str(path)) from None
        return cls.from_json(obj)


def canonical_pair(a: Matrix, b: Matrix) -> tuple[Matrix, Matrix]:
    """Lexicographically least simultaneous permutation conjugate of (a, b).

    Exhaustive over all n! orderings, so only used for n <= CANONICAL_MAX_N;
    larger pairs are returned unchanged.
    """
    n = a.rows
    if n > CANONICAL_MAX_N:
        return a, b
    best = None
    for perm in itertools.permutations(range(n)):
        pa, pb = a.permuted(perm), b.permuted(perm)
        key = (pa.entries, pb.entries)
        if best is None or key < best[0]:
            best = (key, pa, pb)
    return best[1], best[2]


def _check_families(families) -> list[str]:
    fams = list(FAMILIES if families is None else families)
    if not fams:
        raise UsageError("at least one family is required")
    for f in fams:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}; known: {', '.join(FAMILIES)}")
    return fams


def _dims_chunk(args) -> dict[int, tuple]:
    n, fams, seed, start, stop = args
    found: dict[int, tuple] = {}
    for t in range(start, stop):
        rng = derive_rng("search-dims", seed, n, t)
        family = fams[rng.randrange(len(fams))]
        a, b = random_semicommuting_pair(n, family, rng.getrandbits(32))
        if not (is_positive(a) and is_positive(b)) or commutator_sign(a, b) is SignClass.MIXED:
            continue
        dim = algebra_dimension(a, b)
        if dim not in found:
            found[dim] = (t, family, a, b)
    return found


def _chunks(trials: int, jobs: int) -> list[tuple[int, int]]:
    size = max(1, -(-trials // max(1, jobs * 4)))
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def _run_chunks(worker, payloads, jobs: int) -> dict[int, tuple]:
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, payloads))
    else:
        parts = [worker(p) for p in payloads]
    merged: dict[int, tuple] = {}
    for part in parts:
        for dim, hit in part.items():
            # first trial index wins, whatever order the chunks finished in
            if dim not in merged or hit[0] < merged[dim][0]:
                merged[dim] = hit
    return merged


def _witness(n, dim, family, seed, t, a, b) -> Witness:
    a, b = canonical_pair(a, b)
    return Witness(n, dim, family, (seed, t), a, b, certificates(a, b))


def search_dims(n: int, families=None, trials: int = 1000, seed: int = 0,
                jobs: int = 1) -> tuple[set[int], list[Witness]]:
    """Dimensions reached by positive semi-commuting pairs from ``families``.

    Returns the attained set and the first witness per dimension, sorted
    by dimension.
    """
    if n < 1 or trials < 1:
        raise UsageError("n and trials must be >= 1")
    fams = _check_families(families)
    payloads = [(n, fams, seed, s, e) for s, e in _chunks(trials, jobs)]
    merged = _run_chunks(_dims_chunk, payloads, jobs)
    witnesses = [_witness(n, dim, fam, seed, t, a, b)
                 for dim, (t, fam, a, b) in sorted(merged.items())]
    return set(merged), witnesses


def _idem_chunk(args) -> dict[int, tuple]:
    n, seed, start, stop = args
    found: dict[int, tuple] = {}
    for t in range(start, stop):
        pair = random_idempotent_pair(n, derive_rng("search-idem", seed, n, t).getrandbits(32))
        dim = algebra_dimension(pair.e, pair.f)
        if dim not in found:
            found[dim] = (t, "idempotent", pair.e, pair.f)
    return found


def search_idempotent_even(n: int, trials: int = 1000, seed: int = 0,
                           jobs: int = 1) -> tuple[int, list[Witness]]:
    """Largest dimension seen for positive idempotents with EF >= FE >= 0."""
    if n < 2 or n % 2:
        raise UsageError("n must be even and >= 2")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    payloads = [(n, seed, s, e) for s, e in _chunks(trials, jobs)]
    merged = _run_chunks(_idem_chunk, payloads, jobs)
    witnesses = [_witness(n, dim, fam, seed, t, a, b)
                 for dim, (t, fam, a, b) in sorted(merged.items())]
    return max(merged), witnesses
