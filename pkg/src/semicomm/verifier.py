"""Executable theorem predicates over concrete instances.

Every predicate first evaluates its hypotheses exactly.  The outcome is
three-valued: ``holds``, ``not-applicable`` (hypotheses fail) or
``violated`` (hypotheses hold, conclusion fails -- always an
implementation defect, since every statement checked here is proved).
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import (
    check_idempotent_relations,
    commutator_nil_index,
    lemma_gn_spans,
    mccoy_triangularizable,
    unital_algebra_basis,
)
from .constructions import (
    catalan_idempotent_pair,
    companion,
    companion_coefficients,
    cycle,
    derive_rng,
    gerstenhaber_witness,
    idempotent_pair_3x3,
    idempotent_pair_7x7,
    intertwiner_basis,
    jordan_block,
    permutation_from_cycle_type,
    random_idempotent_pair,
    random_positive_idempotent,
    random_semicommuting_pair,
    verify_intertwiner_structure,
    FAMILIES,
    _composition,
    _poly,
)
from .constructions import _random_positive as _positive_rows
from .errors import InputError, UsageError
from .exact import Matrix, inverse, matrix_from_json, matrix_to_json, rank
from .order import (
    SignClass,
    commutator_sign,
    is_ideal_irreducible,
    is_ideal_triangularizable,
    is_positive,
    is_strictly_positive,
    refined_bound,
)

__all__ = [
    "Outcome",
    "THEOREM_IDS",
    "TheoremReport",
    "check",
    "instance_digest",
    "instance_to_json",
    "run_suite",
    "summarize",
]


class Outcome(enum.Enum):
    HOLDS = "holds"
    NOT_APPLICABLE = "not-applicable"
    VIOLATED = "violated"


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    instance_digest: str
    outcome: Outcome
    details: dict = field(default_factory=dict)
    case: str = ""

    @property
    def holds(self) -> bool | None:
        """True / False, or None when the hypotheses were not met."""
        if self.outcome is Outcome.NOT_APPLICABLE:
            return None
        return self.outcome is Outcome.HOLDS

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "case": self.case,
            "instance_digest": self.instance_digest,
            "outcome": self.outcome.value,
            "details": self.details,
        }


class _NotApplicable(Exception):
    def __init__(self, reason: str, **details):
        self.details = {"reason": reason, **details}


# ----------------------------------------------------------------------
# Instance plumbing
# ----------------------------------------------------------------------

def instance_to_json(instance: dict) -> dict:
    return {k: matrix_to_json(v) if isinstance(v, Matrix) else v
            for k, v in instance.items()}


def instance_digest(instance: dict) -> str:
    blob = json.dumps(instance_to_json(instance), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _parse_instance(instance: dict) -> dict:
    if not isinstance(instance, dict):
        raise InputError("instance must be a JSON object")
    out = {}
    for k, v in instance.items():
        if isinstance(v, dict):
            out[k] = matrix_from_json(v, f"$.{k}")
        else:
            out[k] = v
    return out


def _matrix(inst: dict, key: str) -> Matrix:
    if key not in inst:
        raise InputError(f"instance needs key {key!r}")
    m = inst[key]
    if not isinstance(m, Matrix):
        raise InputError(f"{key!r} must be a matrix")
    return m


def _int(inst: dict, key: str, default=None) -> int:
    v = inst.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"instance needs a non-negative integer {key!r}")
    return v


def _square_pair(inst: dict, x: str, y: str) -> tuple[Matrix, Matrix]:
    a, b = _matrix(inst, x), _matrix(inst, y)
    if not (a.is_square and b.is_square) or a.shape != b.shape:
        raise InputError(f"{x} and {y} must be square of equal size, got {a.shape} and {b.shape}")
    return a, b


def _first_nonzero(m: Matrix) -> list:
    for i in range(m.rows):
        for j in range(m.cols):
            if m.sign(i, j):
                return [i, j, str(m[i, j])]
    return []


def _dim(*gens: Matrix) -> int:
    return unital_algebra_basis(gens).dim


def _sp(m: Matrix) -> bool:
    return is_strictly_positive(m)


# ----------------------------------------------------------------------
# Predicates
# ----------------------------------------------------------------------

THEOREMS: dict[str, Callable[[dict], tuple[bool, dict]]] = {}


def _theorem(tid: str):
    def register(fn):
        THEOREMS[tid] = fn
        return fn
    return register


@_theorem("LEM_2_1")
def _lem_2_1(inst):
    a, b = _square_pair(inst, "A", "B")
    sign = commutator_sign(a, b)
    if sign is SignClass.MIXED:
        raise _NotApplicable("A and B do not semi-commute")
    irreducible = [name for name, m in (("A", a), ("B", b))
                   if is_positive(m) and is_ideal_irreducible(m)]
    if not irreducible:
        raise _NotApplicable("neither matrix is positive and ideal-irreducible",
                             commutator_sign=str(sign))
    k = a @ b - b @ a
    return k.is_zero(), {"commutator_sign": str(sign), "irreducible": irreducible,
                         "nonzero_commutator_entry": _first_nonzero(k)}


def _positive_semicommuting(a: Matrix, b: Matrix) -> SignClass:
    if not (is_positive(a) and is_positive(b)):
        raise _NotApplicable("inputs are not both positive")
    sign = commutator_sign(a, b)
    if sign is SignClass.MIXED:
        raise _NotApplicable("inputs do not semi-commute")
    return sign


@_theorem("THM_3_2")
def _thm_3_2(inst):
    a, b = _square_pair(inst, "A", "B")
    sign = _positive_semicommuting(a, b)
    n = a.rows
    dim = _dim(a, b)
    top = n * (n + 1) // 2
    refined = refined_bound(a, b)
    tri = is_ideal_triangularizable(a + b)
    ok = dim <= top and dim <= refined and (refined == top) == tri
    return ok, {"commutator_sign": str(sign), "dim": dim, "bound": top,
                "refined_bound": refined, "sum_triangularizable": tri}


@_theorem("THM_3_3")
def _thm_3_3(inst):
    if "B" in inst:
        b = _matrix(inst, "B")
        n = b.rows
    else:
        n = _int(inst, "n")
        if n < 1:
            raise InputError("n must be >= 1")
        b = gerstenhaber_witness(n)[1]
    if not b.is_square:
        raise InputError("B must be square")
    j = jordan_block(n)
    if "A" in inst and _matrix(inst, "A") != j:
        raise _NotApplicable("A is not the Jordan block J_n")
    diag = [b[i, i] for i in range(n)]
    if not (b.is_diagonal() and all(x > 0 for x in diag)
            and all(x < y for x, y in zip(diag, diag[1:]))):
        raise _NotApplicable("B is not a positive diagonal with strictly increasing entries")
    dim = _dim(j, b)
    target = n * (n + 1) // 2
    positive = is_positive(j @ b - b @ j)
    return positive and dim == target, {"n": n, "dim": dim, "expected": target,
                                        "commutator_positive": positive}


@_theorem("LEM_4_2")
def _lem_4_2(inst):
    a = _matrix(inst, "A")
    m, n = a.shape
    d = cycle(m) @ a - a @ cycle(n)
    if not is_positive(d):
        raise _NotApplicable("C_m A >= A C_n fails", negative_entry=_first_negative(d))
    structure = verify_intertwiner_structure(a, m, n)
    return d.is_zero() and structure, {"m": m, "n": n, "toeplitz": structure,
                                       "nonzero_difference_entry": _first_nonzero(d)}


def _first_negative(m: Matrix) -> list:
    for i in range(m.rows):
        for j in range(m.cols):
            if m.sign(i, j) < 0:
                return [i, j, str(m[i, j])]
    return []


def intertwiner_system(m: int, n: int) -> Matrix:
    """Matrix of X -> C_m X - X C_n acting on row-major vec(X)."""
    cm, cn = cycle(m), cycle(n)
    cols = []
    for k in range(m):
        for l in range(n):
            u = Matrix.unit(m, n, k, l)
            cols.append(list((cm @ u - u @ cn).entries))
    return Matrix([list(r) for r in zip(*cols)])


@_theorem("COR_4_3")
def _cor_4_3(inst):
    m, n = _int(inst, "m"), _int(inst, "n")
    if m < 1 or n < 1:
        raise InputError("m and n must be >= 1")
    nullity = m * n - rank(intertwiner_system(m, n))
    basis = intertwiner_basis(m, n)
    cm, cn = cycle(m), cycle(n)
    solves = all(cm @ u == u @ cn for u in basis)
    basis_rank = rank(Matrix([list(u.entries) for u in basis]))
    g = math.gcd(m, n)
    ok = nullity == g and basis_rank == g and solves
    return ok, {"m": m, "n": n, "gcd": g, "solution_dim": nullity,
                "basis_rank": basis_rank, "basis_solves": solves}


def _is_permutation(p: Matrix) -> bool:
    num, d = p.numerators, p.denominator
    if d != 1 or not p.is_square:
        return False
    return (all(sorted(r) == [0] * (p.cols - 1) + [1] for r in num)
            and all(sorted(c) == [0] * (p.rows - 1) + [1] for c in zip(*num)))


@_theorem("THM_4_5")
def _thm_4_5(inst):
    p, a = _square_pair(inst, "P", "A")
    if not _is_permutation(p):
        raise _NotApplicable("P is not a permutation matrix")
    sign = commutator_sign(a, p)
    if sign is SignClass.MIXED:
        raise _NotApplicable("A and P do not semi-commute")
    n = p.rows
    dim = _dim(a, p)
    commute = a @ p == p @ a
    return commute and dim <= n, {"commutator_sign": str(sign), "commute": commute,
                                  "dim": dim, "bound": n}


def _companion_setup(inst) -> tuple[Matrix, Matrix, int]:
    a, b = _square_pair(inst, "A", "B")
    coeffs = companion_coefficients(a)
    if coeffs is None:
        raise _NotApplicable("A is not a companion matrix")
    _positive_semicommuting(a, b)
    k = 0
    for c in coeffs:
        if c != 0:
            break
        k += 1
    return a, b, k


@_theorem("PROP_5_2")
def _prop_5_2(inst):
    a, b, k = _companion_setup(inst)
    n = a.rows
    if k < 1:
        raise _NotApplicable("zero is not an eigenvalue of A", k=k)
    lead = b.submatrix(0, k, 0, k)
    upper = lead.is_upper_triangular()
    corner = b.submatrix(k, n, 0, k).is_zero() if k < n else True
    bad = []
    if not upper:
        bad = next([i, j] for i in range(k) for j in range(i) if lead.sign(i, j))
    elif not corner:
        bad = next([i, j] for i in range(k, n) for j in range(k) if b.sign(i, j))
    return upper and corner, {"k": k, "n": n, "leading_upper_triangular": upper,
                              "lower_left_zero": corner, "offending_entry": bad}


@_theorem("COR_5_3")
def _cor_5_3(inst):
    b = _matrix(inst, "B")
    if not b.is_square:
        raise InputError("B must be square")
    n = b.rows
    j = jordan_block(n)
    if "A" in inst and _matrix(inst, "A") != j:
        raise _NotApplicable("A is not the Jordan block J_n")
    sign = _positive_semicommuting(j, b)
    upper = b.is_upper_triangular()
    bad = [] if upper else next([r, c] for r in range(n) for c in range(r) if b.sign(r, c))
    return upper, {"commutator_sign": str(sign), "upper_triangular": upper, "offending_entry": bad}


@_theorem("THM_5_4")
def _thm_5_4(inst):
    a, b, k = _companion_setup(inst)
    n = a.rows
    dim = _dim(a, b)
    bound = (2 * n - k) * (k + 1) // 2
    return dim <= bound, {"k": k, "n": n, "dim": dim, "bound": bound}


def _idempotents(inst, x="E", y="F") -> tuple[Matrix, Matrix]:
    e, f = _square_pair(inst, x, y)
    if not (e.is_idempotent() and f.is_idempotent()):
        raise _NotApplicable("inputs are not both idempotent")
    return e, f


def _positive_idempotents(inst) -> tuple[Matrix, Matrix, bool]:
    """Positive idempotents oriented so that EF >= FE (swapped flag reported)."""
    e, f = _idempotents(inst)
    sign = _positive_semicommuting(e, f)
    if sign is SignClass.NEGATIVE:
        return f, e, True
    return e, f, False


def _strictness(e: Matrix, f: Matrix) -> dict:
    return {"E": _sp(e), "F": _sp(f), "E^T": _sp(e.T), "F^T": _sp(f.T)}


def _clauses(checks: dict) -> tuple[bool, dict]:
    applicable = {name: ok for name, (hyp, ok) in checks.items() if hyp}
    if not applicable:
        raise _NotApplicable("no strict-positivity hypothesis holds")
    return all(applicable.values()), applicable


@_theorem("LEM_6_1")
def _lem_6_1(inst):
    e, f, swapped = _positive_idempotents(inst)
    sp = _strictness(e, f)
    rel = check_idempotent_relations(e, f)
    ok, clauses = _clauses({
        "a": (sp["E"], rel.efe_eq_fe and rel.fe_idempotent),
        "b": (sp["F"], rel.fef_eq_ef and rel.ef_idempotent),
        "c": (sp["F^T"], rel.fef_eq_fe and rel.fe_idempotent),
        "d": (sp["E^T"], rel.efe_eq_ef and rel.ef_idempotent),
    })
    return ok, {"swapped": swapped, "strictly_positive": sp, "clauses": clauses,
                "relations": rel.as_dict()}


@_theorem("LEM_6_2")
def _lem_6_2(inst):
    e, f, swapped = _positive_idempotents(inst)
    sp = _strictness(e, f)
    rel = check_idempotent_relations(e, f)
    ok, clauses = _clauses({
        "a": (sp["E"] or sp["F"], rel.comm_square_zero),
        "b": (sp["E^T"] or sp["F^T"], rel.comm_square_zero),
        "c": ((sp["E"] and sp["E^T"]) or (sp["F"] and sp["F^T"]), rel.commuting),
    })
    return ok, {"swapped": swapped, "strictly_positive": sp, "clauses": clauses}


@_theorem("THM_6_3")
def _thm_6_3(inst):
    e, a = _square_pair(inst, "E", "A")
    if not (e.is_idempotent() and is_positive(e)):
        raise _NotApplicable("E is not a positive idempotent")
    sign = commutator_sign(e, a)
    if sign is SignClass.MIXED:
        raise _NotApplicable("E and A do not semi-commute")
    negated = sign is SignClass.NEGATIVE
    if negated:
        # the statement is invariant under A -> -A, which flips the sign
        a = -a
    sp_e, sp_et = _sp(e), _sp(e.T)
    rel = check_idempotent_relations(e, a)
    ok, clauses = _clauses({
        "a": (sp_e, rel.efe_eq_fe and rel.comm_square_zero),
        "b": (sp_et, rel.efe_eq_ef and rel.comm_square_zero),
        "c": (sp_e and sp_et, rel.commuting),
    })
    return ok, {"negated": negated, "clauses": clauses}


@_theorem("THM_6_4")
def _thm_6_4(inst):
    e, f, swapped = _positive_idempotents(inst)
    sp = _strictness(e, f)
    dim = _dim(e, f)
    ok, clauses = _clauses({
        "a": (sp["E"] or sp["F"], dim <= 6),
        "b": (sp["E^T"] or sp["F^T"], dim <= 6),
        "c": ((sp["E"] and sp["E^T"]) or (sp["F"] and sp["F^T"]), dim <= 4),
    })
    return ok, {"swapped": swapped, "dim": dim, "strictly_positive": sp, "clauses": clauses}


@_theorem("THM_6_6")
def _thm_6_6(inst):
    e, f, swapped = _positive_idempotents(inst)
    dim = _dim(e, f)
    k = e @ f - f @ e
    k2 = k @ k
    checks = {
        "dim<=9": dim <= 9,
        "K^3=0": (k2 @ k).is_zero(),
        "K^2E=0": (k2 @ e).is_zero(),
        "K^2F=0": (k2 @ f).is_zero(),
        "K^2EF=0": (k2 @ e @ f).is_zero(),
    }
    return all(checks.values()), {"swapped": swapped, "dim": dim, "checks": checks}


@_theorem("LEM_GN")
def _lem_gn(inst):
    e, f = _idempotents(inst)
    levels = [_int(inst, "level")] if "level" in inst else [0, 1, 2]
    spans = {str(lv): list(lemma_gn_spans(e, f, lv)) for lv in levels}
    ok = all(g == r == u for g, r, u in spans.values())
    return ok, {"levels": levels, "ranks_G_R_union": spans}


@_theorem("THM_NIL")
def _thm_nil(inst):
    e, f = _idempotents(inst)
    k = commutator_nil_index(e, f)
    if k is None:
        raise _NotApplicable("commutator is not nilpotent")
    dim = _dim(e, f)
    return dim <= 4 * k, {"nil_index": k, "dim": dim, "bound": 4 * k}


def _gls_bound(n: int) -> int:
    return 2 * n if n % 2 == 0 else 2 * n - 1


@_theorem("GLS")
def _gls(inst):
    e, f = _idempotents(inst)
    n = e.rows
    dim = _dim(e, f)
    return dim <= _gls_bound(n), {"n": n, "dim": dim, "bound": _gls_bound(n)}


@_theorem("COR_TRI")
def _cor_tri(inst):
    e, f = _idempotents(inst)
    ef, fe = e @ f, f @ e
    swapped = False
    if not (is_positive(fe) and is_positive(ef - fe)):
        if is_positive(ef) and is_positive(fe - ef):
            e, f, swapped = f, e, True
        else:
            raise _NotApplicable("EF >= FE >= 0 fails in both orders")
    n = e.rows
    tri = mccoy_triangularizable(e, f)
    dim = _dim(e, f)
    bound = _gls_bound(n)
    return tri and dim <= bound, {"swapped": swapped, "triangularizable": tri,
                                  "dim": dim, "bound": bound}


THEOREM_IDS = tuple(THEOREMS)


def check(theorem_id: str, instance: dict, case: str = "") -> TheoremReport:
    """Evaluate one predicate on one instance (matrices may be JSON objects)."""
    if theorem_id not in THEOREMS:
        raise UsageError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREM_IDS)}")
    inst = _parse_instance(instance)
    digest = instance_digest(inst)
    try:
        ok, details = THEOREMS[theorem_id](inst)
    except _NotApplicable as na:
        return TheoremReport(theorem_id, digest, Outcome.NOT_APPLICABLE, na.details, case)
    outcome = Outcome.HOLDS if ok else Outcome.VIOLATED
    assert ok or details, f"{theorem_id}: a violation must carry diagnostics"
    return TheoremReport(theorem_id, digest, outcome, details, case)


# ----------------------------------------------------------------------
# Instance sources for the randomized suite
# ----------------------------------------------------------------------

def _seed(rng: random.Random) -> int:
    return rng.getrandbits(32)


def _random_positive(n, rng):
    return Matrix(_positive_rows(n, rng))


def _random_perm(n, rng):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def _src_lem_2_1(n, rng):
    roll = rng.random()
    if roll < 0.35:
        a, b = random_semicommuting_pair(n, "commuting_poly", _seed(rng))
    elif roll < 0.65:
        c = cycle(n).permuted(_random_perm(n, rng))
        a, b = c, _poly(c, [rng.randint(0, 3) for _ in range(min(n, 4))])
        if rng.random() < 0.5:
            a, b = b, a
    elif roll < 0.85:
        a, b = random_semicommuting_pair(n, "diag_dominated", _seed(rng))
    else:
        a, b = _random_positive(n, rng), _random_positive(n, rng)
    return {"A": a, "B": b}


def _src_positive_pair(n, rng):
    if rng.random() < 0.1:
        return {"A": _random_positive(n, rng), "B": _random_positive(n, rng)}
    family = FAMILIES[rng.randrange(len(FAMILIES))]
    a, b = random_semicommuting_pair(n, family, _seed(rng))
    if rng.random() < 0.3:
        a, b = b, a
    return {"A": a, "B": b}


def _src_thm_3_3(n, rng):
    diag = sorted(rng.sample(range(1, 3 * n + 2), n))
    return {"B": Matrix.diag(diag)}


def _src_lem_4_2(n, rng):
    m = rng.randint(1, n)
    basis = intertwiner_basis(m, n)
    a = Matrix.zeros(m, n)
    for u in basis:
        a = a + u * rng.randint(0, 3)
    roll = rng.random()
    if roll < 0.3:
        a = a + Matrix.unit(m, n, rng.randrange(m), rng.randrange(n)) * rng.randint(1, 2)
    elif roll < 0.45:
        a = Matrix([[rng.randint(0, 3) for _ in range(n)] for _ in range(m)])
    return {"A": a}


def _src_cor_4_3(n, rng):
    return {"m": rng.randint(1, n), "n": n}


def _src_thm_4_5(n, rng):
    sizes = _composition(n, rng)
    p = permutation_from_cycle_type(sizes)
    if rng.random() < 0.75:
        blocks = []
        for si in sizes:
            row = []
            for sj in sizes:
                blk = Matrix.zeros(si, sj)
                for u in intertwiner_basis(si, sj):
                    blk = blk + u * rng.randint(-2, 3)
                row.append(blk.tolist())
            blocks.append(row)
        a = Matrix([sum((row[bj][r] for bj in range(len(sizes))), [])
                    for row in blocks for r in range(len(row[0]))])
    else:
        a = Matrix([[rng.randint(-1, 3) for _ in range(n)] for _ in range(n)])
    perm = _random_perm(n, rng)
    return {"P": p.permuted(perm), "A": a.permuted(perm)}


def _jordan_partner(n, rng):
    roll = rng.random()
    if roll < 0.8:
        rows = [[0] * n for _ in range(n)]
        descending = roll >= 0.4
        for d in range(n):
            vals = sorted((rng.randint(0, 3) for _ in range(n - d)), reverse=descending)
            for i, v in enumerate(vals):
                rows[i][i + d] = v
        return Matrix(rows)
    if roll < 0.9:
        return _poly(jordan_block(n), [rng.randint(0, 3) for _ in range(n)])
    return _random_positive(n, rng)


def _src_cor_5_3(n, rng):
    return {"B": _jordan_partner(n, rng)}


def _companion_instance(n, rng, kmin):
    k = rng.randint(kmin, n)
    coeffs = [0] * k
    if k < n:
        coeffs.append(rng.randint(1, 3))
        coeffs.extend(rng.randint(0, 3) for _ in range(n - k - 1))
    a = companion(coeffs)
    roll = rng.random()
    if roll < 0.15:
        b = _random_positive(n, rng)
    elif k == n and roll < 0.6:
        b = _jordan_partner(n, rng)
    else:
        b = _poly(a, [rng.randint(0, 3) for _ in range(min(n, 4))])
    return {"A": a, "B": b}


def _src_prop_5_2(n, rng):
    return _companion_instance(n, rng, 1)


def _src_thm_5_4(n, rng):
    return _companion_instance(n, rng, 0)


def _src_positive_idempotents(n, rng):
    roll = rng.random()
    if roll < 0.1:
        e, f = random_positive_idempotent(n, rng), random_positive_idempotent(n, rng)
    elif roll < 0.5:
        e, f = random_semicommuting_pair(n, "rank_one_idempotents", _seed(rng))
    else:
        pair = random_idempotent_pair(n, _seed(rng))
        e, f = pair.e, pair.f
    if rng.random() < 0.3:
        e, f = f, e
    return {"E": e, "F": f}


def _unit_upper(n, rng):
    rows = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)]
            for i in range(n)]
    return Matrix(rows)


def _random_projection(n, rng):
    for _ in range(100):
        r = rng.randint(0, n)
        if r == 0:
            return Matrix.zeros(n)
        x = Matrix([[rng.randint(-2, 2) for _ in range(r)] for _ in range(n)])
        y = Matrix([[rng.randint(-2, 2) for _ in range(r)] for _ in range(n)])
        try:
            return x @ inverse(y.T @ x) @ y.T
        except ZeroDivisionError:
            continue
    return Matrix.identity(n)


def _src_any_idempotents(n, rng):
    roll = rng.random()
    if roll < 0.4:
        return _src_positive_idempotents(n, rng)
    if roll < 0.7:
        pair = catalan_idempotent_pair(n)
        u = _unit_upper(n, rng)
        ui = inverse(u)
        return {"E": u @ pair.e @ ui, "F": u @ pair.f @ ui}
    if roll < 0.9:
        return {"E": _random_projection(n, rng), "F": _random_projection(n, rng)}
    pair = catalan_idempotent_pair(n)
    return {"E": pair.f, "F": pair.e}


def _src_lem_gn(n, rng):
    inst = _src_any_idempotents(n, rng)
    inst["level"] = rng.randint(0, 2)
    return inst


def _src_thm_6_3(n, rng):
    inst = _src_positive_idempotents(n, rng)
    e, f = inst["E"], inst["F"]
    roll = rng.random()
    if roll < 0.6:
        a = f * rng.randint(1, 3) + e * rng.randint(-3, 3) + Matrix.identity(n) * rng.randint(-3, 3)
    elif roll < 0.8:
        a = e * rng.randint(-2, 2) + Matrix.identity(n) * rng.randint(-2, 2)
    else:
        a = Matrix([[rng.randint(-1, 2) for _ in range(n)] for _ in range(n)])
    return {"E": e, "A": a}


SOURCES = {
    "LEM_2_1": _src_lem_2_1,
    "THM_3_2": _src_positive_pair,
    "THM_3_3": _src_thm_3_3,
    "LEM_4_2": _src_lem_4_2,
    "COR_4_3": _src_cor_4_3,
    "THM_4_5": _src_thm_4_5,
    "PROP_5_2": _src_prop_5_2,
    "COR_5_3": _src_cor_5_3,
    "THM_5_4": _src_thm_5_4,
    "LEM_6_1": _src_positive_idempotents,
    "LEM_6_2": _src_positive_idempotents,
    "THM_6_3": _src_thm_6_3,
    "THM_6_4": _src_positive_idempotents,
    "THM_6_6": _src_positive_idempotents,
    "LEM_GN": _src_lem_gn,
    "THM_NIL": _src_any_idempotents,
    "GLS": _src_any_idempotents,
    "COR_TRI": _src_positive_idempotents,
}


def _example_idempotents() -> list[tuple[str, dict]]:
    out = []
    for pair in (idempotent_pair_3x3(), idempotent_pair_7x7()):
        out.append((pair.provenance, {"E": pair.e, "F": pair.f}))
    return out


def _strict_idempotents() -> list[tuple[str, dict]]:
    # E has no zero column and EF - FE = E_12 >= 0
    e = Matrix([[1, 1], [0, 0]])
    f = Matrix([[0, 0], [0, 1]])
    return [("strict_2x2", {"E": e, "F": f})]


def witnesses(theorem_id: str, n_max: int) -> list[tuple[str, dict]]:
    """Constructed instances for ``theorem_id``; sized ones stop at ``n_max``."""
    sizes = range(1, n_max + 1)
    if theorem_id == "LEM_2_1":
        return [(f"cycle({n})", {"A": cycle(n), "B": cycle(n) @ cycle(n)}) for n in sizes]
    if theorem_id in ("THM_3_2",):
        return [(f"gerstenhaber({n})", dict(zip("AB", gerstenhaber_witness(n)))) for n in sizes]
    if theorem_id == "THM_3_3":
        return [(f"gerstenhaber({n})", {"n": n}) for n in sizes]
    if theorem_id == "LEM_4_2":
        return [(f"intertwiner({m},{n})", {"A": intertwiner_basis(m, n)[0]})
                for n in sizes for m in sizes]
    if theorem_id == "COR_4_3":
        return [(f"cycles({m},{n})", {"m": m, "n": n}) for n in sizes for m in sizes]
    if theorem_id == "THM_4_5":
        return [(f"cycle({n})", {"P": cycle(n), "A": cycle(n) @ cycle(n)}) for n in sizes]
    if theorem_id in ("PROP_5_2", "THM_5_4"):
        return [(f"gerstenhaber({n})", dict(zip("AB", gerstenhaber_witness(n)))) for n in sizes]
    if theorem_id == "COR_5_3":
        return [(f"gerstenhaber({n})", {"B": gerstenhaber_witness(n)[1]}) for n in sizes]
    if theorem_id == "THM_6_3":
        return [(name, {"E": inst["E"], "A": inst["F"]})
                for name, inst in _strict_idempotents() + _example_idempotents()]
    if theorem_id in ("LEM_6_1", "LEM_6_2", "THM_6_4"):
        return _strict_idempotents() + _example_idempotents()
    if theorem_id in ("THM_6_6", "COR_TRI"):
        return _example_idempotents()
    if theorem_id in ("LEM_GN", "THM_NIL", "GLS"):
        cat = [(f"catalan({n})", {"E": catalan_idempotent_pair(n).e,
                                  "F": catalan_idempotent_pair(n).f}) for n in sizes]
        return _example_idempotents() + cat
    return []


def _theorem_reports(theorem_id: str, n_max: int, trials: int, seed: int) -> list[TheoremReport]:
    reports = [check(theorem_id, inst, case=f"witness:{name}")
               for name, inst in witnesses(theorem_id, n_max)]
    source = SOURCES[theorem_id]
    for n in range(1, n_max + 1):
        for t in range(trials):
            rng = derive_rng("suite", seed, theorem_id, n, t)
            reports.append(check(theorem_id, source(n, rng), case=f"random:n={n}:t={t}"))
    return reports


def _theorem_reports_args(args):
    return _theorem_reports(*args)


def run_suite(n_max: int, trials_per_case: int, seed: int, theorems=None,
              jobs: int = 1) -> list[TheoremReport]:
    """Witnesses plus ``trials_per_case`` random instances per size, for each theorem.

    Every trial draws from its own stream keyed by (seed, theorem, size,
    trial), so the report does not depend on ``jobs``.
    """
    if n_max < 1 or trials_per_case < 1:
        raise UsageError("n_max and trials must be >= 1")
    ids = list(THEOREM_IDS if theorems is None else theorems)
    for tid in ids:
        if tid not in THEOREMS:
            raise UsageError(f"unknown theorem {tid!r}")
    args = [(tid, n_max, trials_per_case, seed) for tid in ids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_theorem_reports_args, args))
    else:
        chunks = [_theorem_reports_args(a) for a in args]
    return [r for chunk in chunks for r in chunk]


def summarize(reports) -> dict[str, dict[str, int]]:
    summary: dict[str, dict[str, int]] = {}
    for r in reports:
        row = summary.setdefault(r.theorem_id, {o.value: 0 for o in Outcome})
        row[r.outcome.value] += 1
    return summary
