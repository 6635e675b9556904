"""Named matrix families, the extremal examples, and seeded instance generators."""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, GenerationError, ShapeError, UsageError
from .exact import Matrix, block_diag
from .order import SignClass, commutator_sign

__all__ = [
    "FAMILIES",
    "CompanionSpec",
    "IdempotentPair",
    "catalan",
    "catalan_idempotent_pair",
    "companion",
    "companion_coefficients",
    "cycle",
    "derive_rng",
    "diagonalize_idempotent",
    "gerstenhaber_witness",
    "idempotent_pair_3x3",
    "idempotent_pair_7x7",
    "intertwiner_basis",
    "jordan_block",
    "permutation_from_cycle_type",
    "permutation_matrix",
    "random_idempotent_pair",
    "random_positive_idempotent",
    "random_semicommuting_pair",
    "verify_intertwiner_structure",
]

FAMILIES = ("diag_dominated", "commuting_poly", "block_chain", "rank_one_idempotents")
MAX_ATTEMPTS = 10_000


def _check_size(n: int) -> None:
    if n < 1:
        raise DomainError(f"size must be >= 1, got {n}")


def jordan_block(n: int) -> Matrix:
    """Nilpotent upper shift J_n."""
    _check_size(n)
    return Matrix._raw(tuple(tuple(int(j == i + 1) for j in range(n)) for i in range(n)))


def cycle(n: int) -> Matrix:
    """C_n with C e_j = e_{j-1} (j >= 2) and C e_1 = e_n."""
    _check_size(n)
    return Matrix._raw(tuple(tuple(int(j == (i + 1) % n) for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class CompanionSpec:
    """Bottom-row coefficients a_0, ..., a_{n-1} of a companion matrix."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Sequence):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise DomainError("companion matrix needs at least one coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def zero_multiplicity(self) -> int:
        """Number of leading zero coefficients (algebraic multiplicity of eigenvalue 0)."""
        k = 0
        for c in self.coefficients:
            if c != 0:
                break
            k += 1
        return k


def companion(spec: CompanionSpec | Sequence) -> Matrix:
    if not isinstance(spec, CompanionSpec):
        spec = CompanionSpec(spec)
    n = spec.n
    rows = [[int(j == i + 1) for j in range(n)] for i in range(n - 1)]
    rows.append(list(spec.coefficients))
    return Matrix(rows)


def companion_coefficients(m: Matrix) -> tuple[Fraction, ...] | None:
    """Bottom row if ``m`` has the companion shape, else None."""
    if not m.is_square:
        return None
    n = m.rows
    num = m.numerators
    for i in range(n - 1):
        for j in range(n):
            if num[i][j] != (m.denominator if j == i + 1 else 0):
                return None
    return tuple(m[n - 1, j] for j in range(n))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix P with P e_k = e_{perm[k]} (zero-based)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DomainError(f"not a permutation: {perm}")
    return Matrix._raw(tuple(tuple(int(perm[c] == r) for c in range(n)) for r in range(n)))


def permutation_from_cycle_type(sizes: Sequence[int]) -> Matrix:
    """Block diagonal of cycles C_{n_1}, ..., C_{n_k}."""
    if not sizes:
        raise DomainError("need at least one cycle")
    for s in sizes:
        _check_size(s)
    return block_diag(*(cycle(s) for s in sizes))


def gerstenhaber_witness(n: int) -> tuple[Matrix, Matrix]:
    """(J_n, diag(1, ..., n)); the pair generates all upper-triangular matrices."""
    _check_size(n)
    return jordan_block(n), Matrix.diag(range(1, n + 1))


def intertwiner_basis(m: int, n: int) -> list[Matrix]:
    """Basis u_1..u_d (d = gcd) of the m x n solutions of C_m X = X C_n.

    u_j is the 0/1 indicator of the orbit through (1, j) under the
    diagonal step (i, j) -> (i + 1, j + 1), indices wrapping mod m and n.
    """
    _check_size(m)
    _check_size(n)
    d = math.gcd(m, n)
    v = m * n // d
    basis = []
    for j in range(1, d + 1):
        rows = [[0] * n for _ in range(m)]
        for x in range(1, v + 1):
            # 1-based residues 1 + x and j + x, converted to 0-based
            rows[x % m][(j - 1 + x) % n] = 1
        basis.append(Matrix(rows))
    return basis


def verify_intertwiner_structure(a: Matrix, m: int, n: int) -> bool:
    """Wrap-around Toeplitz test ``a[i, j-1] == a[i+1, j]``; must agree with C_m a == a C_n."""
    if a.shape != (m, n):
        raise ShapeError(f"expected {m}x{n}, got {a.shape}")
    num = a.numerators
    toeplitz = all(num[i][(j - 1) % n] == num[(i + 1) % m][j]
                   for i in range(m) for j in range(n))
    by_product = cycle(m) @ a == a @ cycle(n)
    assert toeplitz == by_product, "Toeplitz and product criteria disagree"
    return toeplitz


@dataclass(frozen=True)
class IdempotentPair:
    e: Matrix
    f: Matrix
    provenance: str = "custom"

    def __post_init__(self):
        if not (self.e.is_idempotent() and self.f.is_idempotent()):
            raise DomainError(f"{self.provenance}: matrices are not idempotent")


def idempotent_pair_7x7() -> IdempotentPair:
    e = Matrix([
        [1, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0],
    ])
    f = Matrix([
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 1],
    ])
    return IdempotentPair(e, f, "example_7x7")


def idempotent_pair_3x3() -> IdempotentPair:
    e = Matrix([[0, 1, 0], [0, 1, 0], [0, 0, 0]])
    f = Matrix([[0, 0, 0], [0, 1, 1], [0, 0, 0]])
    return IdempotentPair(e, f, "example_3x3")


def catalan(j: int) -> int:
    return math.comb(2 * j, j) // (j + 1)


def catalan_idempotent_pair(n: int) -> IdempotentPair:
    """E = diag(1,0,1,0,...) with the Catalan-patterned upper-triangular F.

    F has diagonal (1,0,1,...), ones on the first super-diagonal and, on the
    2j-th super-diagonal, -C_{j-1} in odd (1-based) rows and +C_{j-1} in
    even rows, for 1 <= j <= (n-1)//2.
    """
    _check_size(n)
    e = Matrix.diag([1 - i % 2 for i in range(n)])
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 - i % 2
        if i + 1 < n:
            rows[i][i + 1] = 1
    for j in range(1, (n - 1) // 2 + 1):
        c = catalan(j - 1)
        for i in range(n - 2 * j):
            rows[i][i + 2 * j] = -c if i % 2 == 0 else c
    return IdempotentPair(e, Matrix(rows), f"catalan({n})")


def _diagonal_runs(e: Matrix) -> list[tuple[int, int]]:
    runs = []
    start = 0
    for i in range(1, e.rows + 1):
        if i == e.rows or e[i, i] != e[start, start]:
            runs.append((start, i))
            start = i
    return runs


def diagonalize_idempotent(e: Matrix, f: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Unit upper-triangular P making ``P e P^-1`` diagonal; returns (P, PeP^-1, PfP^-1).

    ``e`` and ``f`` must be upper-triangular with ``e`` idempotent.  Blocks are
    the maximal runs of equal diagonal values of ``e``.  Block super-diagonals
    are cleared one at a time: offset d between blocks of opposite value is
    killed by P = I + N with N carrying +E_{i,i+d} below a 1-block and
    -E_{i,i+d} below a 0-block; between equal-valued blocks idempotency
    already forces zero.
    """
    if e.shape != f.shape or not e.is_square:
        raise ShapeError("expected square matrices of equal size")
    if not (e.is_upper_triangular() and f.is_upper_triangular()):
        raise DomainError("inputs must be upper-triangular")
    if not e.is_idempotent():
        raise DomainError("e is not idempotent")
    n = e.rows
    runs = _diagonal_runs(e)
    k = len(runs)
    total = Matrix.identity(n)
    for d in range(1, k):
        rows = [[Fraction(0)] * n for _ in range(n)]
        cur = e.tolist()
        touched = False
        for bi in range(k - d):
            r0, r1 = runs[bi]
            c0, c1 = runs[bi + d]
            top = cur[r0][r0]
            if top == cur[c0][c0]:
                assert all(cur[r][c] == 0 for r in range(r0, r1) for c in range(c0, c1)), \
                    "idempotency should clear equal-valued block pairs"
                continue
            sign = 1 if top == 1 else -1
            for r in range(r0, r1):
                for c in range(c0, c1):
                    if cur[r][c]:
                        rows[r][c] = sign * cur[r][c]
                        touched = True
        if not touched:
            continue
        nmat = Matrix(rows)
        p = Matrix.identity(n) + nmat
        p_inv = Matrix.identity(n)
        term = Matrix.identity(n)
        for _ in range(k):
            term = term @ (-nmat)
            if term.is_zero():
                break
            p_inv = p_inv + term
        e = p @ e @ p_inv
        f = p @ f @ p_inv
        total = p @ total
    return total, e, f


# ----------------------------------------------------------------------
# Seeded generators
# ----------------------------------------------------------------------

def derive_rng(*key) -> random.Random:
    """Independent stream for an arbitrary key tuple (stable across runs and processes)."""
    digest = hashlib.sha256(repr(key).encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def _random_positive(n: int, rng: random.Random, density: float = 0.5, top: int = 3) -> list[list[int]]:
    return [[rng.randint(1, top) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)]


def _poly(a: Matrix, coeffs: Sequence[int]) -> Matrix:
    n = a.rows
    out = Matrix.zeros(n)
    power = Matrix.identity(n)
    for c in coeffs:
        if c:
            out = out + power * c
        power = power @ a
    return out


def _diag_dominated(n, rng):
    b = sorted(rng.randint(1, n + 1) for _ in range(n))
    a = [[rng.choice((0, 0, 1, 2, 3)) if b[j] >= b[i] else 0 for j in range(n)]
         for i in range(n)]
    return Matrix(a), Matrix.diag(b)


def _commuting_poly(n, rng):
    a = Matrix(_random_positive(n, rng, density=rng.choice((0.3, 0.5, 0.8))))
    deg = rng.randint(0, min(n - 1, 2))
    coeffs = [rng.randint(0, 3) for _ in range(deg + 1)]
    return a, _poly(a, coeffs)


def _composition(n: int, rng: random.Random) -> list[int]:
    k = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    bounds = [0] + cuts + [n]
    return [bounds[i + 1] - bounds[i] for i in range(k)]


def _block_chain(n, rng):
    sizes = _composition(n, rng)
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    a = [[0] * n for _ in range(n)]
    for bi, (o, s) in enumerate(zip(offsets, sizes)):
        for i in range(o, o + s):
            for j in range(o, n):
                if j < o + s:
                    a[i][j] = rng.randint(1, 3) if rng.random() < 0.7 else 0
                else:
                    a[i][j] = rng.randint(1, 3) if rng.random() < 0.4 else 0
    am = Matrix(a)
    betas = sorted(rng.randint(1, 4) for _ in sizes)
    for _ in range(20):
        blocks = []
        for o, s, beta in zip(offsets, sizes, betas):
            sub = am.submatrix(o, o + s, o, o + s)
            blocks.append(Matrix.identity(s) * beta + _poly(sub, [0] + [rng.randint(0, 1) for _ in range(2)]))
        b = [list(map(int, r)) for r in block_diag(*blocks).tolist()]
        for bi, (o, s) in enumerate(zip(offsets, sizes)):
            for i in range(o, o + s):
                for j in range(o + s, n):
                    b[i][j] = rng.randint(1, 2) if rng.random() < 0.3 else 0
        bm = Matrix(b)
        if commutator_sign(am, bm) in (SignClass.POSITIVE, SignClass.ZERO):
            return am, bm
    # scalar diagonal blocks with nondecreasing scalars always qualify
    return am, block_diag(*(Matrix.identity(s) * beta for s, beta in zip(sizes, betas)))


def _random_support(n: int, rng: random.Random, allowed: Sequence[int], need: int = 0) -> list[int]:
    pool = list(allowed)
    picked = [i for i in pool if rng.random() < 0.5]
    if len(picked) < need:
        picked = sorted(set(picked) | set(rng.sample(pool, need)))
    return picked


def _rank_one_pair(n, rng):
    idx = list(range(n))
    if n == 1:
        one = Matrix([[1]])
        return one, one
    # shared column u (arrangement 0) or shared row v (arrangement 1)
    arrangement = rng.randint(0, 1)
    core = _random_support(n, rng, idx, need=1)
    if len(core) == n and rng.random() < 0.8:
        core.remove(rng.choice(core))
    rest = [i for i in idx if i not in core]
    shared = [0] * n
    for i in core:
        shared[i] = rng.randint(1, 3)
    other = [0] * n
    for i in _random_support(n, rng, idx, need=1):
        other[i] = rng.randint(1, 3)
    if not any(other[i] for i in core):
        other[rng.choice(core)] = rng.randint(1, 3)
    scale = Fraction(sum(shared[i] * other[i] for i in idx))
    other = [Fraction(x) / scale for x in other]
    extra = [0] * n
    for i in _random_support(n, rng, rest) if rest else []:
        extra[i] = rng.randint(1, 3)
    plus = [o + x for o, x in zip(other, extra)]
    col = Matrix([[x] for x in shared])
    if arrangement == 0:
        # E = u v^T, F = u (v + w)^T with w off supp(u): EF - FE = u w^T
        e = col @ Matrix([other])
        f = col @ Matrix([plus])
    else:
        # E = (x + w) v^T, F = x v^T with w off supp(v): EF - FE = w v^T
        row = Matrix([shared])
        e = Matrix([[x] for x in plus]) @ row
        f = Matrix([[x] for x in other]) @ row
    return e, f


_GENERATORS = {
    "diag_dominated": _diag_dominated,
    "commuting_poly": _commuting_poly,
    "block_chain": _block_chain,
    "rank_one_idempotents": _rank_one_pair,
}


def random_semicommuting_pair(n: int, family: str, seed: int) -> tuple[Matrix, Matrix]:
    """Deterministic positive pair with ``commutator_sign`` Positive or Zero."""
    _check_size(n)
    if family not in _GENERATORS:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    gen = _GENERATORS[family]
    for attempt in range(MAX_ATTEMPTS):
        rng = derive_rng("pair", family, n, seed, attempt)
        a, b = gen(n, rng)
        if commutator_sign(a, b) in (SignClass.POSITIVE, SignClass.ZERO):
            if family != "rank_one_idempotents" or (a.is_idempotent() and b.is_idempotent()):
                return a, b
    raise GenerationError(f"{family}: no admissible pair after {MAX_ATTEMPTS} attempts")


def random_positive_idempotent(n: int, rng: random.Random) -> Matrix:
    """Random positive idempotent sum_k u_k v_k^T with v_k . u_l = delta_kl.

    Indices split into cores S_k (shared by u_k and v_k), a u-only tail and
    a v-only tail, which keeps distinct rank-one terms orthogonal.
    """
    idx = list(range(n))
    rng.shuffle(idx)
    r = rng.randint(1, max(1, (n + 1) // 2))
    cores = [[idx[k]] for k in range(r)]
    u_tail, v_tail = [], []
    for i in idx[r:]:
        roll = rng.random()
        if roll < 0.3:
            cores[rng.randrange(r)].append(i)
        elif roll < 0.55:
            u_tail.append(i)
        elif roll < 0.8:
            v_tail.append(i)
    total = Matrix.zeros(n)
    for core in cores:
        u = [0] * n
        v = [0] * n
        for i in core:
            u[i] = rng.randint(1, 2)
            v[i] = rng.randint(1, 2)
        for i in u_tail:
            if rng.random() < 0.5:
                u[i] = rng.randint(1, 2)
        for i in v_tail:
            if rng.random() < 0.5:
                v[i] = rng.randint(1, 2)
        s = sum(x * y for x, y in zip(u, v))
        total = total + Matrix([[x] for x in u]) @ Matrix([[Fraction(y, s) for y in v]])
    return total


def random_idempotent_pair(n: int, seed: int) -> IdempotentPair:
    """Positive idempotents with EF >= FE (hence EF >= FE >= 0).

    Mixes rejection sampling over independent structured idempotents,
    rank-one arrangements, the 3x3 example padded by zeros, and direct sums,
    all under a random simultaneous permutation.
    """
    _check_size(n)
    for attempt in range(MAX_ATTEMPTS):
        rng = derive_rng("idem", n, seed, attempt)
        e, f = _idempotent_candidate(n, rng)
        sign = commutator_sign(e, f)
        if sign is SignClass.NEGATIVE:
            e, f = f, e
        elif sign is SignClass.MIXED:
            continue
        perm = list(range(n))
        rng.shuffle(perm)
        return IdempotentPair(e.permuted(perm), f.permuted(perm), "random")
    raise GenerationError(f"no semi-commuting idempotent pair after {MAX_ATTEMPTS} attempts")


def _idempotent_candidate(n: int, rng: random.Random) -> tuple[Matrix, Matrix]:
    roll = rng.random()
    if n >= 3 and roll < 0.15:
        ex = idempotent_pair_3x3()
        if n == 3:
            return ex.e, ex.f
        e2, f2 = _idempotent_candidate(n - 3, rng)
        if commutator_sign(e2, f2) is SignClass.NEGATIVE:
            e2, f2 = f2, e2
        return block_diag(ex.e, e2), block_diag(ex.f, f2)
    if n >= 2 and roll < 0.35:
        k = rng.randint(1, n - 1)
        e1, f1 = _idempotent_candidate(k, rng)
        e2, f2 = _idempotent_candidate(n - k, rng)
        if commutator_sign(e1, f1) is SignClass.NEGATIVE:
            e1, f1 = f1, e1
        if commutator_sign(e2, f2) is SignClass.NEGATIVE:
            e2, f2 = f2, e2
        return block_diag(e1, e2), block_diag(f1, f2)
    if roll < 0.55:
        return _rank_one_pair(n, rng)
    return random_positive_idempotent(n, rng), random_positive_idempotent(n, rng)
