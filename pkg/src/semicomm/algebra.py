"""Unital matrix algebras generated by a few matrices.

The closure is a breadth-first word search: start from the identity and
multiply every admitted element on the right by every generator, keeping a
product only when it enlarges the span.  Words come out shortest-first and,
within a length, in lexicographic order of generator indices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import DomainError, ShapeError
from .exact import Matrix, SpanBuilder, commutator, is_nilpotent, matrix_vector, rref

__all__ = [
    "AlgebraBasis",
    "IdempotentRelations",
    "Word",
    "algebra_dimension",
    "check_idempotent_relations",
    "commutator_nil_index",
    "evaluate_word",
    "lemma_gn_spans",
    "mccoy_triangularizable",
    "unital_algebra_basis",
    "verify_lemma_gn",
    "word_span_dims",
]

Word = tuple  # tuple[int, ...] of generator indices; () is the identity


def evaluate_word(word: Sequence[int], generators: Sequence[Matrix], n: int) -> Matrix:
    out = Matrix.identity(n)
    for g in word:
        out = out @ generators[g]
    return out


def _common_size(generators: Sequence[Matrix], n: int | None) -> int:
    for g in generators:
        if not g.is_square:
            raise ShapeError(f"generator of shape {g.shape} is not square")
    sizes = {g.rows for g in generators}
    if n is not None:
        sizes.add(n)
    if len(sizes) > 1:
        raise ShapeError(f"generators have different sizes {sorted(sizes)}")
    return sizes.pop() if sizes else 1


@dataclass
class AlgebraBasis:
    n: int
    generators: tuple[Matrix, ...]
    basis_words: list[Word]
    basis_matrices: list[Matrix]
    _span: SpanBuilder = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_matrices)

    @cached_property
    def rref_span(self) -> Matrix:
        """``dim x n^2`` reduced row-echelon form of the vectorized basis."""
        stacked = Matrix([list(m.entries) for m in self.basis_matrices])
        return rref(stacked)[0]

    def contains(self, m: Matrix) -> bool:
        if m.shape != (self.n, self.n):
            raise ShapeError(f"expected {self.n}x{self.n}, got {m.shape}")
        return self._span.contains(matrix_vector(m))

    def is_saturated(self) -> bool:
        """Every basis element times every generator, on either side, stays in the span."""
        return all(self.contains(b @ g) and self.contains(g @ b)
                   for b in self.basis_matrices for g in self.generators)


def unital_algebra_basis(generators: Sequence[Matrix], n: int | None = None) -> AlgebraBasis:
    """Word basis of the unital algebra generated by ``generators``.

    ``n`` is only needed when ``generators`` is empty (the result is then
    the span of the n x n identity).
    """
    gens = tuple(generators)
    size = _common_size(gens, n)
    span = SpanBuilder(size * size)
    ident = Matrix.identity(size)
    span.add(matrix_vector(ident))
    words: list[Word] = [()]
    mats = [ident]
    i = 0
    while i < len(mats):
        base, word = mats[i], words[i]
        for k, g in enumerate(gens):
            cand = base @ g
            if span.add(matrix_vector(cand)):
                mats.append(cand)
                words.append(word + (k,))
        i += 1
    return AlgebraBasis(size, gens, words, mats, span)


def algebra_dimension(*generators: Matrix) -> int:
    return unital_algebra_basis(generators).dim


def _check_pair(e: Matrix, f: Matrix) -> int:
    if not (e.is_square and f.is_square) or e.shape != f.shape:
        raise ShapeError(f"expected equal square shapes, got {e.shape} and {f.shape}")
    return e.rows


def word_span_dims(e: Matrix, f: Matrix, max_len: int) -> list[int]:
    """``dim V_0, ..., dim V_max_len`` where V_m is spanned by words of length <= m."""
    n = _check_pair(e, f)
    span = SpanBuilder(n * n)
    ident = Matrix.identity(n)
    span.add(matrix_vector(ident))
    dims = [1]
    frontier = [ident]
    for _ in range(max_len):
        nxt = []
        for x in frontier:
            for g in (e, f):
                cand = x @ g
                if span.add(matrix_vector(cand)):
                    nxt.append(cand)
        frontier = nxt
        dims.append(span.rank)
    return dims


def _words_up_to(e: Matrix, f: Matrix, length: int) -> list[Matrix]:
    """A spanning set of V_length (identity plus words of length <= length)."""
    n = e.rows
    span = SpanBuilder(n * n)
    ident = Matrix.identity(n)
    span.add(matrix_vector(ident))
    out = [ident]
    frontier = [ident]
    for _ in range(length):
        nxt = []
        for x in frontier:
            for g in (e, f):
                cand = x @ g
                if span.add(matrix_vector(cand)):
                    nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
    return out


def _span_rank(mats: Sequence[Matrix], n: int) -> int:
    sb = SpanBuilder(n * n)
    for m in mats:
        sb.add(matrix_vector(m))
    return sb.rank


def lemma_gn_spans(e: Matrix, f: Matrix, level: int) -> tuple[int, int, int]:
    """Ranks of G_level, of V_(2 level + 1) + [E,F]^level EF, and of their union.

    G_level spans ``[E,F]^j * {I, E, F, EF}`` for ``0 <= j <= level``.
    """
    n = _check_pair(e, f)
    if not (e.is_idempotent() and f.is_idempotent()):
        raise DomainError("the span identity needs idempotent inputs")
    if level < 0:
        raise ValueError("level must be >= 0")
    k = commutator(e, f)
    ef = e @ f
    c0 = [Matrix.identity(n), e, f, ef]
    g_side = []
    power = Matrix.identity(n)
    for _ in range(level + 1):
        g_side.extend(power @ c for c in c0)
        last = power
        power = power @ k
    r_side = _words_up_to(e, f, 2 * level + 1) + [last @ ef]
    return _span_rank(g_side, n), _span_rank(r_side, n), _span_rank(g_side + r_side, n)


def verify_lemma_gn(e: Matrix, f: Matrix, n: int) -> bool:
    dg, dr, du = lemma_gn_spans(e, f, n)
    return dg == dr == du


def _random_combination(mats: Sequence[Matrix], rng: random.Random) -> Matrix:
    out = None
    for m in mats:
        c = rng.randint(-4, 4)
        if c:
            term = m * c
            out = term if out is None else out + term
    return out if out is not None else mats[0] * 0


def mccoy_triangularizable(a: Matrix, b: Matrix, samples: int = 200, seed: int = 0) -> bool:
    """Simultaneous triangularizability of ``a`` and ``b`` over C (McCoy).

    Decided exactly by ``trace(w [a, b]) == 0`` for every basis element ``w``
    of the generated algebra (then every ``x [a, b]`` with ``x`` in the
    algebra has all power traces zero, hence is nilpotent).  The per-word
    nilpotency test and ``samples`` seeded random combinations are run as
    consistency checks against that certificate.
    """
    _check_pair(a, b)
    k = a @ b - b @ a
    if k.is_zero():
        return True
    basis = unital_algebra_basis([a, b]).basis_matrices
    products = [w @ k for w in basis]
    exact = all(p.trace() == 0 for p in products)
    if not exact:
        return False
    assert all(is_nilpotent(p) for p in products), "trace certificate contradicts a word"
    rng = random.Random(seed)
    for _ in range(samples):
        x = _random_combination(products, rng)
        assert is_nilpotent(x), "trace certificate contradicts a random combination"
    return True


def commutator_nil_index(a: Matrix, b: Matrix) -> int | None:
    """Least k <= n with ``[a, b]^k == 0``; None when the commutator is not nilpotent."""
    n = _check_pair(a, b)
    k = a @ b - b @ a
    p = k
    for i in range(1, n + 1):
        if p.is_zero():
            return i
        p = p @ k
    return None


@dataclass(frozen=True)
class IdempotentRelations:
    efe_eq_fe: bool
    fef_eq_ef: bool
    fe_idempotent: bool
    ef_idempotent: bool
    comm_square_zero: bool
    commuting: bool
    fef_eq_fe: bool
    efe_eq_ef: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def check_idempotent_relations(e: Matrix, f: Matrix) -> IdempotentRelations:
    """Evaluate the product identities between an idempotent ``e`` and ``f``.

    ``f`` need not be idempotent, which lets the same report serve the
    single-idempotent statements.
    """
    _check_pair(e, f)
    if not e.is_idempotent():
        raise DomainError("e is not idempotent")
    ef, fe = e @ f, f @ e
    efe, fef = ef @ e, fe @ f
    k = ef - fe
    return IdempotentRelations(
        efe_eq_fe=efe == fe,
        fef_eq_ef=fef == ef,
        fe_idempotent=fe @ fe == fe,
        ef_idempotent=ef @ ef == ef,
        comm_square_zero=(k @ k).is_zero(),
        commuting=k.is_zero(),
        fef_eq_fe=fef == fe,
        efe_eq_ef=efe == ef,
    )
