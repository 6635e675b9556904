"""Order structure of real matrices: signs, irreducibility, ideal chains.

Order ideals of R^n are coordinate subspaces, so everything here reduces to
the support digraph of a positive matrix (edge ``i -> j`` iff ``m[i, j] > 0``).
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass

from .errors import DomainError, ShapeError
from .exact import Matrix, commutator

__all__ = [
    "IdealChain",
    "SignClass",
    "commutator_sign",
    "invariant_ideal_chain",
    "is_ideal_irreducible",
    "is_ideal_irreducible_power",
    "is_ideal_triangularizable",
    "is_positive",
    "is_strictly_positive",
    "refined_bound",
    "semi_commute",
    "sign_class",
]


class SignClass(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


def sign_class(m: Matrix) -> SignClass:
    pos = neg = False
    for row in m.numerators:
        for x in row:
            if x > 0:
                pos = True
            elif x < 0:
                neg = True
        if pos and neg:
            return SignClass.MIXED
    if pos:
        return SignClass.POSITIVE
    if neg:
        return SignClass.NEGATIVE
    return SignClass.ZERO


def is_positive(m: Matrix) -> bool:
    """Entrywise ``m >= 0`` (the zero matrix counts as positive)."""
    return sign_class(m) in (SignClass.POSITIVE, SignClass.ZERO)


def commutator_sign(a: Matrix, b: Matrix) -> SignClass:
    return sign_class(commutator(a, b))


def semi_commute(a: Matrix, b: Matrix) -> bool:
    return commutator_sign(a, b) is not SignClass.MIXED


def _require_positive(m: Matrix, square: bool = True) -> None:
    if square and not m.is_square:
        raise ShapeError(f"expected a square matrix, got {m.shape}")
    if not is_positive(m):
        raise DomainError("matrix is not positive")


def is_strictly_positive(m: Matrix) -> bool:
    """No zero column, i.e. the kernel holds no nonzero positive vector."""
    _require_positive(m, square=False)
    num = m.numerators
    return all(any(num[i][j] for i in range(m.rows)) for j in range(m.cols))


def _successors(m: Matrix) -> list[list[int]]:
    return [[j for j, x in enumerate(row) if x > 0] for row in m.numerators]


def _scc(succ: list[list[int]]) -> list[int]:
    """Tarjan's algorithm (iterative); returns a component label per vertex."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            if k < len(succ[v]):
                work[-1] = (v, k + 1)
                w = succ[v][k]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def is_ideal_irreducible(m: Matrix) -> bool:
    """Strong connectivity of the support digraph.

    Cross-checked against the ``(I + m)^(n-1) > 0`` criterion; the two must
    agree or an AssertionError is raised.
    """
    _require_positive(m)
    comp = _scc(_successors(m))
    by_graph = len(set(comp)) == 1
    by_power = is_ideal_irreducible_power(m)
    assert by_graph == by_power, "SCC and power criteria disagree"
    return by_graph


def is_ideal_irreducible_power(m: Matrix) -> bool:
    """``(I + m)^(n-1)`` entrywise positive, evaluated on the boolean support."""
    _require_positive(m)
    n = m.rows
    reach = [[(x > 0) or i == j for j, x in enumerate(row)]
             for i, row in enumerate(m.numerators)]
    # (I + m)^k for k >= n-1 has the same support as (I + m)^(n-1)
    steps = 1
    while steps < n - 1:
        reach = [[any(ri[k] and reach[k][j] for k in range(n)) for j in range(n)]
                 for ri in reach]
        steps *= 2
    return all(all(r) for r in reach)


@dataclass(frozen=True)
class IdealChain:
    """Frobenius normal form data.

    ``permutation[k]`` is the original (zero-based) index placed at position
    ``k``; ``m.permuted(permutation)`` is block upper-triangular with
    ideal-irreducible diagonal blocks of sizes ``block_sizes``.
    """

    permutation: tuple[int, ...]
    block_sizes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.block_sizes)

    def permutation_matrix(self) -> Matrix:
        n = len(self.permutation)
        return Matrix._raw(tuple(tuple(int(self.permutation[c] == r) for c in range(n))
                                 for r in range(n)))

    def apply(self, m: Matrix) -> Matrix:
        return m.permuted(self.permutation)


def invariant_ideal_chain(m: Matrix) -> IdealChain:
    """Maximal chain of invariant order ideals via strongly connected components.

    Components are ordered topologically (edges go from earlier to later
    blocks); ties go to the component holding the smallest original index.
    """
    _require_positive(m)
    succ = _successors(m)
    comp = _scc(succ)
    ncomp = max(comp) + 1
    members: list[list[int]] = [[] for _ in range(ncomp)]
    for v, c in enumerate(comp):
        members[c].append(v)
    indeg = [0] * ncomp
    out: list[set[int]] = [set() for _ in range(ncomp)]
    for v, ws in enumerate(succ):
        for w in ws:
            a, b = comp[v], comp[w]
            if a != b and b not in out[a]:
                out[a].add(b)
                indeg[b] += 1
    heap = [(members[c][0], c) for c in range(ncomp) if indeg[c] == 0]
    heapq.heapify(heap)
    perm: list[int] = []
    sizes: list[int] = []
    while heap:
        _, c = heapq.heappop(heap)
        perm.extend(members[c])
        sizes.append(len(members[c]))
        for b in sorted(out[c]):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (members[b][0], b))
    return IdealChain(tuple(perm), tuple(sizes))


def is_ideal_triangularizable(m: Matrix) -> bool:
    return all(s == 1 for s in invariant_ideal_chain(m).block_sizes)


def refined_bound(a: Matrix, b: Matrix) -> int:
    """``n + sum_{i<j} n_i n_j`` over the ideal chain of ``a + b``."""
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    _require_positive(a)
    _require_positive(b)
    sizes = invariant_ideal_chain(a + b).block_sizes
    total = sum(sizes)
    return total + (total * total - sum(s * s for s in sizes)) // 2
