"""Independent reference computations on plain lists of Fractions.

Nothing here imports the package's linear algebra, so agreement between
the two is evidence rather than tautology.
"""

from fractions import Fraction
from itertools import product


def to_lists(m):
    return [[Fraction(x) for x in row] for row in m]


def mul(a, b):
    n, k, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p)] for i in range(n)]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def flat(m):
    return [x for row in m for x in row]


def rank(vectors):
    """Rank of a list of equal-length vectors by textbook Gaussian elimination."""
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def brute_force_dim(gens, n):
    """Words level by level (deduplicated), rank of all of them, cap n^2.

    Stops early once a level adds no rank: the span of words of length
    <= L+1 is span(V_L) + V_L * gens, so a stationary level is final.
    """
    level = [eye(n)]
    seen = {tuple(flat(level[0]))}
    allv = [flat(level[0])]
    r = 1
    for _ in range(n * n):
        nxt = []
        for w in level:
            for g in gens:
                p = mul(w, g)
                key = tuple(flat(p))
                if key not in seen:
                    seen.add(key)
                    nxt.append(p)
        allv.extend(flat(p) for p in nxt)
        new_r = rank(allv)
        if new_r == r:
            break
        r = new_r
        level = nxt
    return r


def intertwiner_solution_dim(m, n):
    """Dimension of {X : C_m X = X C_n} from the explicit linear system."""
    def cyc(k):
        return [[Fraction(int(j == (i + 1) % k)) for j in range(k)] for i in range(k)]
    cm, cn = cyc(m), cyc(n)
    cols = []
    for a in range(m):
        for b in range(n):
            x = [[Fraction(int((i, j) == (a, b))) for j in range(n)] for i in range(m)]
            d = [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(mul(cm, x), mul(x, cn))]
            cols.append(flat(d))
    return m * n - rank(cols)


def has_positive_kernel_vector(m, bound=2):
    """Search small nonnegative integer vectors for a nonzero kernel element.

    For positive m a nonzero positive kernel vector exists iff some column
    is zero, and then a unit vector witnesses it, so ``bound`` >= 1 is
    enough to be exhaustive for this question.
    """
    n = len(m[0])
    for v in product(range(bound + 1), repeat=n):
        if any(v) and all(sum(row[j] * v[j] for j in range(n)) == 0 for row in m):
            return True
    return False
