"""Exact-rational linear feasibility and small-solution machinery.

Systems are rows of rational coefficients with relations {=, <=, >=, <}
over implicitly non-negative variables.  Feasibility runs an exact
two-phase simplex with Bland's rule; strict rows are handled by
maximizing a slack epsilon.  ``shrink_solution`` turns any non-negative
solution into one with few positive entries and certified entry sizes,
by pinning inequalities, support reduction through kernel walks, and
dependent-row removal down to a square nonsingular system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .syntax import rat_str, size_int


class Rel(enum.Enum):
    EQ = "="
    LE = "<="
    GE = ">="
    LT = "<"


@dataclass(frozen=True)
class Row:
    coeffs: tuple
    rel: Rel
    rhs: Fraction


@dataclass(frozen=True)
class LinearSystem:
    rows: tuple
    var_count: int

    def __post_init__(self):
        for row in self.rows:
            if len(row.coeffs) != self.var_count:
                raise ValueError("row length does not match var_count")


@dataclass(frozen=True)
class Solution:
    values: tuple


def make_system(rows, var_count):
    out = []
    for coeffs, rel, rhs in rows:
        out.append(Row(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs)))
    return LinearSystem(tuple(out), var_count)


def row_str(row: Row) -> str:
    terms = " + ".join(
        f"{rat_str(c)}*z{i + 1}" for i, c in enumerate(row.coeffs) if c != 0
    )
    if not terms:
        terms = "0"
    return f"{terms} {row.rel.value} {rat_str(row.rhs)}"


def system_str(system: LinearSystem) -> str:
    return "\n".join(row_str(row) for row in system.rows)


def _holds(lhs: Fraction, rel: Rel, rhs: Fraction) -> bool:
    if rel is Rel.EQ:
        return lhs == rhs
    if rel is Rel.LE:
        return lhs <= rhs
    if rel is Rel.GE:
        return lhs >= rhs
    return lhs < rhs


def satisfies(system: LinearSystem, values) -> bool:
    """Exact substitution check; strict rows must hold strictly, and all
    entries must be non-negative."""
    if any(v < 0 for v in values):
        return False
    for row in system.rows:
        lhs = sum(c * v for c, v in zip(row.coeffs, values))
        if not _holds(lhs, row.rel, row.rhs):
            return False
    return True


class UnboundedError(RuntimeError):
    pass


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    prow = tableau[row]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            f = tableau[i][col]
            tableau[i] = [a - f * b for a, b in zip(tableau[i], prow)]
    basis[row] = col


def _run_simplex(tableau, basis, cost):
    """Minimize cost over the tableau in place, Bland's rule throughout."""
    m = len(tableau)
    ncols = len(cost)
    while True:
        in_basis = set(basis)
        cb = [cost[b] for b in basis]
        enter = -1
        for j in range(ncols):
            if j in in_basis:
                continue
            reduced = cost[j] - sum(cb[i] * tableau[i][j] for i in range(m))
            if reduced < 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][-1] / tableau[i][enter]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise UnboundedError("objective unbounded")
        _pivot(tableau, basis, leave, enter)


def _lp_max(rows, n, objective):
    """Maximize objective over {x >= 0 : rows hold}, rows with Rel.EQ/Rel.LE
    only.  Returns the optimal x as a list of Fractions, or None if
    infeasible."""
    le_rows = [i for i, r in enumerate(rows) if r.rel is Rel.LE]
    slack_of = {ri: n + k for k, ri in enumerate(le_rows)}
    ns = len(le_rows)
    m = len(rows)
    art_start = n + ns
    ncols = art_start + m
    tableau = []
    basis = []
    for i, row in enumerate(rows):
        line = [Fraction(c) for c in row.coeffs] + [Fraction(0)] * (ns + m)
        if row.rel is Rel.LE:
            line[slack_of[i]] = Fraction(1)
        rhs = Fraction(row.rhs)
        if rhs < 0:
            line = [-v for v in line]
            rhs = -rhs
        line[art_start + i] = Fraction(1)
        tableau.append(line + [rhs])
        basis.append(art_start + i)

    # phase 1: minimize the sum of artificials
    cost1 = [Fraction(0)] * art_start + [Fraction(1)] * m
    _run_simplex(tableau, basis, cost1)
    if sum(tableau[i][-1] for i in range(m) if basis[i] >= art_start) > 0:
        return None

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tableau):
        if basis[i] >= art_start:
            col = next(
                (j for j in range(art_start) if tableau[i][j] != 0), None
            )
            if col is None:
                del tableau[i]
                del basis[i]
                continue
            _pivot(tableau, basis, i, col)
        i += 1

    # phase 2 without artificial columns
    tableau = [line[:art_start] + [line[-1]] for line in tableau]
    cost2 = [-Fraction(objective[j]) if j < n else Fraction(0) for j in range(art_start)]
    _run_simplex(tableau, basis, cost2)

    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = tableau[i][-1]
    return x


def feasible(system: LinearSystem):
    """A non-negative exact solution (strict rows strictly), or None.

    Strict rows are rewritten as <= rhs - eps and a single slack eps,
    bounded by 1, is maximized; the system is feasible iff the optimum
    has eps > 0.
    """
    n = system.var_count
    strict = any(row.rel is Rel.LT for row in system.rows)
    zero = Fraction(0)
    rows = []
    extra = 1 if strict else 0
    for row in system.rows:
        coeffs = list(row.coeffs) + [zero] * extra
        rel, rhs = row.rel, row.rhs
        if rel is Rel.GE:
            coeffs = [-c for c in coeffs]
            rel, rhs = Rel.LE, -rhs
        elif rel is Rel.LT:
            coeffs[n] = Fraction(1)
            rel = Rel.LE
        rows.append(Row(tuple(coeffs), rel, rhs))
    if strict:
        eps_bound = [zero] * n + [Fraction(1)]
        rows.append(Row(tuple(eps_bound), Rel.LE, Fraction(1)))
        objective = eps_bound
    else:
        objective = [zero] * n

    if not rows:
        return Solution((zero,) * n)
    x = _lp_max(rows, n + extra, objective)
    if x is None:
        return None
    if strict and x[n] <= 0:
        return None
    sol = Solution(tuple(x[:n]))
    if not satisfies(system, sol.values):
        raise AssertionError("simplex produced an invalid solution")
    return sol


# --- exact linear algebra helpers ---

def _kernel_vector(matrix, k):
    """A nonzero rational vector in the kernel of the r x k matrix, or None
    if the columns are independent."""
    rows = [list(r) for r in matrix]
    pivots = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(k) if c not in pivots]
    if not free:
        return None
    f0 = free[0]
    v = [Fraction(0)] * k
    v[f0] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -rows[i][f0]
    return v


def _independent_row_indices(matrix):
    """Indices of a maximal independent subset of rows, first-come order."""
    kept = []
    reduced = []  # rows in echelon form, paired pivot columns
    for idx, row in enumerate(matrix):
        work = list(row)
        for prow, pcol in reduced:
            if work[pcol] != 0:
                f = work[pcol]
                work = [a - f * b for a, b in zip(work, prow)]
        pcol = next((j for j, v in enumerate(work) if v != 0), None)
        if pcol is None:
            continue
        pv = work[pcol]
        work = [v / pv for v in work]
        reduced.append((work, pcol))
        kept.append(idx)
    return kept


def _solve_square(matrix, rhs):
    """Unique solution of a nonsingular square system, or None if singular."""
    k = len(matrix)
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for c in range(k):
        pr = next((i for i in range(c, k) if aug[i][c] != 0), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for i in range(k):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [aug[i][-1] for i in range(k)]


def reduce_support(system: LinearSystem, x: Solution) -> Solution:
    """Walk along kernel directions of the positive-support column
    submatrix until at most r entries are positive (r = row count).
    Never adds new support indices."""
    rows = system.rows
    r = len(rows)
    values = list(x.values)
    while True:
        support = [i for i, v in enumerate(values) if v > 0]
        if len(support) <= r:
            break
        sub = [[row.coeffs[i] for i in support] for row in rows]
        d = _kernel_vector(sub, len(support))
        if d is None:
            raise AssertionError("no kernel vector despite support > rank bound")
        if all(di >= 0 for di in d):
            d = [-di for di in d]
        step = min(
            values[si] / -di for si, di in zip(support, d) if di < 0
        )
        for si, di in zip(support, d):
            values[si] += step * di
    return Solution(tuple(values))


def integerize(system: LinearSystem):
    """Scale each row to integer coefficients; returns the scaled system and
    the maximum coefficient size l."""
    out_rows = []
    l = 1
    for row in system.rows:
        denoms = [c.denominator for c in row.coeffs] + [row.rhs.denominator]
        scale = math.lcm(*denoms)
        coeffs = tuple(c * scale for c in row.coeffs)
        rhs = row.rhs * scale
        out_rows.append(Row(coeffs, row.rel, rhs))
        for c in list(coeffs) + [rhs]:
            l = max(l, size_int(abs(int(c))))
    return LinearSystem(tuple(out_rows), system.var_count), l


def shrink_bound(r: int, l: int) -> float:
    """Size cap on entries of a shrunk solution: 2*(r*l + r*log2(r) + 1)."""
    if r == 0:
        return 2.0
    return 2 * (r * l + r * math.log2(r) + 1)


def shrink_solution(system: LinearSystem, x: Solution) -> Solution:
    """Transform a non-negative solution into one with at most r positive
    entries, support nested in x's, and entries of certified size.

    Pipeline: zero out zero entries, pin every inequality to an equality at
    x's value, then alternate support reduction and dependent-row removal
    until a square nonsingular system remains, solved exactly.
    """
    n = system.var_count
    values = list(x.values)
    if not satisfies(system, values):
        raise ValueError("x is not a non-negative solution of the system")
    if not system.rows:
        return Solution((Fraction(0),) * n)

    # pin inequalities to equalities at x's value
    eq_rows = []
    for row in system.rows:
        if row.rel is Rel.EQ:
            eq_rows.append((list(row.coeffs), row.rhs))
        else:
            pinned = sum(c * v for c, v in zip(row.coeffs, values))
            eq_rows.append((list(row.coeffs), pinned))

    active = [i for i in range(n) if values[i] != 0]

    while True:
        v = len(active)
        e = len(eq_rows)
        if v == 0:
            break
        mat = [[coeffs[j] for j in active] for coeffs, _ in eq_rows]
        if e == v:
            if _solve_square(mat, [rhs for _, rhs in eq_rows]) is not None:
                break
            keep = _independent_row_indices(mat)
            eq_rows = [eq_rows[i] for i in keep]
        elif e < v:
            sub = LinearSystem(
                tuple(
                    Row(tuple(m_row), Rel.EQ, rhs)
                    for m_row, (_, rhs) in zip(mat, eq_rows)
                ),
                v,
            )
            reduced = reduce_support(sub, Solution(tuple(values[j] for j in active)))
            for j, val in zip(active, reduced.values):
                values[j] = val
            active = [j for j in active if values[j] != 0]
        else:
            keep = _independent_row_indices(mat)
            eq_rows = [eq_rows[i] for i in keep]

    if active:
        mat = [[coeffs[j] for j in active] for coeffs, _ in eq_rows]
        solved = _solve_square(mat, [rhs for _, rhs in eq_rows])
        for j, val in zip(active, solved):
            values[j] = val
    result = Solution(tuple(values))
    if not satisfies(system, result.values):
        raise AssertionError("shrunk solution fails the original system")
    return result
