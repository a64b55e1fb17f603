"""Integer matrix invariants attached to edge shifts.

Matrices are tuples of tuples of Python ints, so all arithmetic is
exact.  The Smith normal form keeps its transforms, and every
normalization choice here is deterministic: same input, same output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvalidInput, PreconditionError
from .graphs import from_adjacency

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]], square: bool = False) -> Matrix:
    out = tuple(tuple(r) for r in rows)
    width = len(out[0]) if out else 0
    for r in out:
        if len(r) != width:
            raise InvalidInput("ragged matrix")
        for v in r:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInput(f"matrix entries must be integers, got {v!r}")
    if square and len(out) != width:
        raise InvalidInput("matrix must be square")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise InvalidInput("matrix shapes do not compose")
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def determinant(a: Matrix) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise InvalidInput("determinant needs a square matrix")
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class SmithDecomposition(NamedTuple):
    """U @ A @ V == D with U, V unimodular and D = diag(d1 | d2 | ...)."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


def smith_normal_form(a: Matrix) -> SmithDecomposition:
    """Smith normal form over the integers with recorded transforms.

    Pivot choice is the least |entry| in the working submatrix with
    row-major ties, so the decomposition is reproducible.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(r) for r in a]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, c: int) -> None:
        for j in range(cols):
            m[dst][j] += c * m[src][j]
        for j in range(rows):
            u[dst][j] += c * u[src][j]

    def add_col(src: int, dst: int, c: int) -> None:
        for r in m:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def pivot_at(t: int) -> tuple[int, int] | None:
        best: tuple[int, int] | None = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pos = pivot_at(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # Clear column t, restarting whenever a smaller remainder shows up.
            restart = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # Pivot must divide the rest of the submatrix; pull a bad row up.
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if m[t][t] < 0:
            for j in range(cols):
                m[t][j] = -m[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1

    return SmithDecomposition(
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in m),
        tuple(tuple(r) for r in v),
    )


@dataclass(frozen=True)
class SignedBFGroup:
    """Sign of det(I - A) together with the nontrivial divisors of I - A.

    Divisors equal to 1 are dropped (they add nothing to the group);
    zeros are kept, one per free summand.  Two groups are the same
    exactly when these tuples match.
    """

    sign: int
    divisors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise InvalidInput("sign must be -1, 0, or 1")


def bowen_franks(a: Sequence[Sequence[int]]) -> SignedBFGroup:
    """Signed Bowen-Franks data of an adjacency matrix."""
    mat = as_matrix(a, square=True)
    n = len(mat)
    b = mat_sub(identity(n), mat)
    det = determinant(b)
    sign = 0 if det == 0 else (1 if det > 0 else -1)
    diag = smith_normal_form(b).diagonal
    return SignedBFGroup(sign, tuple(d for d in diag if d != 1))


def is_nonnegative(a: Matrix) -> bool:
    return all(v >= 0 for r in a for v in r)


def _check_adjacency(a: Sequence[Sequence[int]]) -> Matrix:
    mat = as_matrix(a, square=True)
    if not is_nonnegative(mat):
        raise InvalidInput("adjacency entries must be nonnegative")
    return mat


def is_irreducible_matrix(a: Sequence[Sequence[int]]) -> bool:
    """Every index reaches every index through positive powers."""
    return from_adjacency(_check_adjacency(a)).is_strongly_connected()


def is_single_orbit(a: Sequence[Sequence[int]]) -> bool:
    """Permutation matrix whose permutation is one full cycle."""
    mat = _check_adjacency(a)
    n = len(mat)
    if n == 0:
        return False
    succ: list[int] = []
    for row in mat:
        if sum(row) != 1 or any(v not in (0, 1) for v in row):
            return False
        succ.append(row.index(1))
    if sorted(succ) != list(range(n)):
        return False
    seen = {0}
    j = succ[0]
    while j not in seen:
        seen.add(j)
        j = succ[j]
    return len(seen) == n


def franks_decide(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    """Flow equivalence of two irreducible edge shifts by invariant match.

    Only meaningful for irreducible matrices that are not single
    orbits; anything else is rejected rather than misclassified.
    """
    for name, mat in (("first", a), ("second", b)):
        if not is_irreducible_matrix(mat):
            raise PreconditionError(f"{name} matrix is not irreducible")
        if is_single_orbit(mat):
            raise PreconditionError(f"{name} matrix presents a single periodic orbit")
    return bowen_franks(a) == bowen_franks(b)


def verify_elementary_equivalence(
    a: Sequence[Sequence[int]],
    b: Sequence[Sequence[int]],
    r: Sequence[Sequence[int]],
    s: Sequence[Sequence[int]],
) -> bool:
    """Check A = R S and B = S R with nonnegative integer R, S."""
    ma = _check_adjacency(a)
    mb = _check_adjacency(b)
    mr = as_matrix(r)
    ms = as_matrix(s)
    if not (is_nonnegative(mr) and is_nonnegative(ms)):
        return False
    na, nb = len(ma), len(mb)
    if len(mr) != na or (mr and len(mr[0]) != nb):
        raise InvalidInput("R must be shaped len(A) x len(B)")
    if len(ms) != nb or (ms and len(ms[0]) != na):
        raise InvalidInput("S must be shaped len(B) x len(A)")
    return mat_mul(mr, ms) == ma and mat_mul(ms, mr) == mb


def expansion_move(a: Sequence[Sequence[int]], k: int, l: int) -> Matrix:
    """Insert a fresh state splitting one k -> l transition in two.

    The new state sits at index 0; old index i moves to i + 1.  The
    entry (k, l) must be positive, it loses one unit to the new path.
    Both det(I - A) and the Bowen-Franks data are unchanged.
    """
    mat = _check_adjacency(a)
    n = len(mat)
    if not (0 <= k < n and 0 <= l < n):
        raise InvalidInput(f"state indices ({k}, {l}) out of range for size {n}")
    if mat[k][l] < 1:
        raise PreconditionError(f"entry ({k}, {l}) must be positive to expand")
    out = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            out[i + 1][j + 1] = mat[i][j]
    out[0][l + 1] = 1
    out[k + 1][0] = 1
    out[k + 1][l + 1] -= 1
    return tuple(tuple(row) for row in out)
