"""Matrices over a carrier descriptor.

The determinant is the signed permutation expansion: the negation map is
applied once to each odd permutation's term (a genuine sign over systems
with a second-kind negation, a no-op over first-kind ones, and the code
never special-cases that).  No elimination: these carriers have no
subtraction, so everything is expansion and search, with hard size
budgets.

Also here: the row-set expansion identity, adjoint-based solving
certificates, tangible solutions, dependence and the three ranks, the
search for matrices whose row rank exceeds their submatrix rank, and the
characteristic-polynomial ghost check over supertropical instances.
"""

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .budgets import from_env
from .errors import (BudgetExceeded, FormatError, NotUnital, ShapeError,
                     SystemMismatch)


def _parity(perm):
    par = 0
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, cycle = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            cycle += 1
        par ^= (cycle - 1) & 1
    return par


@dataclass(frozen=True)
class Matrix:
    system: object
    rows: int
    cols: int
    entries: tuple   # row-major payloads

    @classmethod
    def from_rows(cls, system, rows):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeError("ragged or empty row list")
        return cls(system, len(rows), len(rows[0]),
                   tuple(x for r in rows for x in r))

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def _check(self, other, same_shape):
        if self.system is not other.system:
            raise SystemMismatch("operands use different descriptors")
        if same_shape and (
                self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"{self.rows}x{self.cols} vs "
                             f"{other.rows}x{other.cols}")

    def __add__(self, other):
        self._check(other, same_shape=True)
        add = self.system.add
        return Matrix(self.system, self.rows, self.cols,
                      tuple(add(a, b)
                            for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other):
        self._check(other, same_shape=False)
        if self.cols != other.rows:
            raise ShapeError(f"{self.rows}x{self.cols} @ "
                             f"{other.rows}x{other.cols}")
        s = self.system
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    term = s.mul(self.entry(i, k), other.entry(k, j))
                    acc = term if acc is None else s.add(acc, term)
                out.append(acc if acc is not None else s.zero)
        return Matrix(s, self.rows, other.cols, tuple(out))

    def negate(self):
        return Matrix(self.system, self.rows, self.cols,
                      tuple(self.system.negate(x) for x in self.entries))

    def scale(self, scalar):
        return Matrix(self.system, self.rows, self.cols,
                      tuple(self.system.mul(scalar, x)
                            for x in self.entries))

    def transpose(self):
        return Matrix(self.system, self.cols, self.rows,
                      tuple(self.entry(i, j) for j in range(self.cols)
                            for i in range(self.rows)))

    def is_tangible(self):
        """All entries tangible or zero (a tangible matrix)."""
        s = self.system
        return all(s.is_tangible(x) or x == s.zero for x in self.entries)

    def format(self):
        fmt = self.system.format_element
        lines = [f"{self.rows} {self.cols} {self.system.name}"]
        for i in range(self.rows):
            lines.append(" ".join(fmt(x) for x in self.row(i)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Vector:
    system: object
    entries: tuple

    @classmethod
    def of(cls, system, entries):
        return cls(system, tuple(entries))

    def __len__(self):
        return len(self.entries)

    def as_column(self):
        return Matrix(self.system, len(self.entries), 1, self.entries)

    def is_tangible(self):
        s = self.system
        return all(s.is_tangible(x) or x == s.zero for x in self.entries)

    def format(self):
        return self.as_column().format()


def identity_matrix(system, n):
    """Unit on the diagonal, zero off it."""
    if system.one is None:
        raise NotUnital(f"{system.name} has no unit")
    return Matrix(system, n, n,
                  tuple(system.one if i == j else system.zero
                        for i in range(n) for j in range(n)))


def mat_vec(A, v):
    if len(v.entries) != A.cols:
        raise ShapeError("vector length does not match columns")
    result = A @ v.as_column()
    return Vector(A.system, result.entries)


def _det_indices(A, row_idx, col_idx):
    s = A.system
    k = len(row_idx)
    if k == 0:
        if s.one is None:
            raise NotUnital("empty determinant needs a unit")
        return s.one
    acc = None
    for perm in permutations(range(k)):
        term = A.entry(row_idx[0], col_idx[perm[0]])
        for i in range(1, k):
            term = s.mul(term, A.entry(row_idx[i], col_idx[perm[i]]))
        if _parity(perm):
            term = s.negate(term)
        acc = term if acc is None else s.add(acc, term)
    return acc


def det_minus(A, bound=None):
    """Signed permutation-expansion determinant."""
    if A.rows != A.cols:
        raise ShapeError("determinant needs a square matrix")
    bound = bound if bound is not None else from_env().det_size
    if A.rows > bound:
        raise BudgetExceeded(f"determinant size {A.rows} exceeds {bound}")
    idx = list(range(A.rows))
    return _det_indices(A, idx, idx)


def is_nonsingular(A, bound=None):
    """Tangible determinant."""
    return A.system.is_tangible(det_minus(A, bound))


def adj_minus(A, bound=None):
    """Adjoint: entry (i, j) is the determinant of the (j, i) minor,
    negated when i + j is odd (cofactor sign via the negation map)."""
    if A.rows != A.cols:
        raise ShapeError("adjoint needs a square matrix")
    n = A.rows
    s = A.system
    out = []
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            d = _det_indices(A, rows, cols)
            if (i + j) & 1:
                d = s.negate(d)
            out.append(d)
    return Matrix(s, n, n, tuple(out))


def laplace_det(A, row_set, bound=None):
    """Expansion along a set of rows; equals det_minus exactly.

    ``row_set`` holds 1-based row indices.  Each term multiplies the
    complementary minor's determinant by the selected minor's, negated
    once per odd total of the (1-based) row and column indices.
    """
    if A.rows != A.cols:
        raise ShapeError("expansion needs a square matrix")
    n = A.rows
    rows = sorted(set(row_set))
    if not rows or rows[0] < 1 or rows[-1] > n:
        raise ShapeError(f"row set must be nonempty within 1..{n}")
    bound = bound if bound is not None else from_env().det_size
    if n > bound:
        raise BudgetExceeded(f"size {n} exceeds {bound}")
    s = A.system
    I = [r - 1 for r in rows]
    comp_rows = [r for r in range(n) if r not in I]
    m = len(I)
    par_rows = sum(rows)
    acc = None
    for J in combinations(range(n), m):
        comp_cols = [c for c in range(n) if c not in J]
        minor = _det_indices(A, I, list(J))
        complement = _det_indices(A, comp_rows, comp_cols)
        term = s.mul(complement, minor)
        if (par_rows + sum(J) + m) & 1:
            term = s.negate(term)
        acc = term if acc is None else s.add(acc, term)
    return acc


@dataclass(frozen=True)
class CramerResult:
    y: Vector
    holds: bool
    scaled: bool


def cramer_certify(A, v, scale="auto", bound=None):
    """Adjoint-based solving certificate.

    With an invertible tangible determinant the scaled candidate
    y = (1/|A|) adj(A) v must satisfy v <= A y entrywise; otherwise the
    unscaled certificate |A| v <= A (adj(A) v) is checked.  A False is a
    bug signal, not an expected outcome.
    """
    if A.rows != A.cols:
        raise ShapeError("needs a square matrix")
    if len(v.entries) != A.rows:
        raise ShapeError("vector length does not match")
    s = A.system
    det = det_minus(A, bound)
    adj_v = mat_vec(adj_minus(A, bound), v)
    inv = s.invert_tangible(det) if s.is_tangible(det) else None
    if scale == "always" and inv is None:
        raise BudgetExceeded("scaling requested with non-invertible "
                             "determinant")
    use_scale = inv is not None and scale != "never"
    if use_scale:
        y = Vector(s, tuple(s.mul(inv, x) for x in adj_v.entries))
        lhs = v
    else:
        y = adj_v
        lhs = Vector(s, tuple(s.mul(det, x) for x in v.entries))
    rhs = mat_vec(A, y)
    holds = all(s.preceq(a, b) for a, b in zip(lhs.entries, rhs.entries))
    return CramerResult(y, holds, use_scale)


def tangible_solve(A, v, budget=None):
    """First tangible x (enumeration order) with A x + v balanced.

    Entrywise: every coordinate of A x + v must be a quasi-zero.  The
    search runs over strictly tangible vectors; None when the space is
    exhausted.
    """
    if len(v.entries) != A.rows:
        raise ShapeError("vector length does not match")
    s = A.system
    tangibles, exhaustive = s.probe_tangibles()
    if not exhaustive:
        raise ValueError("tangible solve needs an enumerable tangible set")
    budget = budget if budget is not None else from_env().solve_candidates
    count = 0
    for combo in product(tangibles, repeat=A.cols):
        count += 1
        if count > budget:
            raise BudgetExceeded(f"solve candidates exceed {budget}")
        x = Vector(s, combo)
        image = mat_vec(A, x)
        if all(s.is_quasi_zero(s.add(a, b))
               for a, b in zip(image.entries, v.entries)):
            return x
    return None


def t_dependent(vectors, budget=None):
    """Tangible dependence with witness.

    True when some nonempty subset admits tangible coefficients whose
    combination is entrywise quasi-zero; the witness is (indices,
    coefficients).  Scans subsets by (size, lex) and coefficient tuples
    in enumeration order; raises when the budget runs out before the
    scan completes.
    """
    if not vectors:
        return False, None
    s = vectors[0].system
    n = len(vectors[0].entries)
    if any(v.system is not s or len(v.entries) != n for v in vectors):
        raise SystemMismatch("vectors must share a descriptor and length")
    tangibles, exhaustive = s.probe_tangibles()
    if not exhaustive:
        raise ValueError("dependence needs an enumerable tangible set")
    budget = budget if budget is not None else from_env().search_nodes
    count = 0
    for size in range(1, len(vectors) + 1):
        for subset in combinations(range(len(vectors)), size):
            for coeffs in product(tangibles, repeat=size):
                count += 1
                if count > budget:
                    raise BudgetExceeded(f"dependence search exceeds "
                                         f"{budget} combinations")
                balanced = True
                for c in range(n):
                    acc = None
                    for alpha, i in zip(coeffs, subset):
                        term = s.mul(alpha, vectors[i].entries[c])
                        acc = term if acc is None else s.add(acc, term)
                    if not s.is_quasi_zero(acc):
                        balanced = False
                        break
                if balanced:
                    return True, (subset, coeffs)
    return False, None


def _independent_masks(vectors, budget):
    """Independence flags for every subset, by popcount-ordered DP."""
    s = vectors[0].system
    n = len(vectors[0].entries)
    tangibles, _ = s.probe_tangibles()
    k = len(vectors)
    indep = {0: True}
    count = 0
    for mask in sorted(range(1, 1 << k), key=lambda m: bin(m).count("1")):
        members = [i for i in range(k) if mask >> i & 1]
        if any(not indep[mask & ~(1 << i)] for i in members):
            indep[mask] = False
            continue
        dependent = False
        for coeffs in product(tangibles, repeat=len(members)):
            count += 1
            if count > budget:
                raise BudgetExceeded("rank search exceeds budget")
            balanced = True
            for c in range(n):
                acc = None
                for alpha, i in zip(coeffs, members):
                    term = s.mul(alpha, vectors[i].entries[c])
                    acc = term if acc is None else s.add(acc, term)
                if not s.is_quasi_zero(acc):
                    balanced = False
                    break
            if balanced:
                dependent = True
                break
        indep[mask] = not dependent
    return indep


@dataclass(frozen=True)
class RankReport:
    row_rank: int | None
    column_rank: int | None
    submatrix_rank: int
    row_witness: tuple | None
    column_witness: tuple | None
    submatrix_witness: tuple | None   # (row indices, col indices)


def _max_independent(vectors, budget):
    indep = _independent_masks(vectors, budget)
    best, witness = 0, None
    for mask, ok in indep.items():
        size = bin(mask).count("1")
        if ok and size > best:
            best = size
            witness = tuple(i for i in range(len(vectors)) if mask >> i & 1)
    return best, witness


def rank_report(A, budget=None):
    """Row, column and submatrix ranks with witnesses.

    Row and column ranks need an enumerable tangible set; over infinite
    carriers they come back None ("not computed") while the submatrix
    rank is always available from determinants.
    """
    budget = budget if budget is not None else from_env().search_nodes
    s = A.system
    sub_rank, sub_witness = 0, None
    for k in range(min(A.rows, A.cols), 0, -1):
        for R in combinations(range(A.rows), k):
            for C in combinations(range(A.cols), k):
                if s.is_tangible(_det_indices(A, list(R), list(C))):
                    sub_rank, sub_witness = k, (R, C)
                    break
            if sub_witness:
                break
        if sub_witness:
            break
    if s.tangibles is None:
        return RankReport(None, None, sub_rank, None, None, sub_witness)
    rows = [Vector(s, A.row(i)) for i in range(A.rows)]
    cols = [Vector(s, A.col(j)) for j in range(A.cols)]
    row_rank, row_wit = _max_independent(rows, budget)
    col_rank, col_wit = _max_independent(cols, budget)
    return RankReport(row_rank, col_rank, sub_rank, row_wit, col_wit,
                      sub_witness)


def rank_gap_search(system, rows, cols, budget=None, use_kernel=True):
    """First tangible matrix whose row rank exceeds its submatrix rank.

    Scans every matrix with strictly tangible entries in enumeration
    order; None when the space is exhausted without a gap.  The compiled
    sweep kernel is used when available (identical enumeration order);
    the generic path remains for cross-checking.
    """
    if system.tangibles is None:
        raise ValueError("needs an enumerable tangible set")
    if use_kernel:
        from ._kernels import op_tables, sweep_rank_gap
        tables = op_tables(system)
        checked, witness, gaps = sweep_rank_gap(rows, cols, tables)
        if witness is None:
            return None
        return Matrix(system, rows, cols,
                      tuple(tables.elements[i] for i in witness))
    budget = budget if budget is not None else from_env().search_nodes
    for combo in product(system.tangibles, repeat=rows * cols):
        A = Matrix(system, rows, cols, combo)
        report = rank_report(A, budget)
        if report.row_rank > report.submatrix_rank:
            return A
    return None


def cayley_hamilton_check(A, bound=4):
    """Evaluate the characteristic polynomial on A; every entry must be
    ghost or zero.

    Coefficients are sums of principal-minor determinants; the terms
    alternate through the negation map (a no-op for these first-kind
    instances, applied anyway).  Supertropical instances only.
    """
    s = A.system
    if not getattr(s, "supertropical", False):
        raise ValueError("characteristic-polynomial ghost check is defined "
                         "over supertropical instances")
    if A.rows != A.cols:
        raise ShapeError("needs a square matrix")
    n = A.rows
    if n > bound:
        raise BudgetExceeded(f"size {n} exceeds {bound}")
    if not A.is_tangible():
        raise ValueError("needs a tangible matrix")

    powers = [identity_matrix(s, n)]
    for _ in range(n):
        powers.append(powers[-1] @ A)

    total = None
    for k in range(n + 1):
        if k == 0:
            coeff = s.one
        else:
            coeff = None
            for P in combinations(range(n), k):
                d = _det_indices(A, list(P), list(P))
                coeff = d if coeff is None else s.add(coeff, d)
        term = powers[n - k].scale(coeff)
        if k & 1:
            term = term.negate()
        total = term if total is None else total + term
    ghostly = all(s.is_quasi_zero(x) for x in total.entries)
    return ghostly, total


# ---------------------------------------------------------------------------
# text format: first line "rows cols instance-name", then row-major tokens


def parse_matrix(text, resolve):
    lines = [ln for ln in text.splitlines()]
    header = None
    body_start = 0
    for i, ln in enumerate(lines):
        if ln.strip():
            header = ln.split()
            body_start = i + 1
            break
    if header is None or len(header) != 3:
        raise FormatError("expected header 'rows cols instance-name'",
                          line=1)
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError("rows and cols must be integers", line=body_start)
    try:
        system = resolve(header[2])
    except ValueError as exc:
        raise FormatError(str(exc), line=body_start)
    tokens = []
    for i, ln in enumerate(lines[body_start:], start=body_start + 1):
        for col, tok in enumerate(ln.split(), start=1):
            tokens.append((tok, i, col))
    if len(tokens) != rows * cols:
        raise FormatError(f"expected {rows * cols} entries, found "
                          f"{len(tokens)}", line=body_start + 1)
    entries = []
    for tok, line, col in tokens:
        try:
            entries.append(system.parse_element(tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(str(exc), line=line, column=col)
    return Matrix(system, rows, cols, tuple(entries))


def parse_vector(text, resolve):
    """A vector file is a matrix file with one row or one column."""
    M = parse_matrix(text, resolve)
    if M.cols == 1:
        return Vector(M.system, M.entries)
    if M.rows == 1:
        return Vector(M.system, M.entries)
    raise FormatError("vector file must have one row or one column")
