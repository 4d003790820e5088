"""Pure-Python reference implementations of the sweep kernels.

Semantics match systema._kernels._ext exactly; the compiled module is
only a faster twin.  Both operate on the flat int tables produced by
tables.op_tables.
"""

from itertools import combinations, permutations

BACKEND = "pure"


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


def _perm_table(n):
    return [[(p, _parity(p)) for p in permutations(range(k))]
            for k in range(n + 1)]


def _det(mat, ncols, rows, cols, perms, size, add, mul, neg, one):
    k = len(rows)
    if k == 0:
        return one
    acc = -1
    for perm, par in perms[k]:
        term = mat[rows[0] * ncols + cols[perm[0]]]
        for i in range(1, k):
            term = mul[term * size + mat[rows[i] * ncols + cols[perm[i]]]]
        if par:
            term = neg[term]
        acc = term if acc < 0 else add[acc * size + term]
    return acc


def det_index(mat, n, tables):
    """Permutation-expansion determinant of a flat n*n index matrix."""
    perms = _perm_table(n)
    idx = list(range(n))
    return _det(mat, n, idx, idx, perms, tables.size, tables.add,
                tables.mul, tables.neg, tables.one)


def sweep_laplace_identity(n, tables, start=0, limit=None):
    """Compare the row-set expansion with the full determinant, for every
    n-by-n matrix over the finite carrier.

    Matrices are visited in odometer order over entry indices (row major,
    last entry fastest), beginning at matrix number `start`, at most
    `limit` of them.  Returns (checked, failures, first_bad) where
    first_bad is the entry-index tuple of the first failing matrix.
    """
    size, add, mul, neg = tables.size, tables.add, tables.mul, tables.neg
    one = tables.one
    if one < 0:
        raise ValueError("laplace sweep needs a unital instance")
    perms = _perm_table(n)
    cells = n * n
    total = size ** cells
    stop = total if limit is None else min(total, start + limit)

    row_sets = []
    all_cols = list(range(n))
    for m in range(1, n + 1):
        for I in combinations(range(n), m):
            comp_rows = [r for r in all_cols if r not in I]
            js = []
            for J in combinations(range(n), m):
                comp_cols = [c for c in all_cols if c not in J]
                par = (sum(I) + m + sum(J) + m) & 1
                js.append((J, comp_cols, par))
            row_sets.append((list(I), comp_rows, js))

    mat = [0] * cells
    rem = start
    for pos in range(cells - 1, -1, -1):
        mat[pos] = rem % size
        rem //= size
    if rem:
        return 0, 0, None

    checked = 0
    failures = 0
    first_bad = None
    count = start
    while count < stop:
        det_full = _det(mat, n, all_cols, all_cols, perms, size,
                        add, mul, neg, one)
        ok = True
        for I, comp_rows, js in row_sets:
            acc = -1
            for J, comp_cols, par in js:
                d1 = _det(mat, n, I, list(J), perms, size, add, mul, neg,
                          one)
                d2 = _det(mat, n, comp_rows, comp_cols, perms, size,
                          add, mul, neg, one)
                term = mul[d2 * size + d1]
                if par:
                    term = neg[term]
                acc = term if acc < 0 else add[acc * size + term]
            if acc != det_full:
                ok = False
                break
        checked += 1
        if not ok:
            failures += 1
            if first_bad is None:
                first_bad = tuple(mat)
        count += 1
        for pos in range(cells - 1, -1, -1):
            mat[pos] += 1
            if mat[pos] < size:
                break
            mat[pos] = 0
    return checked, failures, first_bad


def _row_rank(mat, rows, cols, tangibles, size, add, mul, quasi):
    """Largest independent row subset, by dynamic programming over masks.

    A set is dependent when some nonempty subset admits tangible
    coefficients driving every coordinate into the quasi-zeros; processing
    masks by population count means only full-support tuples need testing.
    """
    nt = len(tangibles)
    indep = [False] * (1 << rows)
    indep[0] = True
    best = 0
    masks = sorted(range(1, 1 << rows), key=lambda m: bin(m).count("1"))
    for mask in masks:
        members = [r for r in range(rows) if mask >> r & 1]
        k = len(members)
        if any(not indep[mask & ~(1 << r)] for r in members):
            continue
        coeffs = [0] * k
        dependent = False
        while True:
            balanced = True
            for c in range(cols):
                acc = -1
                for i, r in enumerate(members):
                    term = mul[tangibles[coeffs[i]] * size
                               + mat[r * cols + c]]
                    acc = term if acc < 0 else add[acc * size + term]
                if not quasi[acc]:
                    balanced = False
                    break
            if balanced:
                dependent = True
                break
            pos = k - 1
            while pos >= 0:
                coeffs[pos] += 1
                if coeffs[pos] < nt:
                    break
                coeffs[pos] = 0
                pos -= 1
            else:
                break
        if not dependent:
            indep[mask] = True
            if k > best:
                best = k
    return best


def _submatrix_rank(mat, rows, cols, tables, perms):
    size, add, mul, neg = tables.size, tables.add, tables.mul, tables.neg
    for k in range(min(rows, cols), 0, -1):
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                d = _det(mat, cols, list(R), list(C), perms, size,
                         add, mul, neg, tables.one)
                if tables.tangible[d]:
                    return k
    return 0


def sweep_rank_gap(rows, cols, tables, find_first=True):
    """Scan all matrices with tangible entries for row rank exceeding
    submatrix rank.

    Returns (checked, witness, gaps): witness is the entry-index tuple of
    the first gap found (enumeration order over the tangible alphabet),
    or None after an exhausted scan.
    """
    size, add, mul = tables.size, tables.add, tables.mul
    quasi = tables.quasi
    tangibles = tables.tangible_indices()
    perms = _perm_table(min(rows, cols))
    cells = rows * cols
    nt = len(tangibles)
    digits = [0] * cells
    checked = 0
    gaps = 0
    witness = None
    total = nt ** cells
    while checked < total:
        mat = [tangibles[d] for d in digits]
        rr = _row_rank(mat, rows, cols, tangibles, size, add, mul, quasi)
        sr = _submatrix_rank(mat, rows, cols, tables, perms)
        checked += 1
        if rr > sr:
            gaps += 1
            if witness is None:
                witness = tuple(mat)
            if find_first:
                return checked, witness, gaps
        pos = cells - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] < nt:
                break
            digits[pos] = 0
            pos -= 1
        else:
            break
    return checked, witness, gaps
