# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of systema._kernels._pure; same functions, same results."""

from itertools import combinations, permutations

from cpython.mem cimport PyMem_Free, PyMem_Malloc

cdef extern from *:
    int __builtin_popcount(unsigned int) nogil

BACKEND = "ext"


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


cdef struct PermSet:
    int nperm
    int *perms      # nperm * k entries
    int *parity     # nperm entries


cdef class _Tables:
    cdef int size, zero, one, maxk
    cdef int *add
    cdef int *mul
    cdef int *neg
    cdef int *tangible
    cdef int *quasi
    cdef PermSet psets[9]

    def __cinit__(self, tables, int maxk):
        cdef int n = tables.size
        if maxk > 8:
            raise ValueError("kernel supports sizes up to 8")
        self.size = n
        self.zero = tables.zero
        self.one = tables.one
        self.maxk = maxk
        self.add = self._copy(tables.add, n * n)
        self.mul = self._copy(tables.mul, n * n)
        self.neg = self._copy(tables.neg, n)
        self.tangible = self._copy(tables.tangible, n)
        self.quasi = self._copy(tables.quasi, n)
        cdef int k
        for k in range(maxk + 1):
            perms = list(permutations(range(k)))
            flat = [x for p in perms for x in p]
            pars = [_parity(p) for p in perms]
            self.psets[k].nperm = len(perms)
            self.psets[k].perms = self._copy(flat, max(1, len(flat)))
            self.psets[k].parity = self._copy(pars, max(1, len(pars)))

    cdef int *_copy(self, values, int length):
        cdef int *buf = <int *> PyMem_Malloc(length * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        cdef int i
        for i in range(len(values)):
            buf[i] = values[i]
        return buf

    def __dealloc__(self):
        PyMem_Free(self.add)
        PyMem_Free(self.mul)
        PyMem_Free(self.neg)
        PyMem_Free(self.tangible)
        PyMem_Free(self.quasi)
        cdef int k
        for k in range(self.maxk + 1):
            PyMem_Free(self.psets[k].perms)
            PyMem_Free(self.psets[k].parity)


cdef int _cdet(_Tables t, int *mat, int ncols, int *rows, int *cols,
               int k):
    if k == 0:
        return t.one
    cdef int acc = -1, term, i, p
    cdef int nperm = t.psets[k].nperm
    cdef int *perms = t.psets[k].perms
    cdef int *parity = t.psets[k].parity
    cdef int size = t.size
    for p in range(nperm):
        term = mat[rows[0] * ncols + cols[perms[p * k]]]
        for i in range(1, k):
            term = t.mul[term * size + mat[rows[i] * ncols
                                           + cols[perms[p * k + i]]]]
        if parity[p]:
            term = t.neg[term]
        acc = term if acc < 0 else t.add[acc * size + term]
    return acc


def det_index(mat, n, tables):
    cdef int nn = n
    cdef _Tables t = _Tables(tables, nn)
    cdef int buf[64]
    cdef int idx[8]
    cdef int i
    for i in range(nn * nn):
        buf[i] = mat[i]
    for i in range(nn):
        idx[i] = i
    return _cdet(t, buf, nn, idx, idx, nn)


def sweep_laplace_identity(n, tables, start=0, limit=None):
    """See the pure twin for the contract."""
    if n > 5:
        raise ValueError("laplace sweep supports n <= 5")
    if tables.one < 0:
        raise ValueError("laplace sweep needs a unital instance")
    cdef int nn = n
    cdef _Tables t = _Tables(tables, nn)
    cdef int size = t.size
    cdef int cells = nn * nn

    # flatten the (I, J) term program: per group one row set I, terms are
    # (minor rows/cols, complement rows/cols, parity)
    groups = []
    all_idx = list(range(nn))
    for m in range(1, nn + 1):
        for I in combinations(range(nn), m):
            comp_rows = [r for r in all_idx if r not in I]
            terms = []
            for J in combinations(range(nn), m):
                comp_cols = [c for c in all_idx if c not in J]
                par = (sum(I) + m + sum(J) + m) & 1
                terms.append((list(I), list(J), comp_rows, comp_cols, par))
            groups.append(terms)

    cdef int ngroups = len(groups)
    cdef int nterms = sum(len(g) for g in groups)
    cdef int *gstart = <int *> PyMem_Malloc((ngroups + 1) * sizeof(int))
    cdef int *tm = <int *> PyMem_Malloc(nterms * sizeof(int))
    cdef int *tpar = <int *> PyMem_Malloc(nterms * sizeof(int))
    cdef int *trows = <int *> PyMem_Malloc(nterms * nn * sizeof(int))
    cdef int *tcols = <int *> PyMem_Malloc(nterms * nn * sizeof(int))
    cdef int *tcrows = <int *> PyMem_Malloc(nterms * nn * sizeof(int))
    cdef int *tccols = <int *> PyMem_Malloc(nterms * nn * sizeof(int))
    if (gstart == NULL or tm == NULL or tpar == NULL or trows == NULL
            or tcols == NULL or tcrows == NULL or tccols == NULL):
        raise MemoryError()
    cdef int gi = 0, ti = 0, i
    for terms in groups:
        gstart[gi] = ti
        for I, J, CR, CC, par in terms:
            tm[ti] = len(I)
            tpar[ti] = par
            for i in range(len(I)):
                trows[ti * nn + i] = I[i]
                tcols[ti * nn + i] = J[i]
            for i in range(len(CR)):
                tcrows[ti * nn + i] = CR[i]
                tccols[ti * nn + i] = CC[i]
            ti += 1
        gi += 1
    gstart[ngroups] = ti

    cdef int mat[25]
    cdef long total = 1
    for i in range(cells):
        total *= size
    cdef long stop = total
    cdef long begin = start
    if limit is not None and begin + limit < total:
        stop = begin + limit
    cdef long rem = begin
    cdef int pos
    for pos in range(cells - 1, -1, -1):
        mat[pos] = rem % size
        rem //= size

    cdef long checked = 0, failures = 0, count = begin
    cdef int det_full, acc, term, d1, d2, m_, g, j
    first_bad = None
    cdef int full_idx[5]
    for i in range(nn):
        full_idx[i] = i
    cdef bint ok
    try:
        while count < stop:
            det_full = _cdet(t, mat, nn, full_idx, full_idx, nn)
            ok = True
            for g in range(ngroups):
                acc = -1
                for j in range(gstart[g], gstart[g + 1]):
                    m_ = tm[j]
                    d1 = _cdet(t, mat, nn, trows + j * nn, tcols + j * nn, m_)
                    d2 = _cdet(t, mat, nn, tcrows + j * nn, tccols + j * nn,
                               nn - m_)
                    term = t.mul[d2 * size + d1]
                    if tpar[j]:
                        term = t.neg[term]
                    acc = term if acc < 0 else t.add[acc * size + term]
                if acc != det_full:
                    ok = False
                    break
            checked += 1
            if not ok:
                failures += 1
                if first_bad is None:
                    first_bad = tuple(mat[i] for i in range(cells))
            count += 1
            pos = cells - 1
            while pos >= 0:
                mat[pos] += 1
                if mat[pos] < size:
                    break
                mat[pos] = 0
                pos -= 1
    finally:
        PyMem_Free(gstart)
        PyMem_Free(tm)
        PyMem_Free(tpar)
        PyMem_Free(trows)
        PyMem_Free(tcols)
        PyMem_Free(tcrows)
        PyMem_Free(tccols)
    return checked, failures, first_bad


cdef int _crow_rank(_Tables t, int *mat, int rows, int cols,
                    int *tangibles, int nt):
    cdef int size = t.size
    cdef bint indep[64]
    cdef int coeffs[6]
    cdef int members[6]
    cdef int mask, r, k, i, c, acc, term, pos, best = 0
    cdef bint dependent, balanced, sub_ok
    indep[0] = True
    # masks in popcount order: process sizes 1..rows
    for k in range(1, rows + 1):
        for mask in range(1, 1 << rows):
            if __builtin_popcount(mask) != k:
                continue
            i = 0
            for r in range(rows):
                if mask >> r & 1:
                    members[i] = r
                    i += 1
            sub_ok = True
            for i in range(k):
                if not indep[mask & ~(1 << members[i])]:
                    sub_ok = False
                    break
            if not sub_ok:
                indep[mask] = False
                continue
            for i in range(k):
                coeffs[i] = 0
            dependent = False
            while True:
                balanced = True
                for c in range(cols):
                    acc = -1
                    for i in range(k):
                        term = t.mul[tangibles[coeffs[i]] * size
                                     + mat[members[i] * cols + c]]
                        acc = term if acc < 0 else t.add[acc * size + term]
                    if not t.quasi[acc]:
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
                if pos < 0:
                    break
            indep[mask] = not dependent
            if not dependent and k > best:
                best = k
    return best


def sweep_rank_gap(rows, cols, tables, find_first=True):
    """See the pure twin for the contract."""
    if rows > 6 or cols > 6:
        raise ValueError("rank-gap sweep supports shapes up to 6x6")
    cdef int nrows = rows
    cdef int ncols = cols
    cdef int kmax = min(nrows, ncols)
    cdef _Tables t = _Tables(tables, kmax)
    tang = tables.tangible_indices()
    cdef int nt = len(tang)
    if nt == 0:
        return 0, None, 0
    cdef int tangibles[32]
    cdef int i, j
    for i in range(nt):
        tangibles[i] = tang[i]

    subs = []
    for k in range(kmax, 0, -1):
        for R in combinations(range(nrows), k):
            for C in combinations(range(ncols), k):
                subs.append((k, list(R), list(C)))
    cdef int nsubs = len(subs)
    cdef int *sk = <int *> PyMem_Malloc(nsubs * sizeof(int))
    cdef int *srows = <int *> PyMem_Malloc(nsubs * kmax * sizeof(int))
    cdef int *scols = <int *> PyMem_Malloc(nsubs * kmax * sizeof(int))
    if sk == NULL or srows == NULL or scols == NULL:
        raise MemoryError()
    for i, (k, R, C) in enumerate(subs):
        sk[i] = k
        for j in range(k):
            srows[i * kmax + j] = R[j]
            scols[i * kmax + j] = C[j]

    cdef int cells = nrows * ncols
    cdef int digits[36]
    cdef int mat[36]
    for i in range(cells):
        digits[i] = 0
    cdef long total = 1
    for i in range(cells):
        total *= nt
    cdef long checked = 0, gaps = 0
    witness = None
    cdef int rr, sr, s, d, pos
    try:
        while checked < total:
            for i in range(cells):
                mat[i] = tangibles[digits[i]]
            rr = _crow_rank(t, mat, nrows, ncols, tangibles, nt)
            sr = 0
            for s in range(nsubs):
                d = _cdet(t, mat, ncols, srows + s * kmax, scols + s * kmax,
                          sk[s])
                if t.tangible[d]:
                    sr = sk[s]
                    break
            checked += 1
            if rr > sr:
                gaps += 1
                if witness is None:
                    witness = tuple(mat[i] for i in range(cells))
                if find_first:
                    return checked, witness, gaps
            pos = cells - 1
            while pos >= 0:
                digits[pos] += 1
                if digits[pos] < nt:
                    break
                digits[pos] = 0
                pos -= 1
            if pos < 0:
                break
    finally:
        PyMem_Free(sk)
        PyMem_Free(srows)
        PyMem_Free(scols)
    return checked, witness, gaps
