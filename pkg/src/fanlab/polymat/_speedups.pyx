# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the odd-tuple engine.

Mirrors the pure implementations in ``core``/``grid`` on C integer arrays;
agreement between the two is asserted by the test suite.  Ground sets are
capped at 6 elements (the sweeps use at most 4).
"""

from libc.string cimport memset

DEF MAXN = 6
DEF MAXMASK = 64          # 1 << MAXN
DEF MAXPERMS = 720        # MAXN!
DEF MAXTUPLES = 4096

IMPLEMENTATION = "compiled"


cdef int _popcount(int m) nogil:
    cdef int c = 0
    while m:
        m &= m - 1
        c += 1
    return c


cdef int _region_violation(int n, const long* b, const long* a) nogil:
    """First violated subset mask, or -1 when inside the region."""
    cdef long sums[MAXMASK]
    cdef int m, low, full = (1 << n) - 1
    sums[0] = 0
    for m in range(1, full + 1):
        low = 0
        while not (m >> low) & 1:
            low += 1
        sums[m] = sums[m ^ (1 << low)] + a[low]
        if sums[m] > b[m]:
            return m
    return -1


cdef bint _run_odd_tuple(int n, const long* b, const int* perm, long* a_out) nogil:
    """The greedy recurrence; returns False when an entry goes even or <= 0."""
    cdef int full = (1 << n) - 1
    cdef int removed = 0, q, idx
    cdef long t_q, t_next, cap
    t_q = b[full]
    for q in range(1, n + 1):
        idx = perm[q - 1]
        removed |= 1 << idx
        cap = b[full ^ removed]
        if q == n:
            t_next = 0
        else:
            t_next = t_q if t_q < cap else cap
            if (t_q - t_next) % 2 == 0:
                t_next -= 1
        a_out[idx] = t_q - t_next
        if a_out[idx] <= 0 or a_out[idx] % 2 == 0:
            return False
        t_q = t_next
    return True


cdef int _oracle_scan(int n, const long* b, bint early_exit,
                      long* found, int max_found) nogil:
    """Count (and optionally collect) odd region tuples summing to b_full."""
    cdef long a[MAXN]
    cdef long total = b[(1 << n) - 1]
    cdef int count = 0
    if (total - n) % 2 != 0:
        return 0
    count = _oracle_rec(n, b, a, 0, total, early_exit, found, max_found, 0)
    return count


cdef int _oracle_rec(int n, const long* b, long* a, int pos, long remaining,
                     bint early_exit, long* found, int max_found,
                     int count) nogil:
    cdef long v
    cdef int i
    if pos == n - 1:
        if remaining >= 1 and remaining % 2 == 1:
            a[pos] = remaining
            if _region_violation(n, b, a) < 0:
                if found != NULL and count < max_found:
                    for i in range(n):
                        found[count * n + i] = a[i]
                count += 1
        return count
    v = 1
    while v <= remaining - (n - pos - 1):
        a[pos] = v
        count = _oracle_rec(n, b, a, pos + 1, remaining - v,
                            early_exit, found, max_found, count)
        if early_exit and count > 0:
            return count
        v += 2
    return count


def run_odd_tuple(int n, values, perm):
    """Algorithm output for a 1-based permutation; None when degenerate."""
    cdef long b[MAXMASK]
    cdef long a[MAXN]
    cdef int p[MAXN]
    cdef int i
    if n < 1 or n > MAXN:
        raise ValueError(f"n out of range: {n}")
    for i in range(1 << n):
        b[i] = values[i]
    for i in range(n):
        p[i] = perm[i] - 1
    if not _run_odd_tuple(n, b, p, a):
        return None
    return tuple(a[i] for i in range(n))


def region_violation(int n, values, a):
    """Mirror of in_nonzero_region: first violated mask or -1."""
    cdef long b[MAXMASK]
    cdef long aa[MAXN]
    cdef int i
    if n < 1 or n > MAXN:
        raise ValueError(f"n out of range: {n}")
    for i in range(1 << n):
        b[i] = values[i]
    for i in range(n):
        aa[i] = a[i]
    return _region_violation(n, b, aa)


def brute_force(int n, values):
    """All odd region tuples summing to b_full, lexicographically."""
    cdef long b[MAXMASK]
    cdef long found[MAXTUPLES * MAXN]
    cdef int i, j, count
    if n < 1 or n > MAXN:
        raise ValueError(f"n out of range: {n}")
    for i in range(1 << n):
        b[i] = values[i]
    count = _oracle_scan(n, b, False, found, MAXTUPLES)
    if count > MAXTUPLES:
        raise OverflowError("oracle list exceeds the collection buffer")
    return [tuple(found[i * n + j] for j in range(n)) for i in range(count)]


cdef struct SweepState:
    int n
    int full
    long bmax
    long values[MAXMASK]
    # enumeration tables
    int order[MAXMASK]
    int n_order
    int n_subs[MAXMASK]
    int subs[MAXMASK][MAXN]
    int n_pairs[MAXMASK]
    int pairs_a[MAXMASK][MAXN * MAXN]
    int pairs_b[MAXMASK][MAXN * MAXN]
    int pairs_c[MAXMASK][MAXN * MAXN]
    int sizes[MAXMASK]
    # canonical tables
    int n_perms
    int relabel[MAXPERMS][MAXMASK]
    int perms[MAXPERMS][MAXN]
    # counters
    long functions
    long oracle_empty
    long compat_runs
    long converse_failures
    long checked_literal
    int n_viol
    long viol_kind[32]
    long viol_values[32][MAXMASK]


cdef bint _is_canonical(SweepState* st) nogil:
    cdef int t, k, m
    cdef long v, w
    for t in range(st.n_perms):
        for k in range(st.n_order):
            m = st.order[k]
            v = st.values[m]
            w = st.values[st.relabel[t][m]]
            if v < w:
                break
            if v > w:
                return False
    return True


cdef void _verify_leaf(SweepState* st) nogil:
    cdef long a[MAXN]
    cdef int t, i
    cdef int compat = 0
    cdef bint ok
    cdef int oracle_count = -1
    cdef bint literal = (st.functions % 64 == 0)

    for t in range(st.n_perms):
        ok = _run_odd_tuple(st.n, st.values, st.perms[t], a)
        if not ok:
            # degenerate run: cannot happen on this grid; record as violation
            if st.n_viol < 32:
                st.viol_kind[st.n_viol] = 3
                for i in range(st.full + 1):
                    st.viol_values[st.n_viol][i] = st.values[i]
                st.n_viol += 1
            continue
        if _region_violation(st.n, st.values, a) < 0:
            compat += 1
            if literal:
                # literal check (a): the compatible output must be one of
                # the enumerated oracle tuples
                st.checked_literal += 1
                if not _oracle_contains(st, a):
                    if st.n_viol < 32:
                        st.viol_kind[st.n_viol] = 1
                        for i in range(st.full + 1):
                            st.viol_values[st.n_viol][i] = st.values[i]
                        st.n_viol += 1
    st.compat_runs += compat
    if compat == 0:
        oracle_count = _oracle_scan(st.n, st.values, True, NULL, 0)
        if oracle_count == 0:
            st.oracle_empty += 1
        else:
            st.converse_failures += 1
    else:
        # check (b) contrapositive: a compatible run exists, so the oracle
        # must be nonempty; confirm cheaply with an early-exit scan
        oracle_count = _oracle_scan(st.n, st.values, True, NULL, 0)
        if oracle_count == 0:
            if st.n_viol < 32:
                st.viol_kind[st.n_viol] = 2
                for i in range(st.full + 1):
                    st.viol_values[st.n_viol][i] = st.values[i]
                st.n_viol += 1


cdef bint _oracle_contains(SweepState* st, const long* a) nogil:
    cdef long found[MAXTUPLES * MAXN]
    cdef int count, i, j
    cdef bint match
    count = _oracle_scan(st.n, st.values, False, found, MAXTUPLES)
    if count > MAXTUPLES:
        count = MAXTUPLES
    for i in range(count):
        match = True
        for j in range(st.n):
            if found[i * st.n + j] != a[j]:
                match = False
                break
        if match:
            return True
    return False


cdef void _sweep_rec(SweepState* st, int idx) nogil:
    cdef int m, i, k
    cdef long lo, hi, v
    if idx == st.n_order:
        if (st.values[st.full] - st.n) % 2 != 0:
            return
        if not _is_canonical(st):
            return
        st.functions += 1
        _verify_leaf(st)
        return
    m = st.order[idx]
    lo = st.sizes[m]
    for i in range(st.n_subs[m]):
        v = st.values[st.subs[m][i]]
        if v > lo:
            lo = v
    if st.sizes[m] == 1 and m > 1:
        v = st.values[m >> 1]
        if v > lo:
            lo = v
    hi = st.bmax
    for i in range(st.n_pairs[m]):
        v = (st.values[st.pairs_a[m][i]] + st.values[st.pairs_b[m][i]]
             - st.values[st.pairs_c[m][i]])
        if v < hi:
            hi = v
    v = lo
    while v <= hi:
        st.values[m] = v
        _sweep_rec(st, idx + 1)
        v += 1
    st.values[m] = 0


def sweep_grid(int n, long bmax):
    """Enumerate the canonical grid and verify every function inline."""
    import itertools as _it

    from .grid import GridSummary

    cdef SweepState st
    cdef int m, i, j, k, t
    if n < 1 or n > MAXN:
        raise ValueError(f"n out of range: {n}")
    memset(&st, 0, sizeof(st))
    st.n = n
    st.full = (1 << n) - 1
    st.bmax = bmax

    order = sorted(range(1, 1 << n), key=lambda mm: (bin(mm).count("1"), mm))
    st.n_order = len(order)
    for k, m in enumerate(order):
        st.order[k] = m
        bits = [i for i in range(n) if m >> i & 1]
        st.sizes[m] = len(bits)
        st.n_subs[m] = len(bits)
        for j, i in enumerate(bits):
            st.subs[m][j] = m ^ (1 << i)
        combos = list(_it.combinations(bits, 2))
        st.n_pairs[m] = len(combos)
        for j, (i, k2) in enumerate(combos):
            st.pairs_a[m][j] = m ^ (1 << i)
            st.pairs_b[m][j] = m ^ (1 << k2)
            st.pairs_c[m][j] = m ^ (1 << i) ^ (1 << k2)

    perms = list(_it.permutations(range(n)))
    st.n_perms = len(perms)
    for t, perm in enumerate(perms):
        for i in range(n):
            st.perms[t][i] = perm[i]
        for m in range(1 << n):
            mm = 0
            for i in range(n):
                if m >> i & 1:
                    mm |= 1 << perm[i]
            st.relabel[t][m] = mm

    with nogil:
        _sweep_rec(&st, 0)

    va = []
    vb = []
    for i in range(st.n_viol):
        values = tuple(st.viol_values[i][m] for m in range(st.full + 1))
        if st.viol_kind[i] == 1:
            va.append((values, None, None))
        else:
            vb.append((values, int(st.viol_kind[i])))
    return GridSummary(n, bmax, st.functions, st.oracle_empty, st.compat_runs,
                       tuple(va), tuple(vb), st.converse_failures)
