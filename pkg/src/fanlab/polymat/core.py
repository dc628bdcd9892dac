"""Generalized-permutohedron engine for odd exponent tuples.

A ``DimFunction`` records nonnegative integers b_A for every nonempty
subset A of [N] (stored densely, indexed by bitmask).  The nonzero
mixed-volume region is the set of exponent tuples with
``sum_{j in A} a_j <= b_A`` for every A; the engine asks when that region
meets the all-odd lattice points of the top hyperplane
``sum a_j = b_[N]``, and produces audit traces for the greedy odd-tuple
algorithm, its running-total compatibility ledger, the comparison with
classical extreme points, and closed forms for N = 2, 3.

Subsets in the public API are iterables of 1-based elements; bitmasks are
used internally and in witnesses (bit j-1 set means element j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class PolymatError(Exception):
    pass


class ParityError(PolymatError):
    """b_[N] and N have different parity, so no all-odd tuple can sum to b_[N]."""


class SizeFloorError(PolymatError):
    """Some b_A < |A|; odd tuples cannot exist (each entry is at least 1)."""


class InvalidPointError(PolymatError):
    pass


def mask_of(subset):
    m = 0
    for j in subset:
        if j < 1:
            raise ValueError("elements are 1-based")
        m |= 1 << (j - 1)
    return m


def subset_of(mask):
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


@dataclass(frozen=True)
class DimFunction:
    """Values b_A for nonempty A subset of [N], indexed densely by bitmask."""

    n: int
    values: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must be nonempty")
        if len(self.values) != 1 << self.n:
            raise ValueError("values must have length 2**N")
        if self.values[0] != 0:
            raise ValueError("the empty set has b = 0")
        if any((not isinstance(v, int)) or v < 0 for v in self.values):
            raise ValueError("values must be nonnegative integers")

    @staticmethod
    def from_subsets(n, mapping):
        """Build from a {subset-iterable: value} mapping covering all of them."""
        values = [0] * (1 << n)
        seen = set()
        for subset, v in mapping.items():
            m = mask_of(subset)
            values[m] = int(v)
            seen.add(m)
        missing = [m for m in range(1, 1 << n) if m not in seen]
        if missing:
            raise ValueError(f"missing subsets: {[subset_of(m) for m in missing]}")
        return DimFunction(n, tuple(values))

    def b(self, subset):
        return self.values[mask_of(subset)]

    def b_mask(self, mask):
        return self.values[mask]

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    @property
    def total(self):
        return self.values[self.full_mask]

    def restricted(self, keep):
        """Restriction to the sub-ground-set ``keep`` (1-based), relabelled."""
        keep = sorted(keep)
        k = len(keep)
        values = [0] * (1 << k)
        for m in range(1, 1 << k):
            big = 0
            for i in range(k):
                if m >> i & 1:
                    big |= 1 << (keep[i] - 1)
            values[m] = self.values[big]
        return DimFunction(k, tuple(values))

    def to_json(self):
        return {"N": self.n,
                "b": {"".join(str(j) for j in subset_of(m)): self.values[m]
                      for m in range(1, 1 << self.n)}}


@dataclass(frozen=True)
class SubmodularReport:
    submodular_ok: bool
    monotone_ok: bool
    size_floor_ok: bool
    submodular_witness: object = None
    monotone_witness: object = None
    size_floor_witness: object = None

    @property
    def passed(self):
        return self.submodular_ok and self.monotone_ok and self.size_floor_ok


def check_submodular(b):
    """Verify submodularity, monotonicity and b_A >= |A|, with witnesses.

    Submodularity is checked in the local form
    b_{X+i} + b_{X+j} >= b_{X+i+j} + b_X, which is equivalent to the
    inequality for all pairs S, T; the witness is reported as (S, T) with
    S = X+i, T = X+j.
    """
    n = b.n
    sub_w = None
    for x in range(1 << n):
        outside = [i for i in range(n) if not x >> i & 1]
        for i, j in itertools.combinations(outside, 2):
            lhs = b.values[x | 1 << i] + b.values[x | 1 << j]
            rhs = b.values[x | 1 << i | 1 << j] + b.values[x]
            if lhs < rhs:
                sub_w = (subset_of(x | 1 << i), subset_of(x | 1 << j))
                break
        if sub_w:
            break
    mono_w = None
    for s in range(1, 1 << n):
        for i in range(n):
            if s >> i & 1:
                r = s ^ 1 << i
                if b.values[r] > b.values[s]:
                    mono_w = (subset_of(r), subset_of(s))
                    break
        if mono_w:
            break
    floor_w = None
    for s in range(1, 1 << n):
        if b.values[s] < bin(s).count("1"):
            floor_w = subset_of(s)
            break
    return SubmodularReport(sub_w is None, mono_w is None, floor_w is None,
                            sub_w, mono_w, floor_w)


def _subset_sums(n, a):
    sums = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        sums[m] = sums[m ^ (1 << low)] + a[low]
    return sums


def in_nonzero_region(b, a):
    """Whether sum_{j in A} a_j <= b_A for every nonempty A.

    Returns ``(bool, witness)`` where the witness is the first violated
    subset in bitmask order, as a tuple of 1-based elements.
    """
    if len(a) != b.n:
        raise ValueError(f"tuple length {len(a)} != N = {b.n}")
    sums = _subset_sums(b.n, a)
    for m in range(1, 1 << b.n):
        if sums[m] > b.values[m]:
            return (False, subset_of(m))
    return (True, None)


def clamp(b, cap):
    """Entrywise minimum with a constant; preserves submodularity."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    return DimFunction(b.n, tuple(min(cap, v) if m else 0
                                  for m, v in enumerate(b.values)))


def lift_point(b, point, k):
    """Append a_k = b_[N] - b_[N]\\k to a point that is feasible on [N]\\k.

    ``point`` lists the coordinates of the elements of [N] without k, in
    increasing order.  The output satisfies the region inequalities for the
    full ground set whenever the input did for the smaller one.
    """
    n = b.n
    if not 1 <= k <= n:
        raise ValueError(f"k = {k} out of range")
    if len(point) != n - 1:
        raise ValueError("point must have N - 1 coordinates")
    others = [j for j in range(1, n + 1) if j != k]
    sub = b.restricted(others)
    ok, witness = in_nonzero_region(sub, tuple(point))
    if not ok:
        raise InvalidPointError(
            f"input violates the region inequality for {tuple(others[j - 1] for j in witness)}")
    a_k = b.total - b.values[b.full_mask ^ (1 << (k - 1))]
    out = list(point)
    out.insert(k - 1, a_k)
    return tuple(out)


def greedy_extreme_point(b, perm):
    """Classical extreme point v_{pi(q)} = b_{[N]\\pi([q-1])} - b_{[N]\\pi([q])}."""
    n = b.n
    _check_perm(n, perm)
    out = [0] * n
    removed = 0
    for q in range(n):
        before = b.full_mask ^ removed
        removed |= 1 << (perm[q] - 1)
        after = b.full_mask ^ removed
        out[perm[q] - 1] = b.values[before] - b.values[after]
    return tuple(out)


def _check_perm(n, perm):
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{n}")


@dataclass(frozen=True)
class AlgorithmTrace:
    """Full state of one odd-tuple run: totals, blocks, parity adjustments.

    ``totals`` is (T_1, ..., T_{N+1}); ``transitions`` lists the 1-based
    positions q with T_q > b_{[N]\\pi([q])} (the block starts; position N
    always qualifies).  ``mus`` and ``alphas`` are re-derived from the
    totals and cross-checked against the three-case parity table.
    """

    perm: tuple
    totals: tuple
    transitions: tuple
    mus: tuple
    alphas: tuple


def _require_odd_feasible(b):
    report = check_submodular(b)
    if not report.size_floor_ok:
        raise SizeFloorError(
            f"b_A < |A| for A = {report.size_floor_witness}; no odd tuple can exist")
    if (b.total - b.n) % 2 != 0:
        raise ParityError(f"b_[N] = {b.total} and N = {b.n} have different parity")


def odd_tuple_algorithm(b, perm):
    """Greedy minimal odd tuple along a permutation, with a full trace.

    Starting from T_1 = b_[N], each step takes the largest remaining total
    T_{q+1} = min(T_q, b_{[N]\\pi([q])}) compatible with assigning a
    positive odd value, lowered by 1 when the parity of the remaining
    ground set demands it; a_{pi(q)} = T_q - T_{q+1} and the final entry
    absorbs T_N.  Requires b_[N] = N (mod 2) and b_A >= |A|.
    """
    n = b.n
    _check_perm(n, perm)
    _require_odd_feasible(b)

    totals = [b.total]
    a = [0] * n
    transitions = []
    removed = 0
    for q in range(1, n + 1):
        removed |= 1 << (perm[q - 1] - 1)
        remaining_cap = b.values[b.full_mask ^ removed]
        t_q = totals[-1]
        if q == n:
            t_next = 0
        else:
            t_next = min(t_q, remaining_cap)
            if (t_q - t_next) % 2 == 0:
                t_next -= 1
        if t_q > remaining_cap:
            transitions.append(q)
        a[perm[q - 1] - 1] = t_q - t_next
        totals.append(t_next)

    if any(x <= 0 or x % 2 == 0 for x in a):
        raise PolymatError(f"degenerate run produced {tuple(a)} (trace totals {totals})")

    mus, alphas = _derive_block_constants(b, perm, tuple(totals), tuple(transitions), a)
    trace = AlgorithmTrace(tuple(perm), tuple(totals), tuple(transitions), mus, alphas)
    return tuple(a), trace


def _derive_block_constants(b, perm, totals, transitions, a):
    """Recover mu_i and alpha_i from the trace and cross-check the parity table."""
    n = b.n

    def complement_after(w):
        removed = 0
        for q in range(w):
            removed |= 1 << (perm[q] - 1)
        return b.full_mask ^ removed

    def parity_matches(w):
        return (b.values[complement_after(w)] - (n - w)) % 2 == 0

    mus = []
    alphas = []
    prev = 0
    for w in transitions:
        base = b.values[complement_after(prev)] - b.values[complement_after(w)]
        mu = a[perm[w - 1] - 1] - base + (w - prev - 1)
        expected = (0 if parity_matches(prev) == parity_matches(w)
                    else (-1 if not parity_matches(prev) else 1))
        if mu != expected:
            raise PolymatError(
                f"parity table mismatch at transition {w}: mu = {mu}, table says {expected}")
        mus.append(mu)
        # alpha is the parity allowance spent at this transition: 1 exactly
        # when T_{w+1} was lowered below the remaining cap.
        alphas.append(0 if parity_matches(w) else 1)
        prev = w
    return tuple(mus), tuple(alphas)


@dataclass(frozen=True)
class SubsetLedger:
    """Running-total audit of one subset inequality against an output tuple.

    Elements of the subset are consumed in decreasing position order along
    the permutation; ``initial`` is b_e - a_e for the first element and each
    later element e contributes b_{A+e} - b_A - a_e.  The final value equals
    b_S - sum_{j in S} a_j, so the subset is compatible iff it is >= 0.
    """

    subset: tuple
    initial: int
    changes: tuple
    final: int

    @property
    def compatible(self):
        return self.final >= 0

    @property
    def negative_steps(self):
        return sum(1 for c in self.changes if c < 0)


@dataclass(frozen=True)
class CompatReport:
    compatible: bool
    witness: object
    ledgers: dict


def check_output_compat(b, a, trace):
    """Per-subset running-total ledgers for an algorithm output.

    The overall verdict is cross-checked against ``in_nonzero_region``; a
    disagreement would be an internal inconsistency and raises.
    """
    n = b.n
    perm = trace.perm
    position = {perm[q] - 1: q for q in range(n)}
    ledgers = {}
    witness = None
    for m in range(1, 1 << n):
        elements = sorted((j for j in range(n) if m >> j & 1),
                          key=lambda j: position[j], reverse=True)
        first = elements[0]
        initial = b.values[1 << first] - a[first]
        running = initial
        acc_mask = 1 << first
        changes = []
        for j in elements[1:]:
            delta = b.values[acc_mask | 1 << j] - b.values[acc_mask] - a[j]
            changes.append(delta)
            running += delta
            acc_mask |= 1 << j
        ledger = SubsetLedger(subset_of(m), initial, tuple(changes), running)
        ledgers[subset_of(m)] = ledger
        if not ledger.compatible and witness is None:
            witness = subset_of(m)
    verdict = witness is None
    region_ok, region_witness = in_nonzero_region(b, a)
    if verdict != region_ok:
        raise PolymatError(
            f"ledger verdict {verdict} disagrees with region membership {region_ok}")
    return CompatReport(verdict, witness, ledgers)


@dataclass(frozen=True)
class ExtremeComparison:
    entries: tuple
    ok: bool


def compare_to_extreme(b, trace):
    """Check a_{pi(w_i)} - alpha_i <= b_{[N]\\pi([w_i-1])} - b_{[N]\\pi([w_i])}.

    The right-hand side is the greedy extreme-point coordinate at the same
    position, so transition values exceed the classical ones by at most the
    parity allowance alpha_i.
    """
    n = b.n
    perm = trace.perm
    a = [0] * n
    for q in range(n):
        a[perm[q] - 1] = trace.totals[q] - trace.totals[q + 1]

    def complement_after(w):
        removed = 0
        for q in range(w):
            removed |= 1 << (perm[q] - 1)
        return b.full_mask ^ removed

    entries = []
    ok = True
    for alpha, w in zip(trace.alphas, trace.transitions):
        rhs = b.values[complement_after(w - 1)] - b.values[complement_after(w)]
        lhs = a[perm[w - 1] - 1] - alpha
        holds = lhs <= rhs
        ok = ok and holds
        entries.append({"position": w, "value": a[perm[w - 1] - 1],
                        "alpha": alpha, "bound": rhs, "holds": holds})
    return ExtremeComparison(tuple(entries), ok)


def brute_force_odd_tuples(b):
    """All odd tuples summing to b_[N] inside the region, lexicographically.

    Serves as the independent oracle for the greedy algorithm; requires the
    parity precondition but tolerates b_A < |A| (the list is then empty).
    """
    n = b.n
    if (b.total - n) % 2 != 0:
        raise ParityError(f"b_[N] = {b.total} and N = {b.n} have different parity")
    out = []

    def rec(prefix, remaining):
        pos = len(prefix)
        if pos == n - 1:
            if remaining >= 1 and remaining % 2 == 1:
                cand = prefix + (remaining,)
                if in_nonzero_region(b, cand)[0]:
                    out.append(cand)
            return
        # each later entry is odd >= 1
        left = n - pos - 1
        for v in range(1, remaining - left + 1, 2):
            rec(prefix + (v,), remaining - v)

    rec((), b.total)
    return tuple(out)


@dataclass(frozen=True)
class P2Report:
    exists_odd_pair: bool
    example: object
    entry_point: tuple
    exit_point: tuple


def p2_analysis(b1, b2, b12, cap):
    """Odd pairs on the even line a_1 + a_2 = cap inside the pair region.

    An odd pair exists iff cap < b1 + b2, or cap = b1 + b2 with b1 and b2
    both odd.  Entry and exit are the endpoints of the segment cut from the
    line by the region.
    """
    if cap < 2 or cap % 2 != 0:
        raise ValueError("cap must be an even integer >= 2")
    if cap > b12:
        raise ValueError("cap must be at most b12")
    if b12 > b1 + b2 or b12 < max(b1, b2) or min(b1, b2) < 1:
        raise ValueError("pair data must be submodular and monotone with b_A >= |A|")
    entry = (cap - min(cap, b2), min(cap, b2))
    exit_ = (min(cap, b1), cap - min(cap, b1))
    exists = cap < b1 + b2 or (b1 % 2 == 1 and b2 % 2 == 1)
    example = None
    if exists:
        for a1 in range(1, min(cap - 1, b1) + 1, 2):
            a2 = cap - a1
            if a2 >= 1 and a2 % 2 == 1 and a2 <= b2:
                example = (a1, a2)
                break
        if example is None:
            raise PolymatError(f"no odd pair found for ({b1}, {b2}, {b12}), cap {cap}")
    return P2Report(exists, example, entry, exit_)


@dataclass(frozen=True)
class P3Report:
    point: tuple
    part: int
    conditions: tuple
    compatible: bool
    degenerate: bool


def p3_closed_form(b, sigma):
    """Closed-form odd triple for N = 3 along an ordering, with strictness tests.

    Requires b_[3] odd and b_[3] - b_[3]\\l even for every l (otherwise the
    problem reduces through ``lift_point``).  Produces the part-1 point when
    b_{sigma(1)} is even and the part-2 point when odd, together with the
    strict-submodularity conditions whose conjunction is equivalent to the
    point being a valid odd tuple of the region.  In the flat part-2 case
    b_{sigma(1),sigma(2)} = b_{sigma(1)} the formula entry a_{sigma(2)} is
    negative; the report is then flagged degenerate and the conditions
    still evaluate to incompatible.
    """
    if b.n != 3:
        raise ValueError("p3_closed_form needs N = 3")
    _check_perm(3, sigma)
    report = check_submodular(b)
    if not (report.submodular_ok and report.monotone_ok):
        raise PolymatError("b must be submodular and monotone")
    if b.total % 2 == 0:
        raise ParityError("b_[3] must be odd")
    for el in (1, 2, 3):
        if (b.total - b.values[b.full_mask ^ (1 << (el - 1))]) % 2 != 0:
            raise PolymatError(
                f"b_[3] - b_[3]\\{{{el}}} is odd; set a_{el} by lift_point and reduce to N = 2")

    s1, s2, s3 = sigma
    b_s1 = b.values[1 << (s1 - 1)]
    b_s3 = b.values[1 << (s3 - 1)]
    b_12 = b.values[(1 << (s1 - 1)) | (1 << (s2 - 1))]
    b_13 = b.values[(1 << (s1 - 1)) | (1 << (s3 - 1))]
    b_23 = b.values[(1 << (s2 - 1)) | (1 << (s3 - 1))]
    top = b.total

    if b_s1 % 2 == 0:
        part = 1
        vals = {s1: b_s1 - 1, s2: b_12 - b_s1, s3: top - b_12 + 1}
        conditions = (
            ("b_[3] - b_[3]\\s1 <= b_s1 - 1", top - b_23 <= b_s1 - 1),
            ("b_[3] - b_[3]\\s3 <= b_s3 - 1", top - b_12 <= b_s3 - 1),
        )
    else:
        part = 2
        vals = {s1: b_s1, s2: b_12 - b_s1 - 1, s3: top - b_12 + 1}
        conditions = (
            ("b_[3] - b_[3]\\s1 <= b_s1 - 1", top - b_23 <= b_s1 - 1),
            ("b_[3] - b_[3]\\s3 <= b_s3 - 1", top - b_12 <= b_s3 - 1),
            ("b_[3] - b_[3]\\s3 <= b_{s1,s3} - b_s1 - 1", top - b_12 <= b_13 - b_s1 - 1),
        )
    point = tuple(vals[j] for j in (1, 2, 3))
    degenerate = any(v < 1 for v in point)
    compatible = all(c[1] for c in conditions) and not degenerate

    direct = (not degenerate and all(v % 2 == 1 for v in point)
              and in_nonzero_region(b, point)[0])
    if compatible != direct:
        raise PolymatError(
            f"strictness conditions {compatible} disagree with direct check {direct} "
            f"for b = {b.values}, sigma = {sigma}")
    return P3Report(point, part, conditions, compatible, degenerate)
