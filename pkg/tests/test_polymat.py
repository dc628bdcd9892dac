import itertools
import random

import pytest

from fanlab.polymat import (DimFunction, InvalidPointError, ParityError,
                            PolymatError, SizeFloorError,
                            brute_force_odd_tuples, check_output_compat,
                            check_submodular, clamp, compare_to_extreme,
                            greedy_extreme_point, in_nonzero_region,
                            lift_point, odd_tuple_algorithm, p2_analysis,
                            p3_closed_form)

MODULAR = DimFunction.from_subsets(3, {(1,): 3, (2,): 3, (3,): 3, (1, 2): 6,
                                       (1, 3): 6, (2, 3): 6, (1, 2, 3): 9})
INCOMPAT = DimFunction.from_subsets(3, {(1,): 2, (2,): 3, (3,): 3, (1, 2): 5,
                                        (1, 3): 5, (2, 3): 5, (1, 2, 3): 7})
EVEN_FIRST = DimFunction.from_subsets(3, {(1,): 4, (2,): 4, (3,): 4, (1, 2): 7,
                                          (1, 3): 7, (2, 3): 7, (1, 2, 3): 9})
TIGHT = DimFunction.from_subsets(3, {(1,): 3, (2,): 3, (3,): 3, (1, 2): 5,
                                     (1, 3): 5, (2, 3): 5, (1, 2, 3): 7})


def random_dim_function(rng, n=None, need_parity=False, max_tries=200):
    """Coverage-style monotone submodular functions with b_A >= |A|."""
    for _ in range(max_tries):
        n = n or rng.randint(1, 4)
        universe = rng.randint(0, 6)
        sets = []
        for i in range(n):
            shared = {j for j in range(universe) if rng.random() < 0.5}
            sets.append(shared | {universe + i})
        values = [0] * (1 << n)
        for m in range(1, 1 << n):
            union = set()
            for i in range(n):
                if m >> i & 1:
                    union |= sets[i]
            values[m] = len(union)
        b = DimFunction(n, tuple(values))
        if rng.random() < 0.3:
            cap = rng.randint(n, max(n, b.total))
            b = clamp(b, cap)
            if not check_submodular(b).size_floor_ok:
                continue
        if need_parity and (b.total - n) % 2 != 0:
            continue
        return b
    raise RuntimeError("generator exhausted")


def test_check_submodular_modular_pair():
    b = DimFunction.from_subsets(2, {(1,): 1, (2,): 1, (1, 2): 2})
    assert check_submodular(b).passed


def test_check_submodular_modular_triple():
    assert check_submodular(MODULAR).passed


def test_check_submodular_violation_witness():
    b = DimFunction.from_subsets(2, {(1,): 1, (2,): 1, (1, 2): 3})
    report = check_submodular(b)
    assert not report.submodular_ok
    assert report.monotone_ok
    assert set(report.submodular_witness) == {(1,), (2,)}


def test_in_nonzero_region():
    b = DimFunction.from_subsets(2, {(1,): 1, (2,): 1, (1, 2): 2})
    assert in_nonzero_region(b, (1, 1)) == (True, None)
    b2 = DimFunction.from_subsets(2, {(1,): 2, (2,): 2, (1, 2): 3})
    ok, witness = in_nonzero_region(b2, (2, 2))
    assert not ok and witness == (1, 2)
    assert in_nonzero_region(MODULAR, (3, 3, 3))[0]


def test_in_nonzero_region_length_mismatch():
    with pytest.raises(ValueError):
        in_nonzero_region(MODULAR, (1, 1))


def test_clamp():
    c = clamp(MODULAR, 5)
    assert c.b((1, 2)) == 5 and c.b((1, 2, 3)) == 5 and c.b((1,)) == 3
    assert check_submodular(c).submodular_ok
    assert clamp(MODULAR, 9).values == MODULAR.values
    assert all(v == 0 for v in clamp(MODULAR, 0).values)


def test_lift_point():
    assert lift_point(MODULAR, (3, 3), 3) == (3, 3, 3)
    b = DimFunction.from_subsets(3, {(1,): 2, (2,): 3, (3,): 3, (1, 2): 5,
                                     (1, 3): 5, (2, 3): 5, (1, 2, 3): 7})
    assert lift_point(b, (2, 3), 3) == (2, 3, 2)
    with pytest.raises(InvalidPointError):
        lift_point(MODULAR, (4, 3), 3)


def test_greedy_extreme_point():
    assert greedy_extreme_point(MODULAR, (1, 2, 3)) == (3, 3, 3)
    b = DimFunction.from_subsets(3, {(1,): 2, (2,): 3, (3,): 3, (1, 2): 5,
                                     (1, 3): 5, (2, 3): 5, (1, 2, 3): 7})
    assert greedy_extreme_point(b, (1, 2, 3)) == (2, 2, 3)
    b1 = DimFunction.from_subsets(1, {(1,): 4})
    assert greedy_extreme_point(b1, (1,)) == (4,)


def test_odd_tuple_algorithm_modular():
    a, trace = odd_tuple_algorithm(MODULAR, (1, 2, 3))
    assert a == (3, 3, 3)
    assert trace.totals == (9, 6, 3, 0)
    assert trace.transitions == (1, 2, 3)


def test_odd_tuple_algorithm_incompatible_case():
    # the greedy recurrence takes the minimal feasible odd value at every
    # step: here a_2 = 1 keeps T_3 = 3 <= b_3, so the output is (3, 1, 3)
    a, trace = odd_tuple_algorithm(INCOMPAT, (1, 2, 3))
    assert a == (3, 1, 3)
    assert trace.totals == (7, 4, 3, 0)
    report = check_output_compat(INCOMPAT, a, trace)
    assert not report.compatible
    assert report.witness == (1,)
    assert report.ledgers[(1,)].initial == -1


def test_odd_tuple_algorithm_even_singleton():
    a, trace = odd_tuple_algorithm(EVEN_FIRST, (1, 2, 3))
    assert a == (3, 3, 3)
    assert trace.totals == (9, 6, 3, 0)
    report = check_output_compat(EVEN_FIRST, a, trace)
    assert report.compatible


def test_odd_tuple_algorithm_parity_error():
    b = DimFunction.from_subsets(2, {(1,): 2, (2,): 2, (1, 2): 3})
    with pytest.raises(ParityError):
        odd_tuple_algorithm(b, (1, 2))


def test_odd_tuple_algorithm_size_floor_error():
    b = DimFunction.from_subsets(2, {(1,): 0, (2,): 0, (1, 2): 0})
    # parity is fine (b_total = 0 = N mod 2), the floor is not
    assert (b.total - b.n) % 2 == 0
    with pytest.raises(SizeFloorError):
        odd_tuple_algorithm(b, (1, 2))


def test_check_output_compat_single_variable():
    b = DimFunction.from_subsets(1, {(1,): 5})
    a, trace = odd_tuple_algorithm(b, (1,))
    assert a == (5,)
    assert check_output_compat(b, a, trace).compatible


def test_compare_to_extreme_examples():
    a, trace = odd_tuple_algorithm(MODULAR, (1, 2, 3))
    cmp1 = compare_to_extreme(MODULAR, trace)
    assert cmp1.ok and trace.alphas == (0, 0, 0)
    a2, trace2 = odd_tuple_algorithm(INCOMPAT, (1, 2, 3))
    cmp2 = compare_to_extreme(INCOMPAT, trace2)
    assert cmp2.ok  # bounds against the extreme point, not region membership


def test_brute_force_examples():
    assert (3, 3, 3) in brute_force_odd_tuples(MODULAR)
    assert (1, 3, 5) not in brute_force_odd_tuples(MODULAR)
    assert brute_force_odd_tuples(INCOMPAT) == ()
    b = DimFunction.from_subsets(2, {(1,): 1, (2,): 1, (1, 2): 2})
    assert brute_force_odd_tuples(b) == ((1, 1),)


def test_p2_analysis_examples():
    assert not p2_analysis(2, 2, 4, 4).exists_odd_pair
    rep = p2_analysis(3, 2, 4, 4)
    assert rep.exists_odd_pair and rep.example == (3, 1)
    rep2 = p2_analysis(1, 1, 2, 2)
    assert rep2.exists_odd_pair and rep2.example == (1, 1)


def test_p2_analysis_matches_brute_force_exhaustively():
    for b12 in range(2, 13):
        for b1 in range(1, b12 + 1):
            for b2 in range(1, b12 + 1):
                if b12 > b1 + b2 or b12 < max(b1, b2):
                    continue
                for cap in range(2, b12 + 1, 2):
                    found = any(
                        a1 % 2 == 1 and (cap - a1) % 2 == 1
                        and cap - a1 >= 1 and a1 <= b1 and cap - a1 <= b2
                        for a1 in range(1, cap))
                    rep = p2_analysis(b1, b2, b12, cap)
                    assert rep.exists_odd_pair == found, (b1, b2, b12, cap)
                    if found:
                        a1, a2 = rep.example
                        assert a1 % 2 == a2 % 2 == 1
                        assert a1 + a2 == cap and a1 <= b1 and a2 <= b2


def test_p3_closed_form_worked_triples():
    rep = p3_closed_form(EVEN_FIRST, (1, 2, 3))
    assert rep.point == (3, 3, 3) and rep.part == 1 and rep.compatible

    b2 = DimFunction.from_subsets(3, {(1,): 3, (2,): 4, (3,): 4, (1, 2): 7,
                                      (1, 3): 7, (2, 3): 7, (1, 2, 3): 9})
    rep2 = p3_closed_form(b2, (1, 2, 3))
    assert rep2.point == (3, 3, 3) and rep2.part == 2 and rep2.compatible

    rep3 = p3_closed_form(TIGHT, (1, 2, 3))
    assert rep3.point == (3, 1, 3) and not rep3.compatible
    failed = [name for name, ok in rep3.conditions if not ok]
    assert any("s3 <= b_{s1,s3}" in name for name in failed)
    assert brute_force_odd_tuples(TIGHT) == ()


def test_p3_closed_form_reduction_error():
    b = DimFunction.from_subsets(3, {(1,): 2, (2,): 2, (3,): 2, (1, 2): 4,
                                     (1, 3): 4, (2, 3): 4, (1, 2, 3): 5})
    # b_[3] - b_23 = 1 is odd: the proposition directs to the lift reduction
    with pytest.raises(PolymatError, match="lift_point"):
        p3_closed_form(b, (1, 2, 3))


def test_p3_closed_form_matches_algorithm_on_grid():
    from fanlab.polymat.grid import enumerate_dim_functions

    checked = 0
    degenerate = 0
    for values in enumerate_dim_functions(3, 11):
        b = DimFunction(3, values)
        if b.total % 2 == 0:
            continue
        if any((b.total - b.values[b.full_mask ^ (1 << k)]) % 2 != 0
               for k in range(3)):
            continue
        for sigma in itertools.permutations((1, 2, 3)):
            rep = p3_closed_form(b, sigma)
            # strictness verdict must agree with direct membership
            direct = (not rep.degenerate
                      and all(v >= 1 and v % 2 == 1 for v in rep.point)
                      and in_nonzero_region(b, rep.point)[0])
            assert rep.compatible == direct
            if rep.compatible:
                assert rep.point in brute_force_odd_tuples(b)
            if rep.degenerate:
                degenerate += 1
                continue
            # closed form equals the general algorithm run in reverse order
            pi = tuple(reversed(sigma))
            a, _ = odd_tuple_algorithm(b, pi)
            assert a == rep.point, (values, sigma)
            checked += 1
    assert checked > 500
    assert degenerate > 0  # the flat part-2 subcase does occur


def test_restriction_roundtrip():
    sub = MODULAR.restricted((1, 3))
    assert sub.n == 2
    assert sub.b((1,)) == 3 and sub.b((2,)) == 3 and sub.b((1, 2)) == 6


SEEDED = random.Random(20260810)
N_PROPERTY = 10_000


def test_property_clamp_preserves_submodularity():
    rng = random.Random(101)
    for _ in range(N_PROPERTY):
        b = random_dim_function(rng)
        cap = rng.randint(0, b.total + 2)
        c = clamp(b, cap)
        rep = check_submodular(c)
        assert rep.submodular_ok and rep.monotone_ok


def test_property_lift_point_preserves_region():
    rng = random.Random(202)
    for _ in range(N_PROPERTY):
        b = random_dim_function(rng)
        if b.n == 1:
            continue
        k = rng.randint(1, b.n)
        others = [j for j in range(1, b.n + 1) if j != k]
        sub = b.restricted(others)
        perm = list(range(1, b.n))
        rng.shuffle(perm)
        point = greedy_extreme_point(sub, tuple(perm))
        lifted = lift_point(b, point, k)
        assert in_nonzero_region(b, lifted)[0]


def test_property_greedy_extreme_point_feasible():
    rng = random.Random(303)
    for _ in range(N_PROPERTY):
        b = random_dim_function(rng)
        perm = list(range(1, b.n + 1))
        rng.shuffle(perm)
        v = greedy_extreme_point(b, tuple(perm))
        assert sum(v) == b.total
        assert in_nonzero_region(b, v)[0]


def test_property_compare_to_extreme_holds():
    rng = random.Random(404)
    for _ in range(N_PROPERTY):
        b = random_dim_function(rng, need_parity=True)
        perm = list(range(1, b.n + 1))
        rng.shuffle(perm)
        a, trace = odd_tuple_algorithm(b, tuple(perm))
        assert compare_to_extreme(b, trace).ok


def test_property_algorithm_output_odd_and_on_hyperplane():
    rng = random.Random(505)
    for _ in range(2000):
        b = random_dim_function(rng, need_parity=True)
        perm = list(range(1, b.n + 1))
        rng.shuffle(perm)
        a, trace = odd_tuple_algorithm(b, tuple(perm))
        assert all(x >= 1 and x % 2 == 1 for x in a)
        assert sum(a) == b.total
        report = check_output_compat(b, a, trace)
        assert report.compatible == in_nonzero_region(b, a)[0]
        if report.compatible:
            assert a in brute_force_odd_tuples(b)
