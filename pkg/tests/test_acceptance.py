"""Acceptance criteria, one test per criterion.

Each test prints "[acceptance] criterion N: PASS" or "... FAIL" and enforces
its runtime budget.  Values asserted here are exact; there are no tolerances.
"""

import contextlib
import json
import pathlib
import random
import time

import numpy as np

from paritykit.congruence import CongruenceStatus, check_congruence
from paritykit.family import base_curve, member
from paritykit.io import emit_curve_file, emit_report, parse_curve_file
from paritykit.local import (
    LocalData,
    ReductionType,
    conductor,
    count_points,
    is_supersingular,
    tate_local,
)
from paritykit.parity import compute_sigma0, deduce_rank, parity_relation, s_set, tau
from paritykit.weierstrass import (
    CurveModel,
    Isomorphism,
    discriminant,
    invariants,
    minimal_model,
    transform,
)
from fractions import Fraction

DATA = pathlib.Path(__file__).parent / "data"

E69 = CurveModel(1, 0, 1, -1, -1)
E897 = CurveModel(1, 0, 1, 130884, -59725523)
E32 = CurveModel(0, 0, 0, -1, 0)


@contextlib.contextmanager
def criterion(n, budget):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, "criterion %d exceeded budget: %.2fs >= %.0fs" % (n, elapsed, budget)
    except BaseException:
        print("[acceptance] criterion %d: FAIL" % n)
        raise
    print("[acceptance] criterion %d: PASS" % n)


def test_criterion_1_pair_69_897_end_to_end():
    with criterion(1, 2.0):
        assert conductor(E69) == 69
        assert conductor(E897) == 897
        assert is_supersingular(E69, 5)
        assert is_supersingular(E897, 5)
        verdict = check_congruence(E69, E897, 5)
        assert verdict.status is CongruenceStatus.VERIFIED
        assert verdict.bound >= 224  # every good prime up to 224 is compared
        assert verdict.bound in (224, 6720)
        data = compute_sigma0(E69, E897, 5)
        assert data.sigma0 == (13,)
        assert 13 + 1 - count_points(E69, 13) == -6
        assert tate_local(E897, 13).red_type is ReductionType.SPLIT_MULTIPLICATIVE
        s1 = s_set(E69, data.sigma0, 5)
        s2 = s_set(E897, data.sigma0, 5)
        assert s1 == frozenset({13})
        assert s2 == frozenset()
        report = parity_relation(E69, E897, 5, rank1=0, rank2=1, verdict=verdict)
        assert report.relation_holds is True


def test_criterion_2_family_member_207_end_to_end():
    with criterion(2, 30.0):
        e2 = member(1, 207)
        t = 207
        assert e2 == CurveModel(
            0, 0, 0, 27 * t**4 - 18 * t**2 - 1, 4 * t * (27 * t**4 + 1)
        )
        assert 3 + 1 - count_points(E32, 3) == 0
        verdict = check_congruence(E32, e2, 3)
        assert verdict.status is CongruenceStatus.VERIFIED
        data = compute_sigma0(E32, e2, 3)
        assert data.sigma0 == (37, 83, 4035637)
        assert 37 + 1 - count_points(E32, 37) == -2
        assert 83 + 1 - count_points(E32, 83) == 0
        assert 4035637 + 1 - count_points(E32, 4035637) == 3598
        assert tate_local(e2, 37).red_type is ReductionType.NONSPLIT_MULTIPLICATIVE
        assert tate_local(e2, 83).red_type is ReductionType.SPLIT_MULTIPLICATIVE
        assert tate_local(e2, 4035637).red_type is ReductionType.NONSPLIT_MULTIPLICATIVE
        s1 = s_set(E32, data.sigma0, 3)
        s2 = s_set(e2, data.sigma0, 3)
        assert s1 == frozenset({83})
        assert s2 == frozenset()
        deduced = deduce_rank(0, len(s1), len(s2), target_bound=1)
        assert deduced.parity == "odd"
        assert deduced.exact == 1


def test_criterion_3_tau_oracle_exhaustive():
    def odd_delta(red_type, ell, a, p):
        # three-clause parity predicate
        if red_type is ReductionType.GOOD:
            return (a - ell - 1) % p == 0 and ell % p != 1
        if red_type is ReductionType.SPLIT_MULTIPLICATIVE:
            return ell % p == 1
        if red_type is ReductionType.NONSPLIT_MULTIPLICATIVE:
            return (ell + 1) % p == 0
        return False

    def prime_with_residue(r, p):
        n = r
        while True:
            if n > 1 and n != p and all(n % d for d in range(2, int(n**0.5) + 1)):
                return n
            n += p

    with criterion(3, 1.0):
        for p in (3, 5, 7, 11, 13):
            for r in range(1, p):
                ell = prime_with_residue(r, p)
                for a in range(p):
                    d = LocalData(ell, ReductionType.GOOD, 0, 0, a, "I0")
                    rec = tau(d, p)
                    assert bool(rec.delta_parity) == odd_delta(d.red_type, ell, a, p)
                    # odd tau in the good case: a = ell + 1 and ell != 1 (mod p)
                    assert (rec.tau % 2 == 1) == (
                        (a - ell - 1) % p == 0 and ell % p != 1
                    )
                for red, tr in (
                    (ReductionType.SPLIT_MULTIPLICATIVE, 1),
                    (ReductionType.NONSPLIT_MULTIPLICATIVE, -1),
                ):
                    d = LocalData(ell, red, 1, 1, tr, "I1")
                    assert bool(tau(d, p).delta_parity) == odd_delta(red, ell, 0, p)
                d = LocalData(ell, ReductionType.ADDITIVE, 2, 2, 0, "II")
                assert tau(d, p).tau == 0


def test_criterion_4_point_count_differential():
    def brute_count(c, ell):
        xs = np.arange(ell, dtype=np.int64)
        rhs = (xs * xs % ell * xs + c.a2 * xs * xs + c.a4 * xs + c.a6) % ell
        y = np.arange(ell, dtype=np.int64)[:, None]
        x = xs[None, :]
        lhs = (y * y + c.a1 * x * y + c.a3 * y) % ell
        return int((lhs == rhs[None, :]).sum()) + 1

    with criterion(4, 10.0):
        rng = random.Random(20260814)
        primes = [n for n in range(2, 500) if all(n % d for d in range(2, int(n**0.5) + 1))]
        tested = 0
        while tested < 50:
            c = CurveModel(*(rng.randrange(-20, 21) for _ in range(5)))
            d = discriminant(c)
            if d == 0:
                continue
            tested += 1
            for ell in primes:
                if d % ell == 0:
                    continue
                n = count_points(c, ell)
                assert n == brute_count(c, ell), (c, ell)
                a = ell + 1 - n
                assert a * a <= 4 * ell, (c, ell)


def test_criterion_5_family_properties():
    with criterion(5, 60.0):
        for D in range(1, 101):
            assert member(D, 0) == base_curve(D)
        for t in (3, -3, 6, -6, 9, -9, 12, -12):
            e2 = member(1, t)
            assert is_supersingular(e2, 3), t
            verdict = check_congruence(E32, e2, 3)
            assert verdict.status is CongruenceStatus.VERIFIED, t


def test_criterion_6_minimal_model_invariants():
    with criterion(6, 5.0):
        rng = random.Random(6)
        bases = [E69, E897, E32, CurveModel(0, -1, 1, -10, -20), CurveModel(0, 0, 1, -7, 6)]
        done = 0
        while done < 100:
            base = bases[done % len(bases)]
            m = rng.choice([1, 2, 3, 6])
            iso = Isomorphism.of(
                Fraction(1, m),
                rng.randrange(-9, 10),
                rng.randrange(-9, 10),
                rng.randrange(-9, 10),
            )
            moved = transform(base, iso)
            inv = invariants(moved)
            assert inv.c4**3 - inv.c6**2 == 1728 * inv.disc
            minimal, back = minimal_model(moved)
            assert minimal == minimal_model(base)[0]
            assert minimal_model(minimal)[0] == minimal  # idempotent
            assert transform(moved, back) == minimal
            for ell in (2, 3, 5, 7, 13):
                da, db = tate_local(base, ell), tate_local(moved, ell)
                assert da.red_type is db.red_type
                assert da.trace == db.trace
                assert da.cond_exp == db.cond_exp
            done += 1


def test_criterion_7_round_trip_and_determinism():
    with criterion(7, 10.0):
        text = (DATA / "congruent_pair.curves").read_text()
        records = parse_curve_file(text.splitlines())
        assert parse_curve_file(emit_curve_file(records).splitlines()) == records

        def build():
            verdict = check_congruence(E69, E897, 5)
            return emit_report(
                parity_relation(E69, E897, 5, rank1=0, rank2=1, verdict=verdict)
            )

        first, second = build(), build()
        assert first == second
        obj = json.loads(first)
        assert obj["sigma0"] == [13]
        assert obj["relation"]["holds"] is True
