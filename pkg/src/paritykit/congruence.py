"""Trace-congruence verification between two curves modulo an odd prime.

Two curves whose mod-p representations are isomorphic have congruent traces of
Frobenius away from bad primes.  The converse direction is certified up to a
Sturm bound: weight-2 forms on Gamma_0(L) that agree at every prime up to the
bound agree everywhere.  A Verified result therefore certifies congruence of
the semisimplified representations; irreducibility is not checked here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import lcm

from .arith import factor, is_prime, sieve_primes
from .errors import ComputationLimitError
from .local import ReductionType, conductor, tate_local
from .weierstrass import CurveModel, discriminant

# A full scan costs roughly the sum of all primes below the bound in counting
# work, so bounds past a few tens of thousands stop being interactive.
_BOUND_CAP = 20000


class CongruenceStatus(enum.Enum):
    VERIFIED = "Verified"
    FAILED = "Failed"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CongruenceVerdict:
    status: CongruenceStatus
    level: int | None
    bound: int | None
    checked_primes: int
    witness: tuple[int, int, int] | None
    caveat: str


def sturm_bound(level: int) -> int:
    """ceil(index / 6) where index = level * prod(1 + 1/ell) over ell | level."""
    if level < 1:
        raise ValueError("level must be a positive integer")
    index = 1
    for ell, e in factor(level):
        index *= ell ** (e - 1) * (ell + 1)
    return -(-index // 6)


def _reduced_conductor(c: CurveModel, p: int) -> int:
    # Drop multiplicative primes where the mod-p representation is unramified
    # (p divides the valuation of the minimal discriminant, the Tate-curve
    # criterion); keep everything else.
    n = 1
    for q, _ in factor(discriminant(c)):
        d = tate_local(c, q)
        if d.red_type is ReductionType.GOOD:
            continue
        if d.red_type.is_multiplicative and q != p and d.v_disc % p == 0:
            continue
        n *= q**d.cond_exp
    return n


def _compared_pair(d1, d2, p: int) -> tuple[int, int] | None:
    """Trace values to compare at one prime, or None when the prime is skipped."""
    good1 = d1.red_type is ReductionType.GOOD
    good2 = d2.red_type is ReductionType.GOOD
    if good1 and good2:
        return d1.trace, d2.trace
    if not good1 and not good2:
        return None
    good, bad = (d1, d2) if good1 else (d2, d1)
    if bad.red_type.is_multiplicative:
        # Compare against the Frobenius trace of the unramified semisimplified
        # representation at a multiplicative prime: +-(ell + 1).
        pair = (good.trace, bad.trace * (bad.ell + 1))
    elif p == 3:
        return None
    else:
        pair = (good.trace, 0)
    return pair if good1 else (pair[1], pair[0])


def check_congruence(c1: CurveModel, c2: CurveModel, p: int) -> CongruenceVerdict:
    """Compare a_ell(E1) and a_ell(E2) mod p for all primes up to a Sturm bound.

    The bound is taken at level lcm(N1, N2, p^2) when that is small enough to
    scan; otherwise at the smaller level obtained by discarding multiplicative
    primes whose mod-p representation is unramified.  Primes bad for both
    curves and ell = p are skipped.
    """
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    n1, n2 = conductor(c1), conductor(c2)
    notes = [
        "Verified certifies congruence of semisimplified mod-%d representations "
        "up to the stated bound; primes bad for both curves and ell = %d are skipped."
        % (p, p)
    ]
    level = lcm(n1, n2, p * p)
    bound = sturm_bound(level)
    complete = True
    if bound > _BOUND_CAP:
        level = lcm(_reduced_conductor(c1, p), _reduced_conductor(c2, p), p * p)
        bound = sturm_bound(level)
        notes.append(
            "Bound taken at the reduced level %d (multiplicative primes with "
            "p | v_ell(min disc) discarded) because the full level gives an "
            "impractical bound." % level
        )
        if bound > _BOUND_CAP:
            # A single mismatch disproves the congruence without any Sturm
            # bound, so scan up to the cap anyway; only Verified needs the
            # full bound.
            complete = False
            notes.append(
                "Sturm bound %d exceeds the scan cap %d; scanned primes up to "
                "the cap for mismatches only." % (bound, _BOUND_CAP)
            )
    if p == 3:
        notes.append(
            "Primes additive for one curve and good for the other are skipped "
            "at p = 3 (a mod-3 conductor drop cannot be ruled out)."
        )
    checked = 0
    structural = None
    for ell in sieve_primes(bound if complete else _BOUND_CAP):
        if ell == p:
            continue
        try:
            d1, d2 = tate_local(c1, ell), tate_local(c2, ell)
        except ComputationLimitError as exc:
            notes.append("Scan aborted at %d: %s." % (ell, exc))
            return CongruenceVerdict(
                CongruenceStatus.INCONCLUSIVE, level, bound, checked, None, " ".join(notes)
            )
        pair = _compared_pair(d1, d2, p)
        if pair is None:
            continue
        checked += 1
        if (pair[0] - pair[1]) % p != 0:
            notes.append("First mismatch at ell = %d." % ell)
            return CongruenceVerdict(
                CongruenceStatus.FAILED, level, bound, checked, (ell, pair[0], pair[1]), " ".join(notes)
            )
        # Past the skip above, an additive entry here means the other curve is good.
        if structural is None and p >= 5 and ReductionType.ADDITIVE in (d1.red_type, d2.red_type):
            structural = ell
    if structural is not None:
        # Additive versus good forces a ramification mismatch of the mod-p
        # representations for p >= 5 even when the traces happen to agree.
        notes.append(
            "Traces agree up to the bound, but ell = %d is additive for one "
            "curve and good for the other, which rules out an isomorphism of "
            "mod-%d representations." % (structural, p)
        )
        return CongruenceVerdict(
            CongruenceStatus.INCONCLUSIVE, level, bound, checked, None, " ".join(notes)
        )
    status = CongruenceStatus.VERIFIED if complete else CongruenceStatus.INCONCLUSIVE
    return CongruenceVerdict(status, level, bound, checked, None, " ".join(notes))
