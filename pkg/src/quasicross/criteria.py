"""Non-existence criteria.

Each check decides, for one quasi-cross shape, whether a lattice tiling of
R^n can be ruled out.  A RULED_OUT outcome always carries a witness from
which the firing condition can be re-verified by direct arithmetic;
INCONCLUSIVE means the criterion applies but does not fire; INAPPLICABLE
means its hypotheses are not met.

All checks are pure functions of the shape (plus, for the divisor recursion,
a read-only verdict oracle for smaller dimensions), so repeated evaluation
is bit-identical and concurrent evaluation needs no coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .numtheory import (
    factorize,
    gcd,
    is_prime,
    legendre,
    mod_pow,
    primes_upto,
    primorial,
    quartic_class,
)
from .splitting import QuasiCrossShape, multiplier_set

__all__ = [
    "CRITERION_ORDER",
    "CriterionOutcome",
    "CriterionStatus",
    "SHAPE_CRITERIA",
    "VerdictStatus",
    "check_arm_gcd",
    "check_char4_literal",
    "check_divisors",
    "check_geometry",
    "check_odd_prime_order",
    "check_power_cube",
    "check_power_square",
    "check_psquare",
    "check_quadratic_balance",
    "check_quartic_generic",
    "check_vandermonde",
    "evaluate_all",
]


class CriterionStatus(Enum):
    RULED_OUT = "ruled_out"
    INCONCLUSIVE = "inconclusive"
    INAPPLICABLE = "inapplicable"


class VerdictStatus(Enum):
    """Aggregate status of one dimension.  The divisor recursion consumes
    the statuses of the smaller dimensions it reaches."""

    TILES = "tiles"
    NO_TILING = "no_tiling"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CriterionOutcome:
    criterion_id: str
    status: CriterionStatus
    witness: dict | None = None

    @property
    def fired(self) -> bool:
        return self.status is CriterionStatus.RULED_OUT


def _ruled_out(cid: str, **witness) -> CriterionOutcome:
    return CriterionOutcome(cid, CriterionStatus.RULED_OUT, witness)


def _inconclusive(cid: str, **witness) -> CriterionOutcome:
    return CriterionOutcome(cid, CriterionStatus.INCONCLUSIVE, witness or None)


def _inapplicable(cid: str) -> CriterionOutcome:
    return CriterionOutcome(cid, CriterionStatus.INAPPLICABLE)


def check_geometry(shape: QuasiCrossShape) -> CriterionOutcome:
    """Geometric packing bound: for n >= 2 no lattice tiling exists when
    2*k_plus*(k_minus + 1) - k_minus**2 exceeds n*(k_plus + k_minus)."""
    if shape.n < 2:
        return _inapplicable("geometry")
    lhs = 2 * shape.k_plus * (shape.k_minus + 1) - shape.k_minus**2
    rhs = shape.n * shape.arm_sum
    if lhs > rhs:
        return _ruled_out("geometry", lhs=lhs, rhs=rhs)
    return _inconclusive("geometry", lhs=lhs, rhs=rhs)


def check_arm_gcd(shape: QuasiCrossShape) -> CriterionOutcome:
    """Consecutive arms (k, k-1): a splitting of a group of order q forces
    gcd(k, q) > 1, so gcd(k_plus, q) = 1 rules the shape out."""
    if shape.k_minus != shape.k_plus - 1:
        return _inapplicable("arm_gcd")
    g = gcd(shape.k_plus, shape.group_order)
    if g == 1:
        return _ruled_out("arm_gcd", k=shape.k_plus, q=shape.group_order, gcd=g)
    return _inconclusive("arm_gcd", gcd=g)


def check_quadratic_balance(shape: QuasiCrossShape) -> CriterionOutcome:
    """Quadratic residue balance.  For prime q the products M*S sweep the
    nonzero residues once, which forces residues and non-residues to balance
    inside M or inside S.  An unbalanced M pushes the balance onto S, making
    |S| = n even; so odd n with unbalanced M admits no splitting."""
    q = shape.group_order
    if not is_prime(q):
        return _inapplicable("quadratic_balance")
    residues = multiplier_set(shape).residues
    qr = sum(1 for r in residues if legendre(r, q) == 1)
    qnr = len(residues) - qr
    if shape.n % 2 == 1 and qr != qnr:
        return _ruled_out("quadratic_balance", qr=qr, qnr=qnr)
    return _inconclusive("quadratic_balance", qr=qr, qnr=qnr)


def check_char4_literal(shape: QuasiCrossShape) -> CriterionOutcome:
    """Order-4 character test specific to arms (3, 1): with q = 4n + 1 prime
    and n odd, 6**n != 1 (mod q) rules the shape out.  The condition says 6
    is not a fourth power mod q, which forces the character sum over M away
    from zero; the sum over S must then vanish, impossible for odd |S|."""
    if (shape.k_plus, shape.k_minus) != (3, 1) or shape.n % 2 == 0:
        return _inapplicable("char4_literal")
    q = shape.group_order
    if not is_prime(q):
        return _inapplicable("char4_literal")
    t = mod_pow(6, shape.n, q)
    if t != 1:
        return _ruled_out("char4_literal", q=q, six_pow_n=t)
    return _inconclusive("char4_literal", q=q, six_pow_n=t)


def check_quartic_generic(shape: QuasiCrossShape) -> CriterionOutcome:
    """Order-4 character test for any shape with q prime, q = 1 (mod 4) and
    n odd.  Classes of M are counted; the character sum over M is zero only
    when class counts pair up (c0 = c2 and c1 = c3).  Unpaired counts force
    the sum over S to vanish, which needs |S| even."""
    q = shape.group_order
    if shape.n % 2 == 0 or q % 4 != 1 or not is_prime(q):
        return _inapplicable("quartic_generic")
    counts = [0, 0, 0, 0]
    for r in multiplier_set(shape).residues:
        counts[quartic_class(r, q)] += 1
    if counts[0] != counts[2] or counts[1] != counts[3]:
        return _ruled_out("quartic_generic", classes=tuple(counts), q=q)
    return _inconclusive("quartic_generic", classes=tuple(counts))


def check_odd_prime_order(shape: QuasiCrossShape) -> CriterionOutcome:
    """Character of odd prime order p = k_plus + k_minus; applies when q is
    also prime.  The sum over M of p-th roots of unity cannot vanish (the
    trivial root appears twice, via 1 and -1), so the sum over S must, which
    forces p | n."""
    p = shape.arm_sum
    if p == 2 or not is_prime(p) or not is_prime(shape.group_order):
        return _inapplicable("odd_prime_order")
    if shape.n % p != 0:
        return _ruled_out("odd_prime_order", p=p, n_mod_p=shape.n % p)
    return _inconclusive("odd_prime_order", p=p)


def check_power_square(shape: QuasiCrossShape) -> CriterionOutcome:
    """Squaring character for arms (4k - 1, 1): comparing the sum of squared
    products with the full sum of squares mod q makes 3 a zero divisor on one
    side only when k*n = 5 or 8 (mod 9), a contradiction."""
    if shape.k_minus != 1 or (shape.k_plus + 1) % 4 != 0:
        return _inapplicable("power_square")
    k = (shape.k_plus + 1) // 4
    r = k * shape.n % 9
    if r in (5, 8):
        return _ruled_out("power_square", k=k, kn_mod_9=r)
    return _inconclusive("power_square", k=k, kn_mod_9=r)


def check_power_cube(shape: QuasiCrossShape) -> CriterionOutcome:
    """Cubing character for arms (4k + 2, 1), k >= 1: the cube-sum identity
    makes 2 a zero divisor on one side only when n = 3 or 7 (mod 8)."""
    if shape.k_minus != 1 or shape.k_plus < 6 or (shape.k_plus - 2) % 4 != 0:
        return _inapplicable("power_cube")
    r = shape.n % 8
    if r in (3, 7):
        return _ruled_out("power_cube", n_mod_8=r)
    return _inconclusive("power_cube", n_mod_8=r)


def check_vandermonde(shape: QuasiCrossShape) -> CriterionOutcome:
    """Power-sum test for prime q: a splitting forces sum(m**i for m in M)
    to vanish mod q for some 1 <= i <= n, else the all-ones vector would be
    a kernel vector of an invertible Vandermonde matrix built from S.  All n
    power sums nonzero therefore rules the shape out."""
    q = shape.group_order
    if shape.n >= q - 1 or not is_prime(q):
        return _inapplicable("vandermonde")
    residues = multiplier_set(shape).residues
    powers = list(residues)
    for i in range(1, shape.n + 1):
        if i > 1:
            powers = [p * r % q for p, r in zip(powers, residues)]
        if sum(powers) % q == 0:
            return _inconclusive("vandermonde", first_zero_power=i)
    return _ruled_out("vandermonde", q=q, powers_checked=shape.n)


def check_psquare(shape: QuasiCrossShape) -> CriterionOutcome:
    """Zero-divisor accounting for a prime p with p <= k_plus < p**2 and
    p**2 | q: the p-torsion coset must be covered by multiplier multiples of
    p, which pins n*((k_plus mod p) + (k_minus mod p)) = p - 1; any other n
    is ruled out."""
    q = shape.group_order
    exempt = None
    for p in primes_upto(shape.k_plus):
        if p * p > shape.k_plus and q % (p * p) == 0:
            if shape.n * ((shape.k_plus % p) + (shape.k_minus % p)) != p - 1:
                return _ruled_out("psquare", p=p)
            exempt = p
    if exempt is None:
        return _inapplicable("psquare")
    return _inconclusive("psquare", p=exempt)


def check_divisors(
    shape: QuasiCrossShape, verdict_oracle: Mapping[int, VerdictStatus]
) -> CriterionOutcome:
    """Divisor recursion.  A splitting of Z_q together with d | q,
    gcd(d, k_plus#) = 1, collapses to a splitting of Z_(q/d) in dimension
    n' = (q - d) / ((k_plus + k_minus) * d).  So for every such proper
    divisor d, either that quotient fails to be a positive integer (which
    refutes dimension n outright) or dimension n' must not already be ruled
    out.  Divisors larger than n always fail the divisibility, so this loop
    subsumes the zero-divisor unique-representation bounds as special cases;
    prime-power divisors of q make it propagate non-existence upward.

    The oracle must hold a verdict for every reachable n' (all satisfy
    n' < n); a missing entry is a hard error, never a silent pass.
    """
    q = shape.group_order
    prim = primorial(shape.k_plus)
    step = shape.arm_sum
    for d in factorize(q).divisors():
        if d == 1 or d == q or gcd(d, prim) != 1:
            continue
        if (q - d) % (step * d) != 0:
            return _ruled_out("divisors", d=d)
        n_prime = (q - d) // (step * d)
        if n_prime not in verdict_oracle:
            raise LookupError(
                f"divisor recursion at n={shape.n} reached n'={n_prime} (d={d}) "
                "with no verdict available"
            )
        if verdict_oracle[n_prime] is VerdictStatus.NO_TILING:
            return _ruled_out("divisors", d=d, n_prime=n_prime)
    return _inconclusive("divisors")


# Reporting order: cheapest and most explainable first.  The order only
# affects which criterion gets the first-fired attribution, never whether a
# dimension is ruled out.
SHAPE_CRITERIA: tuple[tuple[str, object], ...] = (
    ("geometry", check_geometry),
    ("arm_gcd", check_arm_gcd),
    ("quadratic_balance", check_quadratic_balance),
    ("char4_literal", check_char4_literal),
    ("quartic_generic", check_quartic_generic),
    ("odd_prime_order", check_odd_prime_order),
    ("power_square", check_power_square),
    ("power_cube", check_power_cube),
    ("vandermonde", check_vandermonde),
    ("psquare", check_psquare),
)

CRITERION_ORDER: tuple[str, ...] = tuple(cid for cid, _ in SHAPE_CRITERIA) + ("divisors",)


def evaluate_all(
    shape: QuasiCrossShape, verdict_oracle: Mapping[int, VerdictStatus]
) -> tuple[CriterionOutcome, ...]:
    """Run every criterion on a shape, in reporting order."""
    outs = [fn(shape) for _, fn in SHAPE_CRITERIA]
    outs.append(check_divisors(shape, verdict_oracle))
    return tuple(outs)
