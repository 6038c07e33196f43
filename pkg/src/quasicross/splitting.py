"""Core data model: quasi-cross shapes, multiplier and splitter sets,
splitting verification, and integer bases for the lattice a verified
splitting induces.

A splitting of Z_q pairs the multiplier set M (here the interval
-k_minus..k_plus with 0 removed, reduced mod q) with a splitter set S such
that the products m*s sweep every nonzero residue exactly once.  Such a
splitting with |S| = n is equivalent to a lattice tiling of R^n by the
(k_plus, k_minus, n)-quasi-cross, the lattice being the kernel of
phi(x_1..x_n) = sum x_i s_i mod q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "LatticeBasis",
    "MultiplierSet",
    "QuasiCrossShape",
    "Splitting",
    "VerificationResult",
    "from_json_line",
    "interval_multipliers",
    "lattice_basis",
    "multiplier_set",
    "phi_kernel_basis",
    "to_json_line",
    "verify_cover",
    "verify_splitting",
]


@dataclass(frozen=True)
class QuasiCrossShape:
    """Arm lengths (k_plus forward, k_minus backward along each axis) and
    dimension n.  The cyclic group split by a lattice tiling has order
    q = n*(k_plus + k_minus) + 1."""

    k_plus: int
    k_minus: int
    n: int

    def __post_init__(self):
        if self.k_minus < 1 or self.k_plus < self.k_minus:
            raise ValueError(
                f"arms must satisfy 1 <= k_minus <= k_plus, got ({self.k_plus}, {self.k_minus})"
            )
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    @property
    def arm_sum(self) -> int:
        return self.k_plus + self.k_minus

    @property
    def group_order(self) -> int:
        return self.n * self.arm_sum + 1


@dataclass(frozen=True)
class MultiplierSet:
    """Distinct nonzero residues mod q acting as multipliers."""

    q: int
    residues: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"group order must be >= 2, got {self.q}")
        seen = set()
        for r in self.residues:
            if not 1 <= r <= self.q - 1:
                raise ValueError(f"multiplier residue {r} outside [1, {self.q - 1}]")
            if r in seen:
                raise ValueError(f"duplicate multiplier residue {r}")
            seen.add(r)

    def __len__(self) -> int:
        return len(self.residues)


def interval_multipliers(k_plus: int, k_minus: int, q: int) -> MultiplierSet:
    """Residues of -k_minus..-1, 1..k_plus reduced mod q, in that order."""
    if k_minus < 1 or k_plus < k_minus:
        raise ValueError(
            f"arms must satisfy 1 <= k_minus <= k_plus, got ({k_plus}, {k_minus})"
        )
    if q <= k_plus + k_minus:
        raise ValueError(f"q={q} leaves interval multipliers indistinct")
    res = [q + m for m in range(-k_minus, 0)] + list(range(1, k_plus + 1))
    return MultiplierSet(q, tuple(res))


def multiplier_set(shape: QuasiCrossShape) -> MultiplierSet:
    """Interval multiplier set of a shape over its group order."""
    return interval_multipliers(shape.k_plus, shape.k_minus, shape.group_order)


@dataclass(frozen=True)
class Splitting:
    """Splitter-set certificate for the interval multiplier set of a
    (k_plus, k_minus) quasi-cross over Z_q.

    Construction enforces structure only (splitters distinct, in range);
    whether the products actually cover Z_q minus 0 is decided by
    verify_splitting.  Splitters are stored sorted, the canonical form used
    for certificate deduplication.
    """

    q: int
    k_plus: int
    k_minus: int
    splitters: tuple[int, ...]

    def __post_init__(self):
        if self.k_minus < 1 or self.k_plus < self.k_minus:
            raise ValueError(
                f"arms must satisfy 1 <= k_minus <= k_plus, got ({self.k_plus}, {self.k_minus})"
            )
        if self.q <= self.k_plus + self.k_minus:
            raise ValueError(f"q={self.q} too small for arms ({self.k_plus}, {self.k_minus})")
        ordered = tuple(sorted(self.splitters))
        seen = set()
        for s in ordered:
            if not 1 <= s <= self.q - 1:
                raise ValueError(f"splitter {s} outside [1, {self.q - 1}]")
            if s in seen:
                raise ValueError(f"duplicate splitter {s}")
            seen.add(s)
        object.__setattr__(self, "splitters", ordered)

    @property
    def multipliers(self) -> MultiplierSet:
        return interval_multipliers(self.k_plus, self.k_minus, self.q)

    @property
    def dimension(self) -> int:
        return len(self.splitters)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_cover(q: int, multipliers: Sequence[int], splitters: Sequence[int]) -> VerificationResult:
    """Decide whether {m*s mod q} is exactly Z_q minus 0.

    All products must be nonzero and pairwise distinct, and every nonzero
    residue must be hit.  On failure the reason names the first zero
    product, collision, or missed residue.  O(|M|*|S|) with a q-bit bitmap.
    """
    covered = bytearray(q)
    owner: dict[int, tuple[int, int]] = {}
    for s in splitters:
        for m in multipliers:
            p = m * s % q
            if p == 0:
                return VerificationResult(False, f"zero product {m}*{s} = 0 (mod {q})")
            if covered[p]:
                m0, s0 = owner[p]
                return VerificationResult(
                    False, f"collision at {p}: {m0}*{s0} = {m}*{s} (mod {q})"
                )
            covered[p] = 1
            owner[p] = (m, s)
    for e in range(1, q):
        if not covered[e]:
            return VerificationResult(False, f"residue {e} not covered")
    return VerificationResult(True)


def verify_splitting(splitting: Splitting) -> VerificationResult:
    """verify_cover applied to a candidate certificate."""
    return verify_cover(splitting.q, splitting.multipliers.residues, splitting.splitters)


@dataclass(frozen=True)
class LatticeBasis:
    """Row basis in Hermite form (upper triangular, positive diagonal)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def determinant(self) -> int:
        out = 1
        for i, row in enumerate(self.rows):
            out *= row[i]
        return out


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = x*a + y*b."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form of a nonsingular square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    for j in range(n):
        while True:
            if a[j][j] == 0:
                nz = [i for i in range(j + 1, n) if a[i][j] != 0]
                if not nz:
                    raise ValueError("matrix is singular")
                a[j], a[nz[0]] = a[nz[0]], a[j]
            below = [i for i in range(j + 1, n) if a[i][j] != 0]
            if not below:
                break
            for i in below:
                t = a[i][j] // a[j][j]
                if t:
                    a[i] = [x - t * y for x, y in zip(a[i], a[j])]
            rem = [i for i in range(j + 1, n) if a[i][j] != 0]
            if not rem:
                break
            i_min = min(rem, key=lambda i: abs(a[i][j]))
            a[j], a[i_min] = a[i_min], a[j]
        if a[j][j] < 0:
            a[j] = [-x for x in a[j]]
        for i in range(j):
            t = a[i][j] // a[j][j]
            if t:
                a[i] = [x - t * y for x, y in zip(a[i], a[j])]
    return a


def phi_kernel_basis(q: int, splitters: Sequence[int]) -> list[list[int]]:
    """Hermite-form basis of {x in Z^n : sum x_i s_i = 0 (mod q)}.

    Works for any splitter list, splitting or not; only the homomorphism phi
    matters.  Column reduction of the row vector (s_1..s_n, q) is tracked on
    an identity block, whose kernel columns project to the basis.
    """
    n = len(splitters)
    if n == 0:
        raise ValueError("need at least one splitter")
    if q < 2:
        raise ValueError(f"group order must be >= 2, got {q}")
    t = [s % q for s in splitters] + [q]
    cols = [[int(i == j) for i in range(n + 1)] for j in range(n + 1)]
    for idx in range(1, n + 1):
        a, b = t[0], t[idx]
        if b == 0:
            continue
        g, x, y = _ext_gcd(a, b)
        c0, ci = cols[0], cols[idx]
        cols[0] = [x * u + y * v for u, v in zip(c0, ci)]
        cols[idx] = [(-(b // g)) * u + (a // g) * v for u, v in zip(c0, ci)]
        t[0], t[idx] = g, 0
    basis = [[cols[idx][i] for i in range(n)] for idx in range(1, n + 1)]
    return _hermite_rows(basis)


def lattice_basis(splitting: Splitting) -> LatticeBasis:
    """Canonical basis of the tiling lattice of a verified splitting.

    Rejects splittings that fail verification.  Postconditions are checked:
    |det| equals q and every row maps to 0 under phi.
    """
    check = verify_splitting(splitting)
    if not check:
        raise ValueError(f"splitting does not verify: {check.reason}")
    rows = phi_kernel_basis(splitting.q, splitting.splitters)
    basis = LatticeBasis(tuple(tuple(r) for r in rows))
    assert abs(basis.determinant) == splitting.q
    for row in basis.rows:
        assert sum(x * s for x, s in zip(row, splitting.splitters)) % splitting.q == 0
    return basis


def to_json_line(splitting: Splitting) -> str:
    """One-line JSON certificate: {"q", "k_plus", "k_minus", "splitters"}."""
    return json.dumps(
        {
            "q": splitting.q,
            "k_plus": splitting.k_plus,
            "k_minus": splitting.k_minus,
            "splitters": list(splitting.splitters),
        }
    )


def from_json_line(line: str) -> Splitting:
    """Parse a certificate line; raises ValueError with context on bad input."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad certificate line: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("certificate line must be a JSON object")
    missing = [k for k in ("q", "k_plus", "k_minus", "splitters") if k not in obj]
    if missing:
        raise ValueError(f"certificate line missing fields: {', '.join(missing)}")
    q, kp, km, spl = obj["q"], obj["k_plus"], obj["k_minus"], obj["splitters"]
    if not all(isinstance(v, int) for v in (q, kp, km)) or not (
        isinstance(spl, list) and all(isinstance(s, int) for s in spl)
    ):
        raise ValueError("certificate fields must be integers and a list of integers")
    return Splitting(q, kp, km, tuple(spl))
