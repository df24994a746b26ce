"""Kronecker symbols, quadratic characters and modular-form bookkeeping.

Weights are kept as exact :class:`~fractions.Fraction` values. The
dimension estimate only reproduces the crude lower bound used to compare
the size of a weight 3/2 space with the number of theta series it holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod

from sympy import factorint

from .errors import Unsupported


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol for odd ``n > 0``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, b: int) -> int:
    """The Kronecker symbol ``(a/b)`` for arbitrary integers.

    Note ``(a/0)`` is 1 only for ``a == 1``; with ``(-1/0) = 0`` the symbol
    stays multiplicative in ``b``.
    """
    if b == 0:
        return int(a == 1)
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -1
    v = 0
    while b % 2 == 0:
        b //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    return result * jacobi(a, b)


def squarefree_part(d: int) -> int:
    """The squarefree ``d_f`` (sign included) with ``d = d_f * s^2``."""
    if d == 0:
        raise ValueError("squarefree part of 0")
    sign = -1 if d < 0 else 1
    return sign * prod(p for p, e in factorint(abs(d)).items() if e % 2)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorint(abs(n)).values())


def fundamental_D(d: int) -> int:
    df = squarefree_part(d)
    return df if df % 4 == 1 else 4 * df


def is_fundamental(d: int) -> bool:
    """Is ``d`` the discriminant of a quadratic field (or 1)?"""
    return d != 0 and fundamental_D(d) == d


def chi(d: int, n: int) -> int:
    return kronecker(fundamental_D(d), n)


@dataclass(frozen=True)
class CharacterSpec:
    D: int

    @property
    def conductor(self) -> int:
        return abs(self.D)

    def __call__(self, n: int) -> int:
        return kronecker(self.D, n)


def character(d: int) -> CharacterSpec:
    return CharacterSpec(fundamental_D(d))


@dataclass(frozen=True)
class ThetaMetadata:
    degree: int
    field_disc: int
    weight: Fraction
    level: int
    character_disc: int


def theta_metadata(n: int, d: int) -> ThetaMetadata:
    """Weight, level and character of the theta series of a degree ``n`` field of discriminant ``d``."""
    if not 2 <= n <= 7 or d <= 0:
        raise Unsupported(f"need 2 <= n <= 7 and d > 0, got n={n}, d={d}")
    if n % 2:
        char = (-1) ** ((n - 1) // 2) * n * d
    else:
        char = n * d // 2
    return ThetaMetadata(n, d, Fraction(n - 1, 2), 2 * n * d, char)


def count_solutions_x2_plus_1(N: int) -> int:
    """Number of residues x mod N with x^2 + 1 = 0 (mod N), for squarefree N."""
    if N < 1:
        raise Unsupported("modulus must be positive")
    count = 1
    for p, e in factorint(N).items():
        if e > 1:
            raise Unsupported(f"modulus {N} is not squarefree")
        if p == 2:
            continue
        count *= 2 if p % 4 == 1 else 0
    return count


def lambda_p(r: int, s: int, p: int) -> int:
    if r < 1 or not 0 <= s <= r:
        raise Unsupported(f"lambda needs r >= 1 and 0 <= s <= r, got r={r}, s={s}")
    if 2 * s > r:
        return 2 * p ** (r - s)
    half = r // 2
    if r % 2 == 0:
        return p ** half + p ** (half - 1)
    return 2 * p ** half


@dataclass(frozen=True)
class DimBound:
    d: int
    N: int
    mode: str
    main_term: Fraction
    lambda_product: int
    sol_count: int
    lower_bound: Fraction

    @property
    def heuristic(self) -> bool:
        return self.mode == "exact"


def _ceil_sqrt(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def dim_lower_bound(d: int, mode: str = "paper") -> DimBound:
    """Lower bound for the dimension of the weight 3/2 space at level 8d.

    ``mode="paper"`` subtracts ``2*ceil(sqrt(2d)) + 1`` from the main term,
    bounding both correction sums by ``sqrt(2d)``. ``mode="exact"`` uses the
    actual lambda product and solution count instead; the unspecified sign
    of the elliptic term makes it a heuristic.
    """
    if mode not in ("paper", "exact"):
        raise Unsupported(f"unknown mode {mode!r}")
    if d <= 1 or d % 2 == 0 or not is_squarefree(d):
        raise Unsupported(f"need an odd squarefree d > 1, got {d}")
    N = 2 * d
    primes = sorted(factorint(N))
    main = Fraction(N, 12)
    for p in primes:
        main *= 1 + Fraction(1, p)
    lam = prod(lambda_p(1, 1, p) for p in primes)
    sols = count_solutions_x2_plus_1(N)
    if mode == "paper":
        lower = main - 2 * _ceil_sqrt(N) - 1
    else:
        lower = main - Fraction(lam, 2) - sols - 1
    return DimBound(d, N, mode, main, lam, sols, lower)


def quartic_count_curve(d: int) -> float:
    """Reference growth curve ``d^0.62`` for the number of quartic fields of discriminant ``d``."""
    return float(d) ** 0.62
