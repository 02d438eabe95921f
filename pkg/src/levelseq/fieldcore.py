"""Arithmetic in F_p with generic, Mersenne and pseudo-Mersenne reduction.

Field elements are plain ``int`` residues in ``[0, p)``; every operation takes
the ``PrimeDesc`` that gives them meaning.  Operands are assumed canonical.
Use :func:`element` to validate untrusted input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Optional

from .primesearch import U64_LIMIT, is_prime_u64


@dataclass(frozen=True)
class PrimeDesc:
    """An odd prime together with its 2-adic digits.

    ``digits[j]`` is bit ``j`` of ``p`` and ``k`` is the top bit index, so
    ``2**k <= p < 2**(k + 1)``.  ``i0`` is the lowest zero digit, or ``None``
    when ``p`` is a Mersenne prime ``2**(k + 1) - 1``.
    """

    p: int
    k: int = field(init=False)
    digits: tuple[int, ...] = field(init=False, repr=False)
    i0: Optional[int] = field(init=False)

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError("p must be an int")
        if p < 3 or p >= U64_LIMIT or p % 2 == 0 or not is_prime_u64(p):
            raise ValueError(f"{p} is not an odd prime below 2^64")
        k = p.bit_length() - 1
        digits = tuple((p >> j) & 1 for j in range(k + 1))
        i0 = next((j for j, bit in enumerate(digits) if bit == 0), None)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "i0", i0)

    @property
    def is_mersenne(self) -> bool:
        return self.i0 is None

    @property
    def width(self) -> int:
        """Number of bits in a residue, ``k + 1``."""
        return self.k + 1


@dataclass(frozen=True)
class PseudoMersenneDesc:
    """A prime of the form ``2**n - a`` with ``0 < a < 2**(n - 1)``."""

    n: int
    a: int
    prime: PrimeDesc = field(init=False, repr=False)

    def __post_init__(self):
        if not 2 <= self.n <= 64:
            raise ValueError(f"bit width {self.n} not in [2, 64]")
        if not 0 < self.a < (1 << (self.n - 1)):
            raise ValueError(f"offset {self.a} not in (0, 2^{self.n - 1})")
        object.__setattr__(self, "prime", PrimeDesc((1 << self.n) - self.a))

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def two_fold(self) -> bool:
        """Whether two folds plus two subtractions always reduce a full product."""
        return self.a * self.a + 3 * self.a < (1 << (self.n + 1))

    @classmethod
    def from_prime(cls, pd: PrimeDesc) -> "PseudoMersenneDesc":
        n = pd.k + 1
        return cls(n, (1 << n) - pd.p)


def element(pd: PrimeDesc, value: int) -> int:
    """Validate ``value`` as a canonical residue of ``pd``."""
    if not 0 <= value < pd.p:
        raise ValueError(f"{value} is not a residue in [0, {pd.p})")
    return value


def fe_add(pd: PrimeDesc, x: int, y: int) -> int:
    s = x + y
    return s - pd.p if s >= pd.p else s


def fe_sub(pd: PrimeDesc, x: int, y: int) -> int:
    return x - y if x >= y else x - y + pd.p


def fe_neg(pd: PrimeDesc, x: int) -> int:
    return 0 if x == 0 else pd.p - x


def fe_mul(pd: PrimeDesc, x: int, y: int) -> int:
    return (x * y) % pd.p


def fe_pow(pd: PrimeDesc, x: int, e: int) -> int:
    return pow(x, e, pd.p)


def fe_inv(pd: PrimeDesc, x: int) -> int:
    if x == 0:
        raise ZeroDivisionError("0 has no inverse")
    return pow(x, -1, pd.p)


def reduce_pseudo_mersenne(pm: PseudoMersenneDesc, x: int) -> int:
    """Reduce ``0 <= x < p**2`` modulo ``p = 2**n - a`` by folding.

    Each fold rewrites ``x = hi * 2**n + lo`` as ``hi * a + lo``.  Starting
    below ``2**(2n)``, one fold gives ``hi <= a`` and a second gives
    ``x <= a**2 + 2**n - 1``, which is below ``3p`` whenever
    ``a**2 + 3a < 2**(n+1)``; two conditional subtractions then finish.  Larger
    offsets (up to ``2**(n-1)``) keep folding until ``x < 2**n < 2p``; the high
    part still shrinks every round because ``a < 2**(n-1)``.
    """
    n, a, mask = pm.n, pm.a, pm.mask
    p = (1 << n) - a
    if pm.two_fold:
        x = (x >> n) * a + (x & mask)
        x = (x >> n) * a + (x & mask)
        if x >= p:
            x -= p
            if x >= p:
                x -= p
        return x
    hi = x >> n
    while hi:
        x = hi * a + (x & mask)
        hi = x >> n
    return x - p if x >= p else x


def pm_add(pm: PseudoMersenneDesc, x: int, y: int) -> int:
    # x + y < 2^(n+1): one fold leaves hi*a + lo < 2^n + a, then subtract once
    s = x + y
    s = (s >> pm.n) * pm.a + (s & pm.mask)
    p = pm.p
    return s - p if s >= p else s


def pm_mul(pm: PseudoMersenneDesc, x: int, y: int) -> int:
    return reduce_pseudo_mersenne(pm, x * y)


def _require_mersenne(pd: PrimeDesc) -> None:
    if not pd.is_mersenne:
        raise ValueError(f"{pd.p} is not a Mersenne prime")


def mersenne_add(pd: PrimeDesc, x: int, y: int) -> int:
    """Add modulo ``2**(k+1) - 1`` by splitting ``x + y = c * 2**(k+1) + d``.

    ``c + d`` is congruent to ``x + y``; it equals ``p`` exactly when
    ``x + y == p`` (e.g. ``3 + 4`` modulo 7), which is folded to 0.
    """
    _require_mersenne(pd)
    s = x + y
    r = (s >> pd.width) + (s & pd.p)
    return 0 if r == pd.p else r


def mersenne_mul_pow2(pd: PrimeDesc, x: int, s: int) -> int:
    """Multiply by ``2**s`` modulo a Mersenne prime as a bit rotation.

    With ``x = hi * 2**(w-s) + lo`` over ``w = k + 1`` bits,
    ``2**s * x = hi * 2**w + lo * 2**s`` and ``2**w`` is 1 mod p, so the
    product is ``lo * 2**s + hi``: a left rotation by ``s``.
    """
    _require_mersenne(pd)
    if not 0 <= s <= pd.k:
        raise ValueError(f"shift {s} not in [0, {pd.k}]")
    w = pd.width
    r = ((x << s) & pd.p) | (x >> (w - s))
    # the all-ones word is p itself
    return 0 if r == pd.p else r


def mersenne_mul(pd: PrimeDesc, x: int, y: int) -> int:
    _require_mersenne(pd)
    xy = x * y
    r = (xy >> pd.width) + (xy & pd.p)
    r = (r >> pd.width) + (r & pd.p)
    return 0 if r == pd.p else r


def pseudo_mersenne_form(pd: PrimeDesc, max_weight: int = 2) -> Optional[PseudoMersenneDesc]:
    """Return the ``2**n - a`` form of ``pd`` when ``a`` is sparse.

    Folding only pays off when ``a`` has few set bits; ``max_weight`` bounds
    the popcount of ``a``.  Mersenne primes come back with ``a = 1``.
    """
    pm = PseudoMersenneDesc.from_prime(pd)
    if bin(pm.a).count("1") > max_weight:
        return None
    return pm


class FieldOps:
    """Add/mul pair bound to one prime, choosing the fastest available path."""

    def __init__(self, pd: PrimeDesc, fast: bool = True):
        self.pd = pd
        self.pm = pseudo_mersenne_form(pd) if fast else None
        if self.pm is None:
            self.add, self.mul = partial(fe_add, pd), partial(fe_mul, pd)
            self.kind = "generic"
        elif pd.is_mersenne:
            self.add, self.mul = partial(mersenne_add, pd), partial(mersenne_mul, pd)
            self.kind = "mersenne"
        else:
            self.add, self.mul = partial(pm_add, self.pm), partial(pm_mul, self.pm)
            self.kind = "pseudo-mersenne"

    def __repr__(self):
        return f"FieldOps(p={self.pd.p}, kind={self.kind!r})"
