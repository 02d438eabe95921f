"""Characteristic polynomials over F_p, primitivity and m-sequence generation.

Recurrence convention: coefficients ``(c_0, ..., c_{n-1})`` define

    a(t + n) = c_{n-1} a(t + n - 1) + ... + c_0 a(t)  (mod p)

i.e. the monic characteristic polynomial ``x^n - c_{n-1} x^{n-1} - ... - c_0``.
"""

from __future__ import annotations

import functools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .fieldcore import FieldOps, PrimeDesc, element, fe_mul
from .primesearch import is_prime_u64

TRIAL_LIMIT = 10**6
ORDER_LIMIT = 1 << 63


class UnsupportedSize(ValueError):
    """Raised when p^n - 1 leaves the range where exact order checks run."""


# ---------------------------------------------------------------- factoring

def _pollard_brent(m: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``m``."""
    while True:
        y, c, step = rng.randrange(1, m), rng.randrange(1, m), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % m
            j = 0
            while j < r and g == 1:
                ys = y
                for _ in range(min(step, r - j)):
                    y = (y * y + c) % m
                    q = q * abs(x - y) % m
                g = math.gcd(q, m)
                j += step
            r *= 2
        if g == m:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % m
                g = math.gcd(abs(x - ys), m)
        if g != m:
            return g


@functools.lru_cache(maxsize=4096)
def factor_u64(m: int) -> tuple[int, ...]:
    """Prime factors of ``2 <= m < 2**63`` with multiplicity, ascending.

    Trial division up to 10^6, then Brent's variant of Pollard rho on the
    remaining cofactor.
    """
    if not 2 <= m < ORDER_LIMIT:
        raise ValueError(f"{m} not in [2, 2^63)")
    factors = []
    while m % 2 == 0:
        factors.append(2)
        m //= 2
    d = 3
    while d * d <= m and d < TRIAL_LIMIT:
        while m % d == 0:
            factors.append(d)
            m //= d
        d += 2
    if m == 1:
        return tuple(factors)

    rng = random.Random(m)
    stack = [m]
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime_u64(v):
            factors.append(v)
            continue
        g = _pollard_brent(v, rng)
        stack.extend((g, v // g))
    return tuple(sorted(factors))


# ---------------------------------------------------------------- polynomials

@dataclass(frozen=True)
class CharPoly:
    pd: PrimeDesc
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("degree must be at least 1")
        object.__setattr__(self, "coeffs", tuple(element(self.pd, c) for c in self.coeffs))

    @property
    def p(self) -> int:
        return self.pd.p

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def period(self) -> int:
        """``p**n - 1``, the period of an m-sequence for this polynomial."""
        return self.p**self.n - 1

    @classmethod
    def parse(cls, spec: str) -> "CharPoly":
        """Parse ``p:n:c0,c1,...,c_{n-1}`` (decimal)."""
        try:
            p_s, n_s, c_s = spec.split(":")
            p, n = int(p_s), int(n_s)
            coeffs = tuple(int(c) for c in c_s.split(","))
        except ValueError:
            raise ValueError(f"malformed polynomial spec {spec!r}; expected p:n:c0,...") from None
        if len(coeffs) != n:
            raise ValueError(f"spec {spec!r} declares degree {n} but gives {len(coeffs)} coefficients")
        return cls(PrimeDesc(p), coeffs)

    def spec(self) -> str:
        return f"{self.p}:{self.n}:" + ",".join(map(str, self.coeffs))

    def __str__(self):
        return self.spec()


def _polymulmod(f: CharPoly, u: list[int], v: list[int]) -> list[int]:
    """Product of two residues of F_p[x]/(f), each a list of n coefficients."""
    p, n, c = f.p, f.n, f.coeffs
    prod = [0] * (2 * n - 1)
    for i, ui in enumerate(u):
        if ui:
            for j, vj in enumerate(v):
                prod[i + j] += ui * vj
    # x^n = sum c_j x^j; fold top terms down
    for d in range(2 * n - 2, n - 1, -1):
        top = prod[d] % p
        if top:
            base = d - n
            for j in range(n):
                prod[base + j] += top * c[j]
    return [t % p for t in prod[:n]]


def x_power(f: CharPoly, e: int) -> list[int]:
    """``x**e`` reduced modulo ``f``, as coefficients of ``1, x, ..., x^{n-1}``."""
    n = f.n
    result = [1] + [0] * (n - 1)
    if n == 1:
        return [pow(f.coeffs[0], e, f.p)]
    base = [0, 1] + [0] * (n - 2)
    while e:
        if e & 1:
            result = _polymulmod(f, result, base)
        base = _polymulmod(f, base, base)
        e >>= 1
    return result


def is_primitive(f: CharPoly) -> bool:
    """True iff ``x`` has multiplicative order ``p**n - 1`` modulo ``f``.

    An element of that order exists only if F_p[x]/(f) is a field, so this
    also establishes irreducibility.
    """
    T = f.period
    if T >= ORDER_LIMIT:
        raise UnsupportedSize(f"p^n - 1 = {T} is not below 2^63")
    if f.coeffs[0] == 0:
        return False
    one = [1] + [0] * (f.n - 1)
    if x_power(f, T) != one:
        return False
    return all(x_power(f, T // q) != one for q in set(factor_u64(T))) if T > 1 else True


# ---------------------------------------------------------------- sequences

@dataclass(frozen=True)
class MSeq:
    """A materialized prefix ``a(0..L-1)`` of a sequence over F_p.

    ``T`` is the full period ``p**n - 1`` when ``poly`` is primitive; for
    sequences built without that guarantee it is ``None``.
    """

    poly: CharPoly
    terms: tuple[int, ...]
    T: Optional[int] = field(default=None)

    @property
    def pd(self) -> PrimeDesc:
        return self.poly.pd

    def __len__(self):
        return len(self.terms)

    def has_full_period(self) -> bool:
        return self.T is not None and len(self.terms) >= self.T


def impulse_state(n: int) -> tuple[int, ...]:
    return (0,) * (n - 1) + (1,)


def iter_lfsr(f: CharPoly, init: Sequence[int], fast: bool = True) -> Iterator[int]:
    """Yield the terms of the recurrence forever, starting with ``init``."""
    ops = FieldOps(f.pd, fast=fast)
    add, mul = ops.add, ops.mul
    c = f.coeffs
    n = f.n
    state = [element(f.pd, s) for s in init]
    if len(state) != n:
        raise ValueError(f"initial state must have {n} entries")
    taps = [(j, cj) for j, cj in enumerate(c) if cj]
    while True:
        yield state[0]
        nxt = 0
        for j, cj in taps:
            nxt = add(nxt, mul(cj, state[j]))
        state.pop(0)
        state.append(nxt)


def mseq_generate(
    f: CharPoly,
    init: Optional[Sequence[int]] = None,
    length: Optional[int] = None,
    require_primitive: bool = True,
) -> MSeq:
    """Materialize ``length`` terms of the sequence with initial state ``init``.

    ``init`` defaults to the impulse state ``(0, ..., 0, 1)`` and ``length``
    to one full period.
    """
    init = impulse_state(f.n) if init is None else tuple(init)
    if len(init) != f.n:
        raise ValueError(f"initial state must have {f.n} entries, got {len(init)}")
    if not any(init):
        raise ValueError("initial state is all zero")
    primitive = is_primitive(f) if (require_primitive or length is None) else False
    if require_primitive and not primitive:
        raise ValueError(f"polynomial {f} is not primitive")
    T = f.period if primitive else None
    if length is None:
        if T is None:
            raise ValueError("length is required for a non-primitive polynomial")
        length = T
    if length < 1:
        raise ValueError("length must be at least 1")
    it = iter_lfsr(f, init)
    return MSeq(f, tuple(next(it) for _ in range(length)), T)


def _period_of(s: MSeq) -> int:
    if s.T is None:
        raise ValueError("sequence has no known full period")
    if len(s.terms) < s.T:
        raise ValueError("sequence buffer holds less than one period")
    return s.T


def mseq_shift(s: MSeq, tau: int) -> MSeq:
    """Return ``b(t) = a(t + tau)`` over one period; ``tau`` may equal ``T``."""
    T = _period_of(s)
    if not 0 <= tau <= T:
        raise ValueError(f"shift {tau} not in [0, {T}]")
    tau %= T
    period = s.terms[:T]
    return MSeq(s.poly, period[tau:] + period[:tau], T)


def seq_scale(s: MSeq, lam: int) -> MSeq:
    """Termwise ``lam * a(t) mod p``; the result obeys the same recurrence."""
    pd = s.pd
    element(pd, lam)
    if lam == 0:
        raise ValueError("scaling by 0 does not give an m-sequence")
    return MSeq(s.poly, tuple(fe_mul(pd, lam, a) for a in s.terms), s.T)


def _divisors(T: int) -> list[int]:
    primes = Counter(factor_u64(T)) if T > 1 else Counter()
    divs = [1]
    for q, e in primes.items():
        divs = [d * q**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def seq_period(terms: Sequence, T: int) -> int:
    """Least divisor ``d`` of ``T`` under whose rotation the buffer is fixed.

    ``terms`` must hold exactly one full period of length ``T``; tuples,
    lists and ``bytes`` all work.
    """
    if len(terms) == 0:
        raise ValueError("empty buffer")
    if len(terms) != T:
        raise ValueError(f"buffer length {len(terms)} differs from T = {T}")
    for d in _divisors(T):
        if terms[d:] + terms[:d] == terms:
            return d
    return T  # unreachable: rotation by T is the identity
