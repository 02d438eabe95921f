"""Deterministic 64-bit primality and the 2^n - (2^i + 1) prime scan."""

U64_LIMIT = 1 << 64

# Jim Sinclair's set; deterministic for every m < 2^64.
MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

MIN_WIDTH = 3
MAX_WIDTH = 64


def is_prime_u64(m: int) -> bool:
    """Exact primality for 0 <= m < 2^64 via deterministic Miller-Rabin."""
    if not 0 <= m < U64_LIMIT:
        raise ValueError(f"{m} outside the unsigned 64-bit range")
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for q in _SMALL_PRIMES:
        if m % q == 0:
            return m == q
    if m < 47 * 47:
        return True

    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for base in MR_WITNESSES:
        a = base % m
        if a == 0:
            continue
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def offset_for(i: int) -> int:
    return (1 << i) + 1


def candidate_range(n: int) -> range:
    # 2^i + 1 < 2^(n-1)  <=>  i <= n - 2
    return range(0, n - 1)


def search_pseudo_mersenne(n: int) -> list[int]:
    """Return every i, ascending, for which 2^n - (2^i + 1) is prime.

    Only offsets with 2^i + 1 < 2^(n-1) are scanned.  For n = 64 the composed
    value 2^64 - a is still below 2^64, so the 64-bit test applies directly.
    """
    if not MIN_WIDTH <= n <= MAX_WIDTH:
        raise ValueError(f"bit width {n} not in [{MIN_WIDTH}, {MAX_WIDTH}]")
    return [i for i in candidate_range(n) if is_prime_u64((1 << n) - offset_for(i))]
