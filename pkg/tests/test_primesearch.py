import pytest
import sympy

from levelseq.primesearch import candidate_range, is_prime_u64, offset_for, search_pseudo_mersenne


def _sieve(limit):
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for q in range(2, int(limit**0.5) + 1):
        if flags[q]:
            flags[q * q::q] = bytearray(len(range(q * q, limit, q)))
    return flags


def test_examples():
    assert is_prime_u64(7)
    assert is_prime_u64(2**31 - 1)
    assert is_prime_u64(2**32 - 5)
    assert not is_prime_u64(2**32 - 9)
    assert not is_prime_u64(0) and not is_prime_u64(1) and is_prime_u64(2)


def test_agrees_with_sieve_below_million():
    flags = _sieve(10**6)
    assert [m for m in range(10**6) if is_prime_u64(m)] == [m for m in range(10**6) if flags[m]]


@pytest.mark.parametrize("m", [
    3215031751,              # strong pseudoprime to bases 2, 3, 5, 7
    2152302898747,           # ... bases 2..11
    3474749660383,           # ... bases 2..13
    341550071728321,         # ... bases 2..17
    3825123056546413051,     # ... bases 2..23
    (2**32 + 15) * (2**31 - 1),
    18446744073709551557,    # largest prime below 2^64
    18446744073709551615,
])
def test_hard_cases_match_sympy(m):
    assert is_prime_u64(m) == sympy.isprime(m)


def test_range_checked():
    with pytest.raises(ValueError):
        is_prime_u64(1 << 64)
    with pytest.raises(ValueError):
        is_prime_u64(-1)


def test_paper_lists():
    assert search_pseudo_mersenne(32) == [2, 4, 6, 23, 24, 25, 29]
    assert search_pseudo_mersenne(64) == [8, 10, 29]


@pytest.mark.parametrize("n", [8, 16, 32, 48, 64])
def test_search_matches_sympy(n):
    expected = [i for i in range(n - 1) if sympy.isprime(2**n - 2**i - 1)]
    assert search_pseudo_mersenne(n) == expected


def test_scan_bound():
    for n in (8, 32, 64):
        assert max(candidate_range(n)) == n - 2
        assert offset_for(n - 2) < 2 ** (n - 1) <= offset_for(n - 1)


def test_small_width():
    assert search_pseudo_mersenne(7) == []
    with pytest.raises(ValueError):
        search_pseudo_mersenne(65)
