"""2-adic level sequences: bit ``i`` of every term of a residue sequence.

Bit buffers are ``bytes`` with one 0/1 value per term.  Two file encodings
exist: *packed* (bit t at byte t // 8, position t % 8, LSB first, zero padded)
and *ascii* ('0'/'1' characters, a newline after every 64 bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .fieldcore import PrimeDesc
from .lfsr import MSeq

ASCII_LINE_BITS = 64


@dataclass(frozen=True)
class LevelSeq:
    level: int
    bits: bytes
    p: int
    poly: Optional[str] = None

    def __len__(self):
        return len(self.bits)

    def packed(self) -> bytes:
        return pack_bits(self.bits)

    def ascii(self) -> str:
        return format_ascii(self.bits)


def _check_level(pd: PrimeDesc, i: int) -> None:
    if not 0 <= i <= pd.k:
        raise ValueError(f"level {i} not in [0, {pd.k}] for p = {pd.p}")


def bit_level(pd: PrimeDesc, a: int, i: int) -> int:
    """B_i(a): bit ``i`` of the residue ``a``."""
    _check_level(pd, i)
    return (a >> i) & 1


def bit_level_interval(pd: PrimeDesc, a: int, i: int) -> int:
    """B_i(a) via its interval form: 0 iff ``a mod 2**(i+1) < 2**i``."""
    _check_level(pd, i)
    return 0 if a % (1 << (i + 1)) < (1 << i) else 1


def compute_i0(pd: PrimeDesc) -> Optional[int]:
    """Smallest ``i`` with ``p_i = 0``; ``None`` for Mersenne primes."""
    for i, bit in enumerate(pd.digits):
        if bit == 0:
            return i
    return None


def level_bits(terms: Iterable[int], i: int) -> bytes:
    return bytes((a >> i) & 1 for a in terms)


def extract_level(s: MSeq, i: int) -> LevelSeq:
    _check_level(s.pd, i)
    return LevelSeq(i, level_bits(s.terms, i), s.pd.p, s.poly.spec())


def expand_levels(s: MSeq) -> list[LevelSeq]:
    return [extract_level(s, i) for i in range(s.pd.k + 1)]


def recompose(levels: Sequence[LevelSeq]) -> tuple[int, ...]:
    """Weighted sum of level buffers: ``sum_i bits_i(t) * 2**i``."""
    if not levels:
        return ()
    length = len(levels[0])
    if any(len(lv) != length for lv in levels):
        raise ValueError("level buffers differ in length")
    out = [0] * length
    for lv in levels:
        w = 1 << lv.level
        for t, b in enumerate(lv.bits):
            if b:
                out[t] += w
    return tuple(out)


# ---------------------------------------------------------------- encodings

def pack_bits(bits: Sequence[int]) -> bytes:
    out = bytearray((len(bits) + 7) // 8)
    for t, b in enumerate(bits):
        if b:
            out[t >> 3] |= 1 << (t & 7)
    return bytes(out)


def unpack_bits(data: bytes, length: int) -> bytes:
    if length > 8 * len(data):
        raise ValueError(f"{len(data)} bytes cannot hold {length} bits")
    return bytes((data[t >> 3] >> (t & 7)) & 1 for t in range(length))


def format_ascii(bits: Sequence[int]) -> str:
    chars = "".join("1" if b else "0" for b in bits)
    lines = [chars[j:j + ASCII_LINE_BITS] for j in range(0, len(chars), ASCII_LINE_BITS)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_ascii(text: str) -> bytes:
    bits = [c for c in text if not c.isspace()]
    if any(c not in "01" for c in bits):
        raise ValueError("ascii bitstream may only contain '0', '1' and whitespace")
    return bytes(c == "1" for c in bits)

