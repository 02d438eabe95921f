"""Brute-force checks of the level-sequence distinctness and period results.

Every check returns a :class:`VerificationReport`.  ``witnesses`` always holds
evidence *against* the claim being checked, so a passing report has none.
Suites run a check over many primes or polynomials and fold the per-item
reports into one summary with :func:`summarize`.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Optional, Sequence

from .fieldcore import PrimeDesc, fe_mul, fe_neg, mersenne_mul_pow2
from .lfsr import CharPoly, MSeq, UnsupportedSize, is_primitive, mseq_generate, mseq_shift, seq_period, seq_scale
from .levels import level_bits
from .primesearch import is_prime_u64

MAX_WITNESSES = 8
DEFAULT_PERIOD_BOUND = 10**5
STAR_EXHAUSTIVE_MAX = (1 << 13) - 1
STAR_SAMPLES = 10**6
STAR_SEED = 0

# (p, n) -> recurrence coefficients c_0..c_{n-1} of a primitive polynomial
DEFAULT_INSTANCES = {
    (5, 1): (2,),
    (5, 2): (3, 1),
    (7, 2): (4, 1),
    (11, 2): (3, 1),
    (13, 2): (11, 1),
    (3, 5): (2, 1, 0, 0, 0),
    (31, 2): (7, 1),
}


def default_polys() -> list[CharPoly]:
    return [CharPoly(PrimeDesc(p), c) for (p, _), c in DEFAULT_INSTANCES.items()]


def odd_primes_below(limit: int) -> list[int]:
    return [q for q in range(3, limit, 2) if is_prime_u64(q)]


@dataclass
class VerificationReport:
    check: str
    p: Any
    n: Optional[int] = None
    params: dict = field(default_factory=dict)
    verdict: bool = False
    witnesses: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.start) * 1e3


def summarize(check: str, reports: Sequence[VerificationReport]) -> dict:
    return {
        "check": check,
        "verdict": "pass" if all(r.verdict for r in reports) else "fail",
        "count": len(reports),
        "failed": [r.p for r in reports if not r.verdict],
        "elapsed_ms": round(sum(r.elapsed_ms for r in reports), 3),
        "reports": [r.to_dict() for r in reports],
    }


def _bit(a: int, i: int) -> int:
    return (a >> i) & 1


# ---------------------------------------------------------------- lemma 1

def negation_fixed_levels(pd: PrimeDesc) -> list[int]:
    """Levels ``i`` where ``B_i(a) == B_i(-a mod p)`` for every residue ``a``."""
    p = pd.p
    return [
        i for i in range(pd.k + 1)
        if all(_bit(a, i) == _bit(fe_neg(pd, a), i) for a in range(p))
    ]


def verify_lemma1(pd: PrimeDesc) -> VerificationReport:
    with _Timer() as tm:
        holds = negation_fixed_levels(pd)
        expected = [] if pd.i0 is None else [pd.i0]
        witnesses = []
        for i in sorted(set(holds) ^ set(expected)):
            witnesses.append({"level": i, "holds": i in holds, "expected": i in expected})
    return VerificationReport(
        "lemma1", pd.p, params={"k": pd.k, "i0": pd.i0, "holds_at": holds},
        verdict=not witnesses, witnesses=witnesses, elapsed_ms=tm.ms,
    )


def lemma1_suite(pmax: int = 1000) -> list[VerificationReport]:
    return [verify_lemma1(PrimeDesc(q)) for q in odd_primes_below(pmax)]


# ---------------------------------------------------------------- lemma 2

def lemma2_witnesses(pd: PrimeDesc, lam: int, i: int, limit: Optional[int] = MAX_WITNESSES) -> list[int]:
    """Residues ``a`` with ``B_i(a) != B_i(lam * a mod p)``, ascending."""
    out = []
    for a in range(pd.p):
        if _bit(a, i) != _bit(fe_mul(pd, lam, a), i):
            out.append(a)
            if limit is not None and len(out) >= limit:
                break
    return out


def verify_lemma2(pd: PrimeDesc, keep_witnesses: bool = False) -> VerificationReport:
    """For every ``1 < lam < p - 1`` and level ``i``, look for a distinguishing ``a``.

    A ``(lam, i)`` pair with no such ``a`` is a counterexample.  With
    ``keep_witnesses`` the first distinguishing residues (at most 8) of each
    pair go into ``params["distinguishing"]``.
    """
    if pd.p < 5:
        raise ValueError("no scaling factor lies strictly between 1 and p - 1 for p = 3")
    with _Timer() as tm:
        failures = []
        found = {}
        limit = MAX_WITNESSES if keep_witnesses else 1
        for lam in range(2, pd.p - 1):
            for i in range(pd.k + 1):
                ws = lemma2_witnesses(pd, lam, i, limit)
                if not ws:
                    failures.append({"lambda": lam, "level": i})
                elif keep_witnesses:
                    found[f"{lam},{i}"] = ws
        params = {"k": pd.k, "pairs": (pd.p - 3) * (pd.k + 1)}
        if keep_witnesses:
            params["distinguishing"] = found
    return VerificationReport(
        "lemma2", pd.p, params=params, verdict=not failures,
        witnesses=failures[:MAX_WITNESSES], elapsed_ms=tm.ms,
    )


def lemma2_suite(pmax: int = 200) -> list[VerificationReport]:
    return [verify_lemma2(PrimeDesc(q)) for q in odd_primes_below(pmax) if q >= 5]


# ---------------------------------------------------------------- crossings

@dataclass(frozen=True)
class CrossingCounts:
    """Brute-force counts from the level-crossing argument, with closed forms.

    ``lam = x * 2**(i+1) + y`` and ``p = z * 2**(i+1) + w``.  ``count_a`` counts
    ``a < p`` with ``a mod 2**(i+1) == 2**i - 1``; ``count_low`` and
    ``count_high`` count ``b`` below / at or above ``p - lam`` with
    ``B_i(b) == 0`` and ``B_i((b + lam) mod p) == 1``.  Closed forms are only
    evaluated when both digit preconditions hold; otherwise they are ``None``.
    """

    p: int
    lam: int
    i: int
    x: int
    y: int
    z: int
    w: int
    count_a: int
    count_low: int
    count_high: int
    bit_p: int
    lam_level_zero: bool
    complement_matches: bool
    closed_a: Optional[int]
    closed_low: Optional[int]
    closed_high: Optional[int]

    @property
    def preconditions_met(self) -> bool:
        return self.lam_level_zero and self.complement_matches

    @property
    def closed_match(self) -> Optional[bool]:
        if not self.preconditions_met:
            return None
        return (self.count_a, self.count_low, self.count_high) == (
            self.closed_a, self.closed_low, self.closed_high)

    @property
    def identity_holds(self) -> bool:
        return self.count_a == self.count_low + self.count_high

    @property
    def z_ge_x(self) -> bool:
        return self.z >= self.x


def count_level_crossings(pd: PrimeDesc, lam: int, i: int) -> CrossingCounts:
    p = pd.p
    if not 1 <= lam <= p - 1:
        raise ValueError(f"lambda {lam} not in [1, {p - 1}]")
    if not 0 <= i <= pd.k:
        raise ValueError(f"level {i} not in [0, {pd.k}]")
    m = 1 << (i + 1)
    half = 1 << i
    x, y = divmod(lam, m)
    z, w = divmod(p, m)

    count_a = sum(1 for a in range(p) if a % m == half - 1)
    count_low = sum(1 for b in range(p - lam) if not _bit(b, i) and _bit(b + lam, i))
    count_high = sum(1 for b in range(p - lam, p) if not _bit(b, i) and _bit(b + lam - p, i))

    bit_p = _bit(p, i)
    lam_zero = _bit(lam, i) == 0
    comp = _bit(p - lam, i) == _bit(p - 1, i)
    closed = (None, None, None)
    if lam_zero and comp:
        if bit_p == 0:
            closed = (z, (z - x) * y, x * (w - y))
        else:
            closed = (z + 1, (z - x + 1) * y, x * (m - w + y))
    return CrossingCounts(p, lam, i, x, y, z, w, count_a, count_low, count_high,
                          bit_p, lam_zero, comp, *closed)


def verify_crossings(pd: PrimeDesc) -> VerificationReport:
    """Check the crossing-count bookkeeping for every ``(lam, i)`` of one prime.

    Sub-checks, each with its own witness list:

    * ``closed_forms``: where both digit preconditions hold, the brute-force
      counts equal the closed forms.
    * ``z_ge_x``: ``z >= x`` for every pair.
    * ``only_trivial_scalings``: where the preconditions hold, the identity
      ``count_a == count_low + count_high`` forces ``lam`` in ``{1, p - 1}``.
    * ``exact_characterization``: where the preconditions hold, the identity
      holds exactly for ``lam == 1`` and for ``lam == p - 1`` at ``i == i0``.
    """
    p = pd.p
    with _Timer() as tm:
        sub = {name: [] for name in
               ("closed_forms", "z_ge_x", "only_trivial_scalings", "exact_characterization")}
        totals = dict.fromkeys(sub, 0)
        checked = 0

        def flag(name, cc):
            totals[name] += 1
            if len(sub[name]) < MAX_WITNESSES:
                sub[name].append({"lambda": cc.lam, "level": cc.i, "count_a": cc.count_a,
                                  "count_low": cc.count_low, "count_high": cc.count_high})

        for lam in range(1, p):
            for i in range(pd.k + 1):
                cc = count_level_crossings(pd, lam, i)
                if not cc.z_ge_x:
                    flag("z_ge_x", cc)
                if not cc.preconditions_met:
                    continue
                checked += 1
                if not cc.closed_match:
                    flag("closed_forms", cc)
                trivial = lam in (1, p - 1)
                if cc.identity_holds and not trivial:
                    flag("only_trivial_scalings", cc)
                expected = lam == 1 or (lam == p - 1 and i == pd.i0)
                if cc.identity_holds != expected:
                    flag("exact_characterization", cc)
    witnesses = [dict(w, subcheck=name) for name, ws in sub.items() for w in ws]
    params = {
        "k": pd.k, "i0": pd.i0, "pairs_with_preconditions": checked,
        "subchecks": {name: ("pass" if totals[name] == 0 else "fail") for name in sub},
        "violations": totals,
    }
    return VerificationReport("crossings", p, params=params, verdict=not witnesses,
                              witnesses=witnesses, elapsed_ms=tm.ms)


def crossings_suite(pmax: int = 200) -> list[VerificationReport]:
    return [verify_crossings(PrimeDesc(q)) for q in odd_primes_below(pmax)]


# ---------------------------------------------------------------- theorem & corollary

def _canonical_mseq(f: CharPoly, bound: int) -> MSeq:
    T = f.period
    if T > bound:
        raise UnsupportedSize(f"period {T} exceeds the bound {bound}")
    if not is_primitive(f):
        raise ValueError(f"polynomial {f} is not primitive")
    return mseq_generate(f, require_primitive=True)


def equal_level_shifts(bits: bytes) -> list[int]:
    """All ``tau`` for which rotating ``bits`` by ``tau`` leaves it unchanged."""
    return [tau for tau in range(len(bits)) if bits[tau:] + bits[:tau] == bits]


def verify_theorem(f: CharPoly, bound: int = DEFAULT_PERIOD_BOUND) -> VerificationReport:
    """Compare every level of every shift against the unshifted m-sequence.

    Any two m-sequences of one primitive polynomial are shifts of each other,
    so the shift sets ``S_i`` cover every pair.  Also checks that the shift
    by ``T/2`` is the negated sequence.
    """
    pd = f.pd
    with _Timer() as tm:
        s = _canonical_mseq(f, bound)
        T = s.T
        shift_sets = {}
        witnesses = []
        for i in range(pd.k + 1):
            S = equal_level_shifts(level_bits(s.terms, i))
            shift_sets[i] = S
            expected = [0, T // 2] if i == pd.i0 else [0]
            if S != expected:
                witnesses.append({"level": i, "shifts": S[:MAX_WITNESSES], "expected": expected})
        half_is_negation = mseq_shift(s, T // 2).terms == seq_scale(s, pd.p - 1).terms
        if not half_is_negation:
            witnesses.append({"half_shift_is_negation": False})
    return VerificationReport(
        "theorem", pd.p, f.n,
        params={"poly": f.spec(), "T": T, "k": pd.k, "i0": pd.i0,
                "shift_sets": {str(i): S for i, S in shift_sets.items()},
                "half_shift_is_negation": half_is_negation},
        verdict=not witnesses, witnesses=witnesses, elapsed_ms=tm.ms,
    )


def verify_period_corollary(f: CharPoly, bound: int = DEFAULT_PERIOD_BOUND) -> VerificationReport:
    pd = f.pd
    with _Timer() as tm:
        s = _canonical_mseq(f, bound)
        T = s.T
        periods = {}
        witnesses = []
        for i in range(pd.k + 1):
            periods[i] = seq_period(level_bits(s.terms, i), T)
            expected = T // 2 if i == pd.i0 else T
            if periods[i] != expected:
                witnesses.append({"level": i, "period": periods[i], "expected": expected})
    return VerificationReport(
        "periods", pd.p, f.n,
        params={"poly": f.spec(), "T": T, "i0": pd.i0,
                "periods": {str(i): d for i, d in periods.items()}},
        verdict=not witnesses, witnesses=witnesses, elapsed_ms=tm.ms,
    )


def theorem_suite(polys: Optional[Iterable[CharPoly]] = None) -> list[VerificationReport]:
    return [verify_theorem(f) for f in (default_polys() if polys is None else polys)]


def periods_suite(polys: Optional[Iterable[CharPoly]] = None) -> list[VerificationReport]:
    return [verify_period_corollary(f) for f in (default_polys() if polys is None else polys)]


# ---------------------------------------------------------------- rotation identity

def star_check(pd: PrimeDesc, a: int, i: int) -> Optional[dict]:
    """Check the rotation identity for one ``(a, i)``; return a witness on failure.

    With ``a = x * 2**i + y`` and ``s = k + 1 - i``:
    ``2**s * a mod p == y * 2**s + x`` and ``B_i(a) == B_0`` of that product.
    """
    s = pd.width - i
    x, y = divmod(a, 1 << i)
    prod = fe_mul(pd, a, 1 << s)
    rotated = y * (1 << s) + x
    ok = (prod == rotated and _bit(a, i) == prod & 1
          and mersenne_mul_pow2(pd, a, s) == prod)
    if ok:
        return None
    return {"a": a, "level": i, "product": prod, "rotated": rotated}


def verify_star_identity(pd: PrimeDesc, samples: int = STAR_SAMPLES, seed: int = STAR_SEED) -> VerificationReport:
    """Exhaustive for ``p <= 8191``; otherwise ``samples`` seeded ``(a, i)`` draws."""
    if not pd.is_mersenne:
        raise ValueError(f"{pd.p} is not a Mersenne prime")
    p, k = pd.p, pd.k
    witnesses = []
    with _Timer() as tm:
        if p <= STAR_EXHAUSTIVE_MAX:
            mode, checked = "exhaustive", 0
            for a in range(1, p):
                for i in range(1, k + 1):
                    checked += 1
                    w = star_check(pd, a, i)
                    if w and len(witnesses) < MAX_WITNESSES:
                        witnesses.append(w)
        else:
            mode, checked = "sampled", samples
            rng = random.Random(seed)
            for _ in range(samples):
                w = star_check(pd, rng.randrange(1, p), rng.randint(1, k))
                if w and len(witnesses) < MAX_WITNESSES:
                    witnesses.append(w)
    return VerificationReport(
        "star", p, params={"k": k, "mode": mode, "checked": checked, "seed": seed},
        verdict=not witnesses, witnesses=witnesses, elapsed_ms=tm.ms,
    )


DEFAULT_STAR_PRIMES = (7, 31, 127, 8191, (1 << 31) - 1)


def star_suite(primes: Iterable[int] = DEFAULT_STAR_PRIMES, samples: int = STAR_SAMPLES,
               seed: int = STAR_SEED) -> list[VerificationReport]:
    return [verify_star_identity(PrimeDesc(q), samples, seed) for q in primes]
