"""Exact evaluation of the construction parameters.

All counts are Python integers, so nothing overflows at n = 50000.  Each
``k_*`` function searches ``m < s < n/2`` for the smallest ``s`` at which
``lhs(s) <= rhs(s)``.  ``lhs`` never grows and ``rhs`` never shrinks with
``s``, so the predicate is monotone and a bisection finds the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Optional

from . import golden

VARIANTS = ("base", "sac", "degopt", "multi")


class Infeasible(ValueError):
    """No admissible parameter exists; ``formula`` names the failing condition."""

    def __init__(self, message: str, formula: str = ""):
        super().__init__(message)
        self.formula = formula


def binom_sum(t: int, lo: int, hi: int) -> int:
    """sum_{j=lo}^{hi} C(t, j), exactly."""
    if not 0 <= lo <= hi <= t:
        raise ValueError(f"need 0 <= lo <= hi <= t, got t={t}, lo={lo}, hi={hi}")
    if hi - lo <= t // 2:
        return _run(t, lo, hi)
    # long window: subtract the two short tails from 2^t instead
    total = 1 << t
    if lo > 0:
        total -= _run(t, 0, lo - 1)
    if hi < t:
        total -= _run(t, hi + 1, t)
    return total


def _run(t: int, lo: int, hi: int) -> int:
    # fold the window onto the short side of the symmetric row
    if lo > t - hi:
        lo, hi = t - hi, t - lo
    c = comb(t, lo)
    total = c
    for j in range(lo, hi):
        c = c * (t - j) // (j + 1)
        total += c
    return total


@dataclass(frozen=True)
class ParamQuery:
    n: int
    m: int
    variant: str = "base"
    r: Optional[int] = None
    u: Optional[int] = None
    v: Optional[int] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.n % 2 or self.n < 4:
            raise ValueError(f"n must be even and >= 4, got {self.n}")
        if not 1 <= self.m < self.n // 2:
            raise ValueError(f"need 1 <= m < n/2, got m={self.m}")
        if self.variant == "multi" and None in (self.r, self.u, self.v):
            raise ValueError("the multi variant needs r, u and v")


@dataclass(frozen=True)
class ParamResult:
    n: int
    m: int
    variant: str
    k: Optional[int]
    claimed_N: Optional[int]
    slack: Optional[int]
    # (s, lhs, rhs) at k-1 when k-1 > m, showing the inequality fails there
    witness: Optional[tuple] = None

    @property
    def feasible(self) -> bool:
        return self.k is not None

    def require(self) -> int:
        if self.k is None:
            raise Infeasible(
                f"{FORMULA_NAMES[self.variant]} infeasible for n={self.n}, m={self.m}",
                FORMULA_NAMES[self.variant],
            )
        return self.k


FORMULA_NAMES = {
    "base": "prefix capacity",
    "sac": "SAC capacity",
    "degopt": "degree-shifted capacity",
    "multi": "code count",
}


def claimed_nonlinearity(n: int, k: int) -> int:
    return (1 << (n - 1)) - (1 << (n // 2 - 1)) - (1 << (k - 1))


def _minimal_s(lo: int, hi: int, ok: Callable[[int], bool]) -> Optional[int]:
    """Smallest s in [lo, hi] with ok(s), for monotone ok."""
    if lo > hi or not ok(hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _solve(n: int, m: int, variant: str, lhs, rhs) -> ParamResult:
    h = n // 2
    k = _minimal_s(m + 1, h - 1, lambda s: lhs(s) <= rhs(s))
    if k is None:
        return ParamResult(n, m, variant, None, None, None)
    witness = None
    if k - 1 > m:
        witness = (k - 1, lhs(k - 1), rhs(k - 1))
    return ParamResult(n, m, variant, k, claimed_nonlinearity(n, k), rhs(k) - lhs(k), witness)


def _low(t: int, m: int) -> int:
    return binom_sum(t, 0, min(m, t))


def _upper(s: int, m: int) -> int:
    """sum_{j=m+1}^{s} C(s, j)"""
    return (1 << s) - _low(s, m)


def k_base(n: int, m: int) -> ParamResult:
    h = n // 2
    low_h = _low(h, m)
    return _solve(n, m, "base", lambda s: low_h << (h - s), lambda s: _upper(s, m))


def _sac_window(s: int, m: int, printed: bool) -> int:
    top = s - m + 1 if printed else s - m - 1
    top = min(top, s)
    if top < m + 1:
        return 0
    return binom_sum(s, m + 1, top)


def k_sac(n: int, m: int, printed_limit: bool = False) -> ParamResult:
    """Suffix length for the SAC variant.

    The upper summation limit defaults to s - m - 1, the size of the
    complement-closed image window m < wt < s - m.  ``printed_limit=True``
    evaluates the looser weight limit s - m + 1 for comparison.
    """
    h = n // 2
    low_h = _low(h, m)
    return _solve(n, m, "sac", lambda s: low_h << (h - s + 1),
                  lambda s: _sac_window(s, m, printed_limit))


def k_degopt(n: int, m: int) -> ParamResult:
    h = n // 2
    low_h = _low(h, m)
    return _solve(n, m, "degopt", lambda s: low_h << (h - s),
                  lambda s: _upper(s, m) - (1 << (s - m - 1)) + 1)


def k_multi(n: int, m: int, r: int, u: int, v) -> ParamResult:
    """Suffix length for the multiple-output construction.

    ``v`` is either a fixed count of disjoint suffix codes, or a callable
    ``v(s)`` giving the count found at code length ``s`` (the count depends
    on ``s``, so the search then walks ``s`` upward).
    """
    h = n // 2
    width = (1 << r) - 1
    rest = (1 << h) - u * width
    if rest < 0:
        raise ValueError("u codes of this size do not fit into 2^(n/2) prefixes")
    lhs = lambda s: rest << (h - s)
    if not callable(v):
        return _solve(n, m, "multi", lhs, lambda s: v * width)
    for s in range(m + 1, h):
        vs = v(s)
        if lhs(s) <= vs * width:
            witness = None
            if s - 1 > m:
                witness = (s - 1, lhs(s - 1), v(s - 1) * width)
            return ParamResult(n, m, "multi", s, claimed_nonlinearity(n, s),
                               vs * width - lhs(s), witness)
    return ParamResult(n, m, "multi", None, None, None)


def solve(q: ParamQuery) -> ParamResult:
    if q.variant == "base":
        return k_base(q.n, q.m)
    if q.variant == "sac":
        return k_sac(q.n, q.m)
    if q.variant == "degopt":
        return k_degopt(q.n, q.m)
    return k_multi(q.n, q.m, q.r, q.u, q.v)


def direct_sum_base_feasible(n0: int, m: int) -> tuple:
    """(feasible, k): the two-piece construction exists at (n0, m) with k <= n0/2 - 3."""
    res = k_base(n0, m)
    return (res.k is not None and res.k <= n0 // 2 - 3, res.k)


def direct_sum_closed_form(n0: int, k: int, partner: str = "pw") -> int:
    """Closed form for the direct sum with a 15-variable (pw) or 9-variable (ky) partner."""
    h = n0 // 2
    if partner == "pw":
        n = n0 + 15
        return (1 << (n - 1)) - (1 << ((n - 1) // 2)) + 5 * (1 << (h + 2)) - 27 * (1 << (k + 2))
    if partner == "ky":
        n = n0 + 9
        return (1 << (n - 1)) - (1 << ((n - 1) // 2)) + (1 << (h + 1)) - 7 * (1 << (k + 1))
    raise ValueError(f"unknown partner {partner!r}")


PARTNER_NL = {"pw": (15, 16276), "ky": (9, 242)}


def min_n0_for_odd(m: int, limit: int = 100000) -> int:
    """Smallest even n0 for which the odd-n direct sum beats 2^(n-1) - 2^((n-1)/2)."""
    n0 = 2 * m + 2
    while n0 <= limit:
        if direct_sum_base_feasible(n0, m)[0]:
            return n0
        n0 += 2
    raise Infeasible(f"no n0 <= {limit} for m={m}", "direct-sum size")


def min_n_half(m: int, limit: int = 100000) -> int:
    """Smallest even n with k_base(n, m) = n/2 - 1."""
    n = 2 * m + 4
    while n <= limit:
        if k_base(n, m).k == n // 2 - 1:
            return n
        n += 2
    raise Infeasible(f"no n <= {limit} for m={m}", "prefix capacity")


@dataclass
class KGridRow:
    n: int
    m: int
    k: Optional[int]
    claimed_N: Optional[int]
    printed_k: Optional[int] = None
    status: str = "unlisted"  # match | mismatch | known-typo | unlisted


def _printed_k(m: int) -> dict:
    return {n: k for n, k in golden.PRINTED_K_GRID.get(m, [])}


def k_table(m: int, n_list: Iterable[int]) -> list:
    """k_base over ``n_list``, each row compared with the reference k grid."""
    printed = _printed_k(m)
    rows = []
    for n in n_list:
        res = k_base(n, m)
        row = KGridRow(n, m, res.k, res.claimed_N)
        if n in printed:
            row.printed_k = printed[n]
            row.status = "match" if printed[n] == res.k else "mismatch"
        rows.append(row)
    return rows


def check_k_grid(max_n: Optional[int] = None) -> list:
    """Recompute every cell of the reference k grid.

    Returns one KGridRow per printed cell; a cell whose disagreement is on
    the known-typo list gets status ``known-typo``.
    """
    rows = []
    for m, cells in golden.PRINTED_K_GRID.items():
        for n, k in cells:
            if max_n is not None and n > max_n:
                continue
            res = k_base(n, m)
            row = KGridRow(n, m, res.k, res.claimed_N, k)
            if res.k == k:
                row.status = "match"
            elif ("k_grid", m, n, k) in golden.KNOWN_TYPOS:
                row.status = "known-typo"
            else:
                row.status = "mismatch"
            rows.append(row)
    return rows


def check_min_n(ms: Optional[Iterable[int]] = None) -> list:
    """(m, printed n, computed n, status) for the reference minimal-n list."""
    out = []
    for m in ms if ms is not None else golden.PRINTED_MIN_N:
        printed = golden.PRINTED_MIN_N.get(m)
        computed = min_n_half(m)
        if printed is None:
            status = "unlisted"
        elif printed == computed:
            status = "match"
        elif ("min_n", m) in golden.KNOWN_TYPOS:
            status = "known-typo"
        else:
            status = "mismatch"
        out.append((m, printed, computed, status))
    return out


def check_nl_table() -> list:
    """(n, m, printed N, computed N, status) for the reference nonlinearity table."""
    out = []
    for n, m, (e0, e1, e2) in golden.PRINTED_NL_TABLE:
        printed = (1 << e0) - (1 << e1) - (1 << e2)
        computed = k_base(n, m).claimed_N
        if printed == computed:
            status = "match"
        elif ("nl_table", n, m) in golden.KNOWN_TYPOS:
            status = "known-typo"
        else:
            status = "mismatch"
        out.append((n, m, printed, computed, status))
    return out


# -- generalized profiles ---------------------------------------------------


class ProfileError(ValueError):
    pass


def capacity(i: int, m: int) -> int:
    """Number of i-bit masks of weight > m."""
    return binom_sum(i, m + 1, i) if i > m else 0


@dataclass(frozen=True)
class GmmProfile:
    n: int
    m: int
    pieces: tuple  # ((suffix_len, count), ...) sorted by suffix_len descending

    def __post_init__(self):
        object.__setattr__(self, "pieces",
                           tuple(sorted(((int(i), int(e)) for i, e in self.pieces), reverse=True)))

    @property
    def deficit(self) -> int:
        return sum(1 << (i - 1) for i, _ in self.pieces)

    @property
    def claimed_N(self) -> int:
        return (1 << (self.n - 1)) - self.deficit

    def validate(self) -> None:
        seen = set()
        for i, e in self.pieces:
            if i in seen:
                raise ProfileError(f"suffix length {i} listed twice")
            seen.add(i)
            if not 1 <= i <= self.n - 1:
                raise ProfileError(f"suffix length {i} outside 1..{self.n - 1}")
            if e < 1:
                raise ProfileError(f"piece {i} has count {e} < 1")
            cap = capacity(i, self.m)
            if e > cap:
                raise ProfileError(f"piece {i}: {e} prefixes but only {cap} images of weight > {self.m}")
        mass = sum(e << i for i, e in self.pieces)
        if mass != 1 << self.n:
            raise ProfileError(f"pieces cover {mass} points, need 2^{self.n}")

    @classmethod
    def parse(cls, n: int, m: int, text: str) -> "GmmProfile":
        """Parse ``10:968,8:219,7:10``."""
        pieces = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            i, _, e = part.partition(":")
            pieces.append((int(i), int(e)))
        return cls(n, m, tuple(pieces))


def _fill(n: int, lengths: list, caps: dict) -> Optional[list]:
    """Counts e_i in [1, cap_i] with sum e_i 2^i = 2^n, or None.

    Everything placed at suffix lengths below i_{j+1} must add up to a
    multiple of 2^{i_{j+1}}, so the admissible partial sums at each level
    form an integer interval.  Counts are then chosen top-down, each as
    large as the interval below allows.
    """
    asc = sorted(lengths)
    tops = asc[1:] + [n]
    bounds = []  # (lo, hi) of the partial sum through level j, in units of 2^{tops[j]}
    lo = hi = 0
    for i, nxt in zip(asc, tops):
        shift = nxt - i
        lo = -((-(lo + 1)) >> shift)
        hi = (hi + caps[i]) >> shift
        if lo > hi:
            return None
        bounds.append((lo, hi))
        # rescale to the next level's units happens implicitly: the next
        # level works in units of 2^{nxt}, exactly what lo/hi are in
    if not bounds[-1][0] <= 1 <= bounds[-1][1]:
        return None
    counts = []
    need = 1  # units of 2^n
    for j in range(len(asc) - 1, -1, -1):
        i = asc[j]
        total = need << (tops[j] - i)  # units of 2^i
        below_lo, below_hi = bounds[j - 1] if j else (0, 0)
        e = min(caps[i], total - below_lo)
        if e < 1 or total - e > below_hi:
            return None
        counts.append((i, e))
        need = total - e
    if need != 0:
        return None
    return counts


def profile_search(n: int, m: int, allowed_max_i: Optional[int] = None,
                   node_limit: int = 1_000_000) -> GmmProfile:
    """Profile of minimal deficit sum 2^(i-1), exact.

    Deficits of distinct suffix-length sets are distinct (sums of distinct
    powers of two), so scanning include/exclude decisions from the largest
    length down, exclude first, meets sets in increasing deficit order and
    the first feasible leaf is optimal.
    """
    if n % 2:
        raise ValueError("n must be even")
    top = n // 2 if allowed_max_i is None else allowed_max_i
    candidates = [i for i in range(min(top, n - 1), m, -1)]
    caps = {i: capacity(i, m) for i in candidates}
    full = 1 << n
    # suffix_mass[t]: max mass from candidates[t:]
    suffix_mass = [0] * (len(candidates) + 1)
    for t in range(len(candidates) - 1, -1, -1):
        i = candidates[t]
        suffix_mass[t] = suffix_mass[t + 1] + (caps[i] << i)

    nodes = 0
    best = None

    def dfs(t: int, chosen: list, mass: int) -> bool:
        # ``chosen`` itself is already known to be infeasible here
        nonlocal nodes, best
        nodes += 1
        if nodes > node_limit:
            raise ProfileError(f"profile search exceeded {node_limit} nodes")
        if t == len(candidates) or mass + suffix_mass[t] < full:
            return False
        i = candidates[t]
        if dfs(t + 1, chosen, mass):
            return True
        grown = chosen + [i]
        counts = _fill(n, grown, caps)
        if counts is not None:
            best = counts
            return True
        return dfs(t + 1, grown, mass + (caps[i] << i))

    dfs(0, [], 0)
    if best is None:
        raise ProfileError(f"no feasible profile for n={n}, m={m} with suffix lengths <= {top}")
    prof = GmmProfile(n, m, tuple(best))
    prof.validate()
    return prof
