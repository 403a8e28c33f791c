"""Truth tables and their exact spectral analysis.

Index convention: for X = (x_1, ..., x_n) the table position is
``sum(x_i << (n - i))``, so x_1 is the most significant bit.  A mask
``u`` (monomial, linear function, direction) uses the same convention,
which makes every prefix (x_1..x_t) a contiguous block of the table.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

DEFAULT_CAP = int(os.environ.get("GMMBOOL_CAP", "28"))
NAIVE_MAX_N = 14


class CapExceeded(ValueError):
    """Requested table size is above the configured variable cap."""


def check_cap(n: int, cap: Optional[int] = None) -> None:
    cap = DEFAULT_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the table cap of {cap} variables")


def popcounts(n: int) -> np.ndarray:
    """Hamming weight of every index in ``range(2**n)``."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


def _parity_of(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class TruthTable:
    n: int
    bits: np.ndarray

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if self.n < 1:
            raise ValueError("a truth table needs at least one variable")
        if bits.ndim != 1 or bits.size != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} entries for n={self.n}, got {bits.size}")
        if bits.size and bits.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "TruthTable":
        arr = np.asarray(bits, dtype=np.uint8)
        n = int(arr.size).bit_length() - 1
        if arr.size == 0 or 1 << n != arr.size:
            raise ValueError("table length must be a power of two")
        return cls(n, arr)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[tuple], int]) -> "TruthTable":
        """Tabulate ``fn((x_1, ..., x_n))``."""
        out = np.empty(1 << n, dtype=np.uint8)
        for idx in range(1 << n):
            x = tuple((idx >> (n - i)) & 1 for i in range(1, n + 1))
            out[idx] = fn(x) & 1
        return cls(n, out)

    @classmethod
    def zeros(cls, n: int) -> "TruthTable":
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def linear(cls, n: int, mask: int) -> "TruthTable":
        """The linear function mask . X."""
        return cls(n, _parity_of(np.arange(1 << n, dtype=np.uint64) & np.uint64(mask)))

    @classmethod
    def variable(cls, n: int, i: int) -> "TruthTable":
        """The coordinate function x_i (1-based)."""
        return cls.linear(n, 1 << (n - i))

    def __len__(self) -> int:
        return self.bits.size

    def __getitem__(self, idx):
        return self.bits[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __xor__(self, other: "TruthTable") -> "TruthTable":
        if self.n != other.n:
            raise ValueError("variable counts differ")
        return TruthTable(self.n, self.bits ^ other.bits)

    @property
    def weight(self) -> int:
        return int(self.bits.sum(dtype=np.int64))

    @property
    def balanced(self) -> bool:
        return 2 * self.weight == len(self)

    def signs(self) -> np.ndarray:
        """(-1)^f as int64."""
        return 1 - 2 * self.bits.astype(np.int64)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __getitem__(self, idx):
        return self.values[idx]

    @property
    def max_abs(self) -> int:
        return int(np.abs(self.values).max())

    def value_set(self) -> set:
        return {int(v) for v in np.unique(self.values)}

    def abs_value_set(self) -> set:
        return {int(v) for v in np.unique(np.abs(self.values))}

    def parseval_ok(self) -> bool:
        # squares reach 2^(2n); Python ints avoid int64 overflow past n = 31
        if self.n <= 28:
            total = int(np.sum(self.values * self.values, dtype=np.int64))
        else:
            total = sum(int(v) * int(v) for v in self.values)
        return total == 1 << (2 * self.n)


@dataclass(frozen=True, eq=False)
class AnfForm:
    """Binary ANF coefficients; ``coeffs[u]`` is lambda_u."""

    n: int
    coeffs: np.ndarray

    @classmethod
    def from_monomials(cls, n: int, monomials: Iterable[int]) -> "AnfForm":
        coeffs = np.zeros(1 << n, dtype=np.uint8)
        for u in monomials:
            coeffs[u] ^= 1
        return cls(n, coeffs)

    @property
    def monomials(self) -> set:
        return {int(u) for u in np.flatnonzero(self.coeffs)}

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            return 0
        return int(np.bitwise_count(nz.astype(np.uint64)).max())


@dataclass(frozen=True, eq=False)
class AutocorrelationTable:
    n: int
    values: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, AutocorrelationTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __getitem__(self, idx):
        return self.values[idx]


def _butterfly_stage(a: np.ndarray, h: int, op: str, pool) -> None:
    v = a.reshape(-1, 2, h)
    if pool is None:
        chunks = [v]
    else:
        workers = pool._max_workers
        axis = 0 if v.shape[0] >= workers else 2
        splits = np.array_split(np.arange(v.shape[axis]), workers)
        chunks = [v[s[0] : s[-1] + 1] if axis == 0 else v[:, :, s[0] : s[-1] + 1]
                  for s in splits if s.size]

    def run(c):
        lo = c[:, 0, :]
        hi = c[:, 1, :]
        if op == "xor":
            hi ^= lo
        else:
            tmp = lo.copy()
            lo += hi
            np.subtract(tmp, hi, out=hi)

    if pool is None:
        for c in chunks:
            run(c)
    else:
        list(pool.map(run, chunks))


def _transform(a: np.ndarray, op: str, threads: int = 1) -> np.ndarray:
    """In-place radix-2 butterfly over all bit positions."""
    h = 1
    pool = ThreadPoolExecutor(threads) if threads and threads > 1 else None
    try:
        while h < a.size:
            _butterfly_stage(a, h, op, pool)
            h <<= 1
    finally:
        if pool is not None:
            pool.shutdown()
    return a


def fwht(values: np.ndarray, threads: int = 1) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform of an integer vector (copy)."""
    return _transform(np.array(values, dtype=np.int64), "add", threads)


def walsh_spectrum(f: TruthTable, threads: int = 1) -> WalshSpectrum:
    """W_f(w) = sum_X (-1)^(f(X) + w.X), via the fast transform."""
    return WalshSpectrum(f.n, _transform(f.signs(), "add", threads))


def walsh_naive(f: TruthTable) -> WalshSpectrum:
    """Direct O(4^n) evaluation of the Walsh sum; the reference for walsh_spectrum."""
    if f.n > NAIVE_MAX_N:
        raise ValueError(f"naive Walsh evaluation refused for n={f.n} > {NAIVE_MAX_N}")
    size = 1 << f.n
    xs = np.arange(size, dtype=np.uint32)
    fbits = f.bits.astype(np.uint8)
    out = np.empty(size, dtype=np.int64)
    for w in range(size):
        exponent = fbits ^ _parity_of(xs & np.uint32(w))
        out[w] = size - 2 * int(exponent.sum(dtype=np.int64))
    return WalshSpectrum(f.n, out)


def nonlinearity(s: WalshSpectrum) -> int:
    return (1 << (s.n - 1)) - s.max_abs // 2


def resiliency_order(s: WalshSpectrum) -> int:
    """Largest m with W(w) = 0 for all wt(w) <= m; -1 when unbalanced."""
    if s.values[0] != 0:
        return -1
    nz = np.flatnonzero(s.values)
    return int(np.bitwise_count(nz.astype(np.uint64)).min()) - 1


def anf(f: TruthTable) -> AnfForm:
    return AnfForm(f.n, _transform(f.bits.copy(), "xor"))


def truth_table(a: AnfForm) -> TruthTable:
    return TruthTable(a.n, _transform(a.coeffs.astype(np.uint8).copy(), "xor"))


def degree(f: TruthTable) -> int:
    return anf(f).degree


def autocorrelation(f: TruthTable, threads: int = 1) -> AutocorrelationTable:
    """Delta_f via the squared spectrum: Delta = H(W^2) / 2^n."""
    w = walsh_spectrum(f, threads).values
    sq = _transform(w * w, "add", threads)
    return AutocorrelationTable(f.n, sq >> f.n)


def autocorrelation_direct(f: TruthTable) -> AutocorrelationTable:
    if f.n > NAIVE_MAX_N:
        raise ValueError(f"direct autocorrelation refused for n={f.n} > {NAIVE_MAX_N}")
    size = 1 << f.n
    xs = np.arange(size, dtype=np.int64)
    sg = f.signs()
    out = np.array([int(np.dot(sg, sg[xs ^ a])) for a in range(size)], dtype=np.int64)
    return AutocorrelationTable(f.n, out)


def unit_autocorrelations(f: TruthTable) -> list:
    """Delta_f(alpha) for the n weight-one directions, x_1 first."""
    sg = f.signs()
    xs = np.arange(len(f), dtype=np.int64)
    return [int(np.dot(sg, sg[xs ^ (1 << (f.n - i))])) for i in range(1, f.n + 1)]


def sac_check(t: AutocorrelationTable) -> bool:
    return all(t.values[1 << j] == 0 for j in range(t.n))


def direct_sum(f0: TruthTable, g: TruthTable, cap: Optional[int] = None) -> TruthTable:
    """f(X', X'') = f0(X') + g(X''), with X' on the high index bits."""
    check_cap(f0.n + g.n, cap)
    return TruthTable(f0.n + g.n, np.bitwise_xor.outer(f0.bits, g.bits).ravel())


def direct_sum_nonlinearity(n0: int, nl0: int, n1: int, nl1: int) -> int:
    """Nonlinearity of a direct sum from its parts' nonlinearities."""
    return (1 << (n0 + n1 - 1)) - ((1 << n0) - 2 * nl0) * ((1 << n1) - 2 * nl1) // 2


@dataclass
class Claims:
    m: Optional[int] = None
    N: Optional[int] = None
    d: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "Claims":
        """Parse ``m=1,N=2000,d=8``."""
        out = cls()
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in ("m", "N", "d") or not value:
                raise ValueError(f"bad claim {part!r}")
            setattr(out, key, int(value))
        return out

    def as_dict(self) -> dict:
        return {"m": self.m, "N": self.N, "d": self.d}


@dataclass
class Certificate:
    n: int
    claims: Claims
    measured_m: int
    measured_N: int
    measured_d: int
    balanced: bool
    sac: bool
    spectrum_values: list
    verdict: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdict.values())

    def measured(self) -> dict:
        return {
            "m": self.measured_m,
            "N": self.measured_N,
            "d": self.measured_d,
            "sac": self.sac,
            "balanced": self.balanced,
        }


def certify(f: TruthTable, claims: Optional[Claims | Mapping] = None, threads: int = 1) -> Certificate:
    if claims is None:
        claims = Claims()
    elif not isinstance(claims, Claims):
        claims = Claims(**claims)
    spec = walsh_spectrum(f, threads)
    m = resiliency_order(spec)
    nl = nonlinearity(spec)
    d = degree(f)
    auto = AutocorrelationTable(f.n, _transform(spec.values * spec.values, "add", threads) >> f.n)
    verdict = {}
    # resiliency is a lower bound, nonlinearity and degree are exact
    if claims.m is not None:
        verdict["m"] = m >= claims.m
    for key, measured in (("N", nl), ("d", d)):
        claimed = getattr(claims, key)
        if claimed is not None:
            verdict[key] = claimed == measured
    return Certificate(
        n=f.n,
        claims=claims,
        measured_m=m,
        measured_N=nl,
        measured_d=d,
        balanced=bool(spec.values[0] == 0),
        sac=sac_check(auto),
        spectrum_values=sorted(spec.abs_value_set()),
        verdict=verdict,
    )
