"""Multiple-output construction from sets of disjoint linear codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

from .construct import GmmPlan, Piece, assemble
from .core import TruthTable, check_cap, nonlinearity, resiliency_order, walsh_spectrum
from .params import Infeasible, claimed_nonlinearity, k_multi


class CodeSearchError(ValueError):
    pass


# -- GF(2^r) ------------------------------------------------------------------


def gf_mul(a: int, b: int, poly: int) -> int:
    """Product in F_2[x]/(poly); bit t of an element is the coefficient of alpha^t."""
    deg = poly.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= poly
    return out


@lru_cache(maxsize=None)
def primitive_polynomial(r: int) -> int:
    """Smallest degree-r polynomial for which x has order 2^r - 1."""
    if r == 1:
        return 0b11
    order = (1 << r) - 1
    for poly in range((1 << r) | 1, 1 << (r + 1), 2):
        x, t = 1, 0
        while True:
            x = gf_mul(x, 2, poly)
            t += 1
            if x == 1 or t > order:
                break
        if x == 1 and t == order:
            return poly
    raise ValueError(f"no primitive polynomial of degree {r}")


def gf_powers(r: int, poly: Optional[int] = None) -> list:
    """[alpha^0, ..., alpha^(2^r - 2)]"""
    poly = primitive_polynomial(r) if poly is None else poly
    out, x = [], 1
    for _ in range((1 << r) - 1):
        out.append(x)
        x = gf_mul(x, 2, poly)
    return out


# -- codes --------------------------------------------------------------------


def _span(basis) -> list:
    words = [0]
    for b in basis:
        words += [w ^ b for w in words]
    return words


@dataclass(frozen=True)
class LinearCode:
    length: int
    basis: tuple
    min_weight: int = field(init=False)

    def __post_init__(self):
        words = _span(self.basis)
        if len(set(words)) != len(words):
            raise ValueError("basis vectors are linearly dependent")
        if any(b >> self.length for b in self.basis):
            raise ValueError("basis vector longer than the code length")
        nonzero = [bin(w).count("1") for w in words[1:]]
        object.__setattr__(self, "min_weight", min(nonzero) if nonzero else 0)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def codewords(self) -> list:
        """Codewords indexed by coefficient vector: entry b is sum of basis[t] for bits t of b."""
        return _span(self.basis)

    def nonzero_set(self) -> frozenset:
        return frozenset(self.codewords()[1:])


@dataclass
class DisjointCodeSet:
    codes: list
    required_min_weight: int
    exhaustive: bool = False  # True when the count is proven maximal

    def __len__(self) -> int:
        return len(self.codes)

    def validate(self) -> None:
        seen = set()
        for c in self.codes:
            if c.min_weight < self.required_min_weight:
                raise AssertionError(f"code {c.basis} has minimum weight {c.min_weight}")
            words = c.nonzero_set()
            if seen & words:
                raise AssertionError("codes intersect outside 0")
            seen |= words


def _greedy_min_subspaces(length: int, r: int, min_weight: int) -> list:
    """Every r-dim subspace whose nonzero words all have weight >= min_weight, once each.

    A subspace is produced through its greedy basis (b_j is the least
    element outside span(b_1..b_{j-1})), which is unique.
    """
    valid = [x for x in range(1, 1 << length) if bin(x).count("1") >= min_weight]
    good = set(valid)
    out = []

    def grow(basis, words):
        if len(basis) == r:
            out.append(tuple(basis))
            return
        last = basis[-1] if basis else 0
        for b in valid:
            if b <= last or b in words:
                continue
            coset = [b ^ w for w in words]
            if min(coset) != b or not all(c in good for c in coset):
                continue
            grow(basis + [b], words + coset)

    grow([], [0])
    return out


def _subspace_count(length: int, r: int) -> int:
    num = den = 1
    for i in range(r):
        num *= (1 << (length - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def _greedy_search(length, r, min_weight, rng, target) -> list:
    """Randomised greedy for lengths too large to enumerate subspaces."""
    valid = [x for x in range(1, 1 << length) if bin(x).count("1") >= min_weight]
    if rng is not None:
        rng.shuffle(valid)
    used = set()
    codes = []
    for first in valid:
        if first in used:
            continue
        basis, words = [first], [0, first]
        for b in valid:
            if len(basis) == r:
                break
            if b in used or b in words:
                continue
            coset = [b ^ w for w in words]
            if all(bin(c).count("1") >= min_weight and c not in used for c in coset):
                basis.append(b)
                words += coset
        if len(basis) == r:
            codes.append(tuple(basis))
            used.update(words[1:])
            if target is not None and len(codes) >= target:
                break
    return codes


def search_disjoint_codes(length: int, r: int, min_weight: int, target_count: Optional[int] = None,
                          seed: Optional[int] = None, time_limit: float = 10.0,
                          enumerate_limit: int = 300_000) -> DisjointCodeSet:
    """As many pairwise-disjoint [length, r, >= min_weight] codes as the search finds.

    Small instances enumerate every admissible subspace and solve the
    packing as a 0/1 program; ``exhaustive`` is set when the solver proved
    the count maximal. Larger ones fall back to a randomised greedy.
    ``target_count`` lets the greedy stop early.
    """
    if not 1 <= r <= length:
        raise ValueError(f"need 1 <= r <= length, got r={r}, length={length}")
    if not 1 <= min_weight <= length:
        raise ValueError(f"need 1 <= min_weight <= length, got {min_weight}")
    rng = None if seed is None else np.random.default_rng(seed)

    if _subspace_count(length, r) > enumerate_limit:
        found = _greedy_search(length, r, min_weight, rng, target_count)
        if not found:
            raise CodeSearchError(f"no [{length}, {r}, >={min_weight}] code found")
        out = DisjointCodeSet([LinearCode(length, b) for b in found], min_weight)
        out.validate()
        return out

    spaces = _greedy_min_subspaces(length, r, min_weight)
    if not spaces:
        raise CodeSearchError(f"no [{length}, {r}, >={min_weight}] code exists")
    if rng is not None:
        spaces = [spaces[i] for i in rng.permutation(len(spaces))]
    per = (1 << r) - 1
    rows = np.array([w for basis in spaces for w in _span(basis)[1:]])
    cols = np.repeat(np.arange(len(spaces)), per)
    incidence = csr_matrix((np.ones(rows.size), (rows, cols)), shape=(1 << length, len(spaces)))
    res = milp(-np.ones(len(spaces)), constraints=LinearConstraint(incidence, 0, 1),
               integrality=np.ones(len(spaces)), bounds=Bounds(0, 1),
               options={"time_limit": time_limit})
    if res.x is None:
        chosen = _greedy_search(length, r, min_weight, rng, target_count)
        exhaustive = False
    else:
        chosen = [spaces[j] for j in np.flatnonzero(res.x > 0.5)]
        exhaustive = res.status == 0
    out = DisjointCodeSet([LinearCode(length, b) for b in chosen], min_weight, exhaustive)
    out.validate()
    return out


def rho_map(code: LinearCode, element: int) -> int:
    """Linear isomorphism F_2^r -> code sending alpha^t to the t-th basis word."""
    out = 0
    t = 0
    while element:
        if element & 1:
            out ^= code.basis[t]
        element >>= 1
        t += 1
    return out


@dataclass
class BlockMatrix:
    code: LinearCode
    rows: list  # (2^r - 1) tuples of r codewords

    @classmethod
    def build(cls, code: LinearCode, poly: Optional[int] = None) -> "BlockMatrix":
        r = code.dim
        powers = gf_powers(r, poly)
        period = len(powers)
        rows = [tuple(rho_map(code, powers[(t + j) % period]) for j in range(r)) for t in range(period)]
        return cls(code, rows)


# -- the construction ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    n: int
    components: tuple

    def __post_init__(self):
        if any(c.n != self.n for c in self.components):
            raise ValueError("components must share n")

    @property
    def r(self) -> int:
        return len(self.components)

    def combination(self, c: int) -> TruthTable:
        """f_c = sum c_i f_i, c_1 being the most significant bit of ``c``."""
        bits = np.zeros(1 << self.n, dtype=np.uint8)
        for i, comp in enumerate(self.components):
            if c >> (self.r - 1 - i) & 1:
                bits ^= comp.bits
        return TruthTable(self.n, bits)


def vectorial_profile(F: VectorialFunction) -> tuple:
    """(N_F, m_F): minima over all nonzero output combinations."""
    if F.r > 16:
        raise ValueError(f"refusing to sweep 2^{F.r} - 1 combinations")
    nls, ms = [], []
    for c in range(1, 1 << F.r):
        s = walsh_spectrum(F.combination(c))
        nls.append(nonlinearity(s))
        ms.append(resiliency_order(s))
    return min(nls), min(ms)


@dataclass
class C4Plan:
    n: int
    m: int
    r: int
    k: int
    poly: int
    prefix_codes: DisjointCodeSet
    suffix_codes: DisjointCodeSet
    prefix_rows: list  # kappa rows of r codewords (length n/2)
    suffix_rows: list  # lambda rows of r codewords (length k)
    component_plans: list
    seed: Optional[int] = None

    @property
    def u(self) -> int:
        return len(self.prefix_codes)

    @property
    def v(self) -> int:
        return len(self.suffix_codes)

    @property
    def kappa(self) -> int:
        return len(self.prefix_rows)

    @property
    def lam(self) -> int:
        return len(self.suffix_rows)

    @property
    def claimed_N(self) -> int:
        return claimed_nonlinearity(self.n, self.k)


def build_c4(n: int, m: int, r: int, seed: Optional[int] = None, cap: Optional[int] = None,
             time_limit: float = 10.0):
    """F: F_2^n -> F_2^r whose every nonzero combination is a two-piece GMM function."""
    if n % 2 or n < 12:
        raise Infeasible(f"n={n} must be even and >= 12", "precondition")
    if not (1 <= r <= n // 4 and 1 <= m <= n // 4):
        raise Infeasible(f"need r, m <= floor(n/4) = {n // 4}", "precondition")
    check_cap(n, cap)
    h = n // 2
    try:
        prefix_codes = search_disjoint_codes(h, r, m + 1, seed=seed, time_limit=time_limit)
    except CodeSearchError as exc:
        raise Infeasible(f"code search for [{h}, {r}, >={m + 1}] failed: {exc}", "prefix code search") from exc
    u = len(prefix_codes)

    suffix_cache = {}

    def suffix_search(s):
        if s not in suffix_cache:
            try:
                suffix_cache[s] = search_disjoint_codes(s, r, m + 1, seed=seed, time_limit=time_limit)
            except (CodeSearchError, ValueError):
                suffix_cache[s] = None
        return suffix_cache[s]

    res = k_multi(n, m, r, u, lambda s: len(suffix_search(s) or ()))
    if res.k is None:
        raise Infeasible(f"code count infeasible for n={n}, m={m}, r={r} with u={u}", "code count")
    k = res.k
    suffix_codes = suffix_search(k)

    poly = primitive_polynomial(r)
    prefix_rows = [row for code in prefix_codes.codes for row in BlockMatrix.build(code, poly).rows]
    kappa = len(prefix_rows)
    e0 = np.arange(kappa, dtype=np.int64)
    rest = np.arange(kappa, 1 << h, dtype=np.int64)
    e1 = ((rest[:, None] << (h - k)) | np.arange(1 << (h - k), dtype=np.int64)[None, :]).ravel()
    lam = e1.size
    stacked = [row for code in suffix_codes.codes for row in BlockMatrix.build(code, poly).rows]
    if lam > len(stacked):
        raise Infeasible(f"{lam} suffix prefixes but only {len(stacked)} rows", "code count")
    suffix_rows = stacked[:lam]

    plans, comps = [], []
    for j in range(r):
        plan = GmmPlan(n, m, "c4", [
            Piece(h, e0, [row[j] for row in prefix_rows]),
            Piece(k, e1, [row[j] for row in suffix_rows]),
        ], seed=seed, k=k, claimed_N=claimed_nonlinearity(n, k))
        plan.check()
        plans.append(plan)
        comps.append(assemble(plan, cap=cap))
    plan = C4Plan(n, m, r, k, poly, prefix_codes, suffix_codes, prefix_rows, suffix_rows, plans, seed)
    return VectorialFunction(n, tuple(comps)), plan
