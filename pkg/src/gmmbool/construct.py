"""Piecewise (generalized Maiorana-McFarland) assembly of truth tables.

A plan is a list of pieces.  A piece with suffix length ``i`` owns a set of
``(n - i)``-bit prefixes; on the block of indices sharing prefix ``p`` the
function is the linear form ``image(p) . X''`` on the low ``i`` bits,
optionally flipped by an offset bit and XORed with one extra monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import networkx as nx
import numpy as np

from .core import TruthTable, check_cap
from .params import GmmProfile, Infeasible, ProfileError, k_base, k_degopt, k_sac

_CHUNK = 1 << 20


def masks_by_weight(width: int, above: int, below: Optional[int] = None) -> np.ndarray:
    """All ``width``-bit masks with ``above < wt < below``, ascending."""
    xs = np.arange(1 << width, dtype=np.int64)
    wt = np.bitwise_count(xs)
    keep = wt > above
    if below is not None:
        keep &= wt < below
    return xs[keep]


@dataclass
class Piece:
    suffix_len: int
    prefixes: np.ndarray
    images: np.ndarray
    pool: Optional[np.ndarray] = None  # allowed image set
    offsets: Optional[np.ndarray] = None  # g(prefix) per prefix
    monomial: Optional[int] = None  # suffix mask of a product term added on every block

    def __post_init__(self):
        self.prefixes = np.asarray(self.prefixes, dtype=np.int64)
        self.images = np.asarray(self.images, dtype=np.int64)
        if self.prefixes.shape != self.images.shape:
            raise ValueError("every prefix needs exactly one image")


@dataclass
class DegreeFix:
    j: Optional[int]  # 1-based component with odd image parity
    swapped: Optional[tuple] = None  # (prefix, old image, new image)

    @property
    def ok(self) -> bool:
        return self.j is not None


@dataclass
class GmmPlan:
    n: int
    m: int
    variant: str
    pieces: list
    seed: Optional[int] = None
    k: Optional[int] = None
    claimed_N: Optional[int] = None
    claimed_d: Optional[int] = None
    degree_fix: Optional[DegreeFix] = None
    notes: dict = field(default_factory=dict)

    def profile(self) -> GmmProfile:
        counts = {}
        for p in self.pieces:
            counts[p.suffix_len] = counts.get(p.suffix_len, 0) + len(p.prefixes)
        return GmmProfile(self.n, self.m, tuple(counts.items()))

    def check(self) -> None:
        """Assert injectivity, image weights and pool membership per suffix length."""
        by_len = {}
        for p in self.pieces:
            by_len.setdefault(p.suffix_len, []).append(p)
        for i, group in by_len.items():
            images = np.concatenate([p.images for p in group])
            if np.unique(images).size != images.size:
                raise AssertionError(f"images of suffix length {i} are not injective")
            if images.size and (np.bitwise_count(images).min() <= self.m or images.max() >= 1 << i):
                raise AssertionError(f"suffix length {i} has an image of weight <= {self.m}")
            for p in group:
                if p.pool is not None and not np.isin(p.images, p.pool).all():
                    raise AssertionError(f"suffix length {i} image outside its pool")


def coverage(n: int, pieces: Sequence[Piece]) -> np.ndarray:
    """How many times each of the 2^n indices is written by the plan."""
    diff = np.zeros((1 << n) + 1, dtype=np.int64)
    for p in pieces:
        starts = p.prefixes << p.suffix_len
        np.add.at(diff, starts, 1)
        np.add.at(diff, starts + (1 << p.suffix_len), -1)
    return np.cumsum(diff[:-1])


def assemble(plan: GmmPlan, check_coverage: bool = True, cap: Optional[int] = None) -> TruthTable:
    n = plan.n
    check_cap(n, cap)
    if check_coverage:
        cov = coverage(n, plan.pieces)
        if not (cov == 1).all():
            bad = int(np.flatnonzero(cov != 1)[0])
            raise AssertionError(f"index {bad} written {int(cov[bad])} times")
    out = np.zeros(1 << n, dtype=np.uint8)
    for p in plan.pieces:
        i = p.suffix_len
        y = np.arange(1 << i, dtype=np.int64)
        mono = None
        if p.monomial is not None:
            mono = ((y & p.monomial) == p.monomial).astype(np.uint8)
        rows = max(1, _CHUNK >> i)
        for lo in range(0, len(p.prefixes), rows):
            pre = p.prefixes[lo : lo + rows]
            img = p.images[lo : lo + rows]
            vals = (np.bitwise_count(img[:, None] & y[None, :]) & 1).astype(np.uint8)
            if p.offsets is not None:
                vals ^= p.offsets[lo : lo + rows, None].astype(np.uint8)
            if mono is not None:
                vals ^= mono[None, :]
            out[(pre[:, None] << i) | y[None, :]] = vals
    return TruthTable(n, out)


@dataclass
class PrefixTiling:
    n: int
    lengths: tuple  # ((prefix_len, count), ...) ascending by prefix_len
    assignment: dict  # prefix_len -> ascending array of prefixes

    def is_prefix_free(self) -> bool:
        # canonical codes are sorted; a prefix relation would show up as an
        # interval overlap between consecutive codewords on the full index line
        spans = []
        for ell, prefixes in self.assignment.items():
            for p in prefixes:
                start = int(p) << (self.n - ell)
                spans.append((start, start + (1 << (self.n - ell))))
        spans.sort()
        return all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))


def make_prefix_tiling(n: int, lengths: Sequence[tuple]) -> PrefixTiling:
    """Canonical prefix code: shortest lengths first, codewords allocated in order."""
    lengths = tuple(sorted((int(l), int(c)) for l, c in lengths if c))
    if any(not 0 <= l <= n for l, _ in lengths):
        raise ProfileError(f"prefix lengths must lie in 0..{n}")
    if sum(c << (n - l) for l, c in lengths) != 1 << n:
        raise ProfileError("prefix lengths violate Kraft equality")
    assignment = {}
    code = 0
    prev = lengths[0][0] if lengths else 0
    for ell, count in lengths:
        code <<= ell - prev
        prev = ell
        assignment[ell] = np.arange(code, code + count, dtype=np.int64)
        code += count
    return PrefixTiling(n, lengths, assignment)


def _rng(seed):
    return None if seed is None else np.random.default_rng(seed)


def apply_degree_fix(plan: GmmPlan, piece_index: int = 1) -> DegreeFix:
    """Make some image component of the given piece have odd parity.

    Swapping one image for any unused pool element changes the XOR of all
    images by old ^ new != 0, so a swap always works when the pool is not
    exhausted.  Complement-closed image sets are never swapped: a pair
    swap cannot change the parity.
    """
    piece = plan.pieces[piece_index]
    k = piece.suffix_len
    acc = int(np.bitwise_xor.reduce(piece.images)) if piece.images.size else 0
    if acc:
        fix = DegreeFix(k - acc.bit_length() + 1)
    elif plan.notes.get("complement_closed") or piece.pool is None:
        fix = DegreeFix(None)
    else:
        unused = np.setdiff1d(piece.pool, piece.images)
        if unused.size == 0:
            fix = DegreeFix(None)
        else:
            pos = len(piece.images) - 1
            old, new = int(piece.images[pos]), int(unused[0])
            piece.images = piece.images.copy()
            piece.images[pos] = new
            acc = old ^ new
            fix = DegreeFix(k - acc.bit_length() + 1, (int(piece.prefixes[pos]), old, new))
    plan.degree_fix = fix
    return fix


def _split_prefixes(h: int, size: int, rng, preferred: np.ndarray):
    """Pick ``size`` of the 2^h prefixes for the long piece; return (chosen, rest)."""
    if rng is None:
        chosen = preferred
    else:
        chosen = np.sort(rng.choice(1 << h, size=size, replace=False)).astype(np.int64)
    rest = np.setdiff1d(np.arange(1 << h, dtype=np.int64), chosen)
    return chosen, rest


def _extend(prefixes: np.ndarray, bits: int) -> np.ndarray:
    return ((prefixes[:, None] << bits) | np.arange(1 << bits, dtype=np.int64)[None, :]).ravel()


def _order(values: np.ndarray, rng) -> np.ndarray:
    return values if rng is None else rng.permutation(values)


def build_c1(n: int, m: int, seed: Optional[int] = None, fix_degree: bool = True,
             cap: Optional[int] = None, k: Optional[int] = None):
    """Two pieces, suffix lengths n/2 and k."""
    res = k_base(n, m)
    k = res.require() if k is None else k
    check_cap(n, cap)
    h = n // 2
    rng = _rng(seed)
    t0 = masks_by_weight(h, m)
    e0, rest = _split_prefixes(h, t0.size, rng, t0)
    e1 = _extend(rest, h - k)
    t1 = masks_by_weight(k, m)
    if e1.size > t1.size:
        raise Infeasible(f"{e1.size} prefixes need images but only {t1.size} have weight > {m}", "prefix capacity")
    img1 = _order(t1, rng)[: e1.size]
    plan = GmmPlan(n, m, "c1", [Piece(h, e0, _order(t0, rng), t0), Piece(k, e1, img1, t1)],
                   seed=seed, k=k, claimed_N=(1 << (n - 1)) - (1 << (h - 1)) - (1 << (k - 1)))
    if fix_degree:
        if apply_degree_fix(plan).ok:
            plan.claimed_d = n - k + 1
    plan.check()
    return assemble(plan, cap=cap), plan


def complement_pairs(width: int, candidates: np.ndarray) -> np.ndarray:
    """Pairs (c, ~c) from a complement-closed candidate set, ordered by the smaller member."""
    full = (1 << width) - 1
    small = candidates[candidates < (full ^ candidates)]
    return np.stack([small, full ^ small], axis=1)


def _sac_safe_images(h, k, r0, img0, rest, pairs):
    """Assign complement pairs to the short-piece blocks so no boundary term survives.

    For a prefix q outside the long piece and a neighbour q + e_i inside it,
    the autocorrelation in direction e_i picks up +-2^k whenever an image
    used on q's block equals the low k bits of the neighbour's image.  The
    pairs are matched to blocks avoiding exactly those values.
    """
    low_mask = (1 << k) - 1
    image_of = dict(zip(r0.tolist(), img0.tolist()))
    per_block = 1 << (h - k - 1)
    graph = nx.Graph()
    slots = [(int(q), t) for q in rest for t in range(per_block)]
    graph.add_nodes_from(slots, bipartite=0)
    pair_nodes = [("pair", j) for j in range(len(pairs))]
    graph.add_nodes_from(pair_nodes, bipartite=1)
    for q in rest:
        q = int(q)
        banned = {image_of[q ^ (1 << b)] & low_mask for b in range(h) if (q ^ (1 << b)) in image_of}
        ok = [j for j, (a, c) in enumerate(pairs) if int(a) not in banned and int(c) not in banned]
        for t in range(per_block):
            graph.add_edges_from(((q, t), ("pair", j)) for j in ok)
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=slots)
    if any(slot not in matching for slot in slots):
        raise Infeasible("no complement-closed image assignment avoids every boundary term", "SAC capacity")
    img = []
    for slot in slots:
        a, c = pairs[matching[slot][1]]
        img.extend((int(a), int(c)))
    return np.array(img, dtype=np.int64)


def build_c2(n: int, m: int, seed: Optional[int] = None, cap: Optional[int] = None):
    """SAC variant: complement-closed image sets on both pieces."""
    k = k_sac(n, m).require()
    check_cap(n, cap)
    h = n // 2
    rng = _rng(seed)
    gamma0 = masks_by_weight(h, m, h - m)
    r0, rest = _split_prefixes(h, gamma0.size, rng, gamma0)
    r1 = _extend(rest, h - k)
    gamma1 = masks_by_weight(k, m, k - m)
    pairs = complement_pairs(k, gamma1)
    if r1.size % 2 or r1.size // 2 > len(pairs):
        raise Infeasible(f"cannot pick {r1.size} complement-closed images from {gamma1.size}", "SAC capacity")
    if rng is not None:
        pairs = pairs[rng.permutation(len(pairs))]
    img0 = _order(gamma0, rng)
    img1 = _sac_safe_images(h, k, r0, img0, rest, pairs)
    plan = GmmPlan(n, m, "c2", [Piece(h, r0, img0, gamma0), Piece(k, r1, img1, gamma1)],
                   seed=seed, k=k, claimed_N=(1 << (n - 1)) - (1 << (h - 1)) - (1 << (k - 1)))
    plan.notes["complement_closed"] = True
    if apply_degree_fix(plan).ok:
        plan.claimed_d = n - k + 1
    plan.check()
    return assemble(plan, cap=cap), plan


def build_c3(n: int, m: int, seed: Optional[int] = None, cap: Optional[int] = None):
    """Degree-optimized variant: the two-piece function plus one block carrying a high-degree monomial."""
    k = k_degopt(n, m).require()
    check_cap(n, cap)
    h = n // 2
    rng = _rng(seed)
    t0 = masks_by_weight(h, m)
    e0, rest = _split_prefixes(h, t0.size, rng, t0)
    e1 = _extend(rest, h - k)
    t1 = masks_by_weight(k, m)
    # the linear coordinates i_1..i_{m+1} are the last m+1 variables
    low = (1 << (m + 1)) - 1
    t1_prime = t1[(t1 & low) != low]
    delta = e1[-1]
    others = e1[:-1]
    if others.size > t1_prime.size:
        raise Infeasible(f"{others.size} prefixes but only {t1_prime.size} admissible images", "degree-shifted capacity")
    img = _order(t1_prime, rng)[: others.size]
    mono = ((1 << k) - 1) ^ low
    plan = GmmPlan(
        n, m, "c3",
        [
            Piece(h, e0, _order(t0, rng), t0),
            Piece(k, others, img, t1_prime),
            Piece(k, np.array([delta]), np.array([low]), t1[(t1 & low) == low], monomial=mono),
        ],
        seed=seed, k=k,
        claimed_N=(1 << (n - 1)) - (1 << (h - 1)) - (1 << (k - 1)),
        claimed_d=n - m - 1,
    )
    plan.notes["linear_coords"] = list(range(n - m, n + 1))
    plan.notes["monomial_coords"] = list(range(n - k + 1, n - m))
    plan.notes["delta"] = int(delta)
    plan.check()
    return assemble(plan, cap=cap), plan


def build_generalized(profile: GmmProfile, seed: Optional[int] = None,
                      offsets: Optional[Mapping[int, object]] = None, cap: Optional[int] = None):
    """Tile F_2^n with the profile's pieces and fill each with injective images.

    ``offsets`` maps a suffix length i to g_i, given as a TruthTable on
    n - i variables or as an array of 2^(n-i) bits.
    """
    profile.validate()
    n, m = profile.n, profile.m
    check_cap(n, cap)
    rng = _rng(seed)
    tiling = make_prefix_tiling(n, [(n - i, e) for i, e in profile.pieces])
    pieces = []
    for i, e in profile.pieces:
        prefixes = tiling.assignment[n - i]
        pool = masks_by_weight(i, m)
        images = _order(pool, rng)[:e]
        g = None
        if offsets and i in offsets:
            table = offsets[i]
            bits = table.bits if isinstance(table, TruthTable) else np.asarray(table, dtype=np.uint8)
            if bits.size != 1 << (n - i):
                raise ValueError(f"offset for suffix length {i} must have 2^{n - i} entries")
            g = bits[prefixes]
        pieces.append(Piece(i, prefixes, images, pool, offsets=g))
    plan = GmmPlan(n, m, "gmm", pieces, seed=seed, claimed_N=profile.claimed_N)
    plan.notes["tiling"] = tiling.lengths
    plan.check()
    return assemble(plan, cap=cap), plan


def walsh_value_set_c1(n: int, k: int) -> set:
    """The values a two-piece spectrum may take."""
    a, b = 1 << (n // 2), 1 << k
    base = {0, b, a, a - b, a + b}
    return base | {-v for v in base}
