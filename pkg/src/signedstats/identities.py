"""
Joint distribution polynomials over S_n and B_n, and exact checks of the
Euler-Mahonian identities for the negative and flag statistics.

Distributions are summed by a vectorised kernel over contiguous chunks of the
enumeration order; each chunk yields its own BiPoly and chunks are merged by
exact addition, so the result does not depend on the number of workers.

>>> str(distribution(DistributionSpec("B", 2, "fdes", "fmaj")))
'1 + 2*t*q + t*q^2 + t^2*q^2 + 2*t^2*q^3 + t^3*q^4'
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, NamedTuple

import numpy as np

from . import statistics as st
from .polyring import (
    BiPoly, Discrepancy, DEFAULT_ORDER, carlitz_lhs, delta_t, denominator_carlitz,
    denominator_flag, poly_first_discrepancy, product_one_plus_tq, q_integer,
    series_first_discrepancy, series_mul_poly, series_reciprocal,
)
from .signed_perm import (
    DEFAULT_RANK_CAP, SignedPermutation, check_rank, chunk_ranges, compose,
    enumerate_group, factor_parabolic, from_window, group_order,
)

__all__ = [
    "DistributionSpec", "Verdict", "IDENTITY_IDS", "distribution",
    "distribution_by_elements", "a_poly_recursive", "s_poly_recursive",
    "s_poly_product", "InsertionStats", "insert_value", "insertion_stats",
    "insertion_prediction", "d_i", "descent_telescope", "ascent_telescope",
    "insertion_block_sum", "insertion_block_closed_form", "verify",
    "verify_many", "default_workers",
]


def default_workers() -> int:
    return os.cpu_count() or 1


# -- distributions ---------------------------------------------------------

@dataclass(frozen=True)
class DistributionSpec:
    group: str
    n: int
    t_stat: str | None = None
    q_stat: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "group", str(self.group).upper())
        if self.group not in ("S", "B"):
            raise ValueError(f"group must be 'S' or 'B', got {self.group!r}")
        if self.t_stat is None and self.q_stat is None:
            raise ValueError("a distribution needs at least one of t_stat, q_stat")
        for name in (self.t_stat, self.q_stat):
            if name is not None and name not in st.STAT_NAMES:
                raise ValueError(
                    f"unknown statistic {name!r}; choose from {', '.join(st.STAT_NAMES)}")


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    # all of S_n in lexicographic order, one window per row
    return np.array(list(permutations(range(1, n + 1))), dtype=np.int16).reshape(-1, n)


def _windows(n: int, start: int, stop: int) -> np.ndarray:
    fact = math.factorial(n)
    g = np.arange(start, stop, dtype=np.int64)
    signs, ranks = np.divmod(g, fact)
    w = _perm_table(n)[ranks]
    bits = (signs[:, None] >> np.arange(n - 1, -1, -1, dtype=np.int64)) & 1
    return np.where(bits == 1, -w, w)


def _stat_arrays(w: np.ndarray, names: set[str]) -> dict[str, np.ndarray]:
    n = w.shape[1]
    out: dict[str, np.ndarray] = {}
    desc = w[:, :-1] > w[:, 1:]
    des = desc.sum(axis=1)
    maj = desc.astype(np.int64) @ np.arange(1, n, dtype=np.int64) if n > 1 else np.zeros(len(w), np.int64)
    negmask = w < 0
    neg = negmask.sum(axis=1)
    negtotal = -(w * negmask).sum(axis=1, dtype=np.int64)
    eps1 = negmask[:, 0].astype(np.int64)
    if "inv" in names or "length" in names:
        inv = np.zeros(len(w), dtype=np.int64)
        for i in range(n - 1):
            inv += (w[:, i:i + 1] > w[:, i + 1:]).sum(axis=1)
        out["inv"] = inv
        out["length"] = inv + negtotal
    out["des_A"] = des
    out["maj_A"] = maj
    out["neg"] = neg
    out["des_B"] = des + eps1
    out["ndes"] = des + neg
    out["nmaj"] = maj + negtotal
    out["fdes"] = 2 * des + eps1
    out["fmaj"] = 2 * maj + neg
    return out


def _chunk_distribution(spec: DistributionSpec, start: int, stop: int) -> BiPoly:
    w = _windows(spec.n, start, stop)
    stats = _stat_arrays(w, {spec.t_stat, spec.q_stat})
    zero = np.zeros(len(w), dtype=np.int64)
    te = stats[spec.t_stat] if spec.t_stat else zero
    qe = stats[spec.q_stat] if spec.q_stat else zero
    width = int(qe.max()) + 1
    keys, counts = np.unique(te.astype(np.int64) * width + qe, return_counts=True)
    return BiPoly(((int(k % width), int(k // width)), int(c)) for k, c in zip(keys, counts))


# rows per chunk; bounds the kernel's working memory independently of n
_CHUNK_ROWS = 1 << 16


def distribution(spec: DistributionSpec, workers: int | None = None,
                 rank_cap: int = DEFAULT_RANK_CAP) -> BiPoly:
    """
    Sum of t^{t_stat} q^{q_stat} over the group, as an exact polynomial.

    >>> str(distribution(DistributionSpec("S", 3, "des_A", "maj_A")))
    '1 + 2*t*q + 2*t*q^2 + t^2*q^3'
    """
    check_rank(spec.n, rank_cap)
    workers = workers or default_workers()
    total = group_order(spec.n, spec.group)
    nchunks = max(workers, -(-total // _CHUNK_ROWS))
    ranges = chunk_ranges(spec.n, spec.group, nchunks)
    if workers == 1 or len(ranges) == 1:
        parts = [_chunk_distribution(spec, r.start, r.stop) for r in ranges]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _chunk_distribution(spec, r.start, r.stop), ranges))
    result = BiPoly()
    for part in parts:
        result = result + part
    return result


def distribution_by_elements(spec: DistributionSpec, rank_cap: int = DEFAULT_RANK_CAP) -> BiPoly:
    """Slow reference: one element at a time through the scalar statistics."""
    acc: dict[tuple[int, int], int] = {}
    for p in enumerate_group(spec.n, spec.group, rank_cap):
        key = (st.stat_value(spec.q_stat, p) if spec.q_stat else 0,
               st.stat_value(spec.t_stat, p) if spec.t_stat else 0)
        acc[key] = acc.get(key, 0) + 1
    return BiPoly(acc)


# -- recursions and product formulas --------------------------------------

_t = BiPoly.t()
_q = BiPoly.q()


@lru_cache(maxsize=None)
def a_poly_recursive(n: int) -> BiPoly:
    """Carlitz-Gessel recursion for sum over S_n of t^des q^maj, from A_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return BiPoly.const(1)
    prev = a_poly_recursive(n - 1)
    return (1 + _t * _q * q_integer(n - 1)) * prev + _t * _q * (1 - _t) * delta_t(prev)


@lru_cache(maxsize=None)
def s_poly_recursive(n: int) -> BiPoly:
    """Recursion for sum over B_n of t^fdes q^fmaj, from S_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return BiPoly.const(1)
    prev = s_poly_recursive(n - 1)
    tq = _t * _q
    first = 1 + tq + _t ** 2 * _q ** 2 * q_integer(2 * n - 2)
    return first * prev + tq * (1 - _t) * (1 + tq) * delta_t(prev)


def s_poly_product(n: int) -> BiPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    return product_one_plus_tq(n) * a_poly_recursive(n)


# -- insertion of +-n into an element of B_{n-1} ----------------------------

class InsertionStats(NamedTuple):
    fdes: int
    maj_A: int


def insert_value(sigma: SignedPermutation, i: int, sign: int) -> SignedPermutation:
    """Place sign * n at position i of sigma in B_{n-1}, shifting the tail right."""
    n = sigma.n + 1
    if not 1 <= i <= n:
        raise ValueError(f"insertion position {i} outside [1, {n}]")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    w = sigma.window
    return from_window(w[:i - 1] + (sign * n,) + w[i - 1:])


def insertion_stats(sigma: SignedPermutation, i: int, sign: int) -> InsertionStats:
    p = insert_value(sigma, i, sign)
    return InsertionStats(st.stat_fdes(p), st.seq_maj(p.window))


def d_i(sigma: SignedPermutation, i: int) -> int:
    """Number of descents of sigma at positions >= i."""
    return sum(1 for j in st.seq_descent_set(sigma.window) if j >= i)


def insertion_prediction(sigma: SignedPermutation, i: int, sign: int) -> InsertionStats:
    """fdes and maj_A of the inserted element from the closed-form increments."""
    n = sigma.n + 1
    if not 1 <= i <= n:
        raise ValueError(f"insertion position {i} outside [1, {n}]")
    fd = st.stat_fdes(sigma)
    maj = st.seq_maj(sigma.window)
    w = sigma.window
    pos_first = 1 if w[0] > 0 else 0
    if i == n:
        return InsertionStats(fd, maj) if sign > 0 else InsertionStats(fd + 2, maj + n - 1)
    if i == 1:
        fdes = fd + 1 + pos_first if sign > 0 else fd + pos_first
    else:
        fdes = fd + 2 * (w[i - 2] < w[i - 1])
    ascent = (i - 1) * (i > 1 and w[i - 2] < w[i - 1])
    maj_new = maj + d_i(sigma, i) + ascent + (1 if sign > 0 else 0)
    return InsertionStats(fdes, maj_new)


def descent_telescope(sigma: SignedPermutation) -> tuple[BiPoly, BiPoly]:
    """Both sides of: sum over descents i-1 of q^(2 d_i) = sum_{k=1}^{des} q^(2(k-1))."""
    n = sigma.n + 1
    w = sigma.window
    lhs = BiPoly()
    for i in range(2, n):
        if w[i - 2] > w[i - 1]:
            lhs = lhs + BiPoly.q(2 * d_i(sigma, i))
    des = st.seq_des(w)
    rhs = BiPoly({(2 * (k - 1), 0): 1 for k in range(1, des + 1)})
    return lhs, rhs


def ascent_telescope(sigma: SignedPermutation) -> tuple[BiPoly, BiPoly]:
    """Both sides of: sum over ascents of q^(2(d_i + i)) = sum_{k=1}^{a} q^(2(n-k))."""
    n = sigma.n + 1
    w = sigma.window
    lhs = BiPoly()
    for i in range(2, n):
        if w[i - 2] < w[i - 1]:
            lhs = lhs + BiPoly.q(2 * (d_i(sigma, i) + i))
    a = n - 2 - st.seq_des(w)
    rhs = BiPoly({(2 * (n - k), 0): 1 for k in range(1, a + 1)})
    return lhs, rhs


def insertion_block_sum(sigma: SignedPermutation) -> BiPoly:
    """sum_{i=1}^{n} t^fdes q^fmaj over sigma_i and sigma_{-i}, by direct construction."""
    n = sigma.n + 1
    out = BiPoly()
    for i in range(1, n + 1):
        for sign in (1, -1):
            p = insert_value(sigma, i, sign)
            out = out + BiPoly.monomial(st.stat_fmaj(p), st.stat_fdes(p))
    return out


def insertion_block_closed_form(sigma: SignedPermutation) -> BiPoly:
    """
    The same block in closed form:
    t^fd q^fmaj (1 + q[fd]_q + tq + tq(q-1)[fd]_q + t^2 q^2 ([2n-2]_q - [fd]_q)).
    """
    n = sigma.n + 1
    fd = st.stat_fdes(sigma)
    fm = st.stat_fmaj(sigma)
    qfd = q_integer(fd)
    inner = (1 + _q * qfd + _t * _q + _t * _q * (_q - 1) * qfd
             + _t ** 2 * _q ** 2 * (q_integer(2 * n - 2) - qfd))
    return BiPoly.monomial(fm, fd) * inner


# -- verification ----------------------------------------------------------

@dataclass
class Verdict:
    identity_id: str
    n: int
    order: int | None
    passed: bool
    first_discrepancy: Discrepancy | None = None
    elapsed: float = 0.0
    witness: str | None = None
    lhs: BiPoly | None = field(default=None, repr=False)
    rhs: BiPoly | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.passed != (self.first_discrepancy is None):
            raise ValueError("a verdict passes exactly when it has no discrepancy")


@dataclass(frozen=True)
class _Identity:
    check: Callable
    series: bool = False
    max_n: int | None = None
    description: str = ""


def _dist(group, n, t_stat, q_stat, workers, rank_cap):
    return distribution(DistributionSpec(group, n, t_stat, q_stat), workers, rank_cap)


def _poly_check(lhs: BiPoly, rhs: BiPoly):
    return poly_first_discrepancy(lhs, rhs), lhs, rhs, None


def _series_check(n, order, numerator: BiPoly, denominator: BiPoly):
    lhs = carlitz_lhs(n, order)
    rhs = series_mul_poly(series_reciprocal(denominator, order), numerator)
    return series_first_discrepancy(lhs, rhs), lhs.to_poly(), rhs.to_poly(), None


def _elementwise(n, f: Callable, g: Callable, rank_cap, group="B"):
    # f == g on every element  <=>  sum t^f q^g equals sum t^f q^f
    joint: dict[tuple[int, int], int] = {}
    diag: dict[tuple[int, int], int] = {}
    witness = None
    for p in enumerate_group(n, group, rank_cap):
        a, b = f(p), g(p)
        joint[(b, a)] = joint.get((b, a), 0) + 1
        diag[(a, a)] = diag.get((a, a), 0) + 1
        if witness is None and a != b:
            witness = str(p)
    lhs, rhs = BiPoly(diag), BiPoly(joint)
    return poly_first_discrepancy(lhs, rhs), lhs, rhs, witness


def _check_macmahon(n, order, workers, rank_cap):
    return _poly_check(_dist("S", n, None, "inv", workers, rank_cap),
                       _dist("S", n, None, "maj_A", workers, rank_cap))


def _check_thm23(n, order, workers, rank_cap):
    return _series_check(n, order, _dist("S", n, "des_A", "maj_A", workers, rank_cap),
                         denominator_carlitz(n))


def _check_prop31(n, order, workers, rank_cap):
    return _poly_check(_dist("B", n, None, "nmaj", workers, rank_cap),
                       _dist("B", n, None, "length", workers, rank_cap))


def _check_thm32(n, order, workers, rank_cap):
    return _series_check(n, order, _dist("B", n, "ndes", "nmaj", workers, rank_cap),
                         denominator_flag(n))


def _check_thm32_product(n, order, workers, rank_cap):
    a_n = _dist("S", n, "des_A", "maj_A", workers, rank_cap)
    return _poly_check(_dist("B", n, "ndes", "nmaj", workers, rank_cap),
                       product_one_plus_tq(n) * a_n)


def _check_thm21(n, order, workers, rank_cap):
    return _elementwise(n, st.stat_fmaj, st.fmaj_by_exponents, rank_cap)


def _check_thm41(n, order, workers, rank_cap):
    return _poly_check(_dist("B", n, "fdes", "fmaj", workers, rank_cap), s_poly_recursive(n))


def _check_thm42(n, order, workers, rank_cap):
    return _series_check(n, order, _dist("B", n, "fdes", "fmaj", workers, rank_cap),
                         denominator_flag(n))


def _check_thm43(n, order, workers, rank_cap):
    return _poly_check(_dist("B", n, "fdes", "fmaj", workers, rank_cap), s_poly_product(n))


def _check_cor44(n, order, workers, rank_cap):
    return _poly_check(_dist("B", n, "ndes", "nmaj", workers, rank_cap),
                       _dist("B", n, "fdes", "fmaj", workers, rank_cap))


def _check_cor45(n, order, workers, rank_cap):
    length = _dist("B", n, None, "length", workers, rank_cap)
    nmaj = _dist("B", n, None, "nmaj", workers, rank_cap)
    fmaj = _dist("B", n, None, "fmaj", workers, rank_cap)
    found = poly_first_discrepancy(length, nmaj)
    if found is not None:
        return found, length, nmaj, None
    return poly_first_discrepancy(length, fmaj), length, fmaj, None


def _check_decomp26(n, order, workers, rank_cap):
    # the map B_n -> T x S_n is a well-defined injection between sets of equal size
    pairs = set()
    witness = None
    for p in enumerate_group(n, "B", rank_cap):
        f = factor_parabolic(p)
        ok = (st.seq_des(f.sigma.window) == 0 and f.u.is_unsigned
              and compose(f.sigma, f.u) == p)
        if ok:
            pairs.add((f.sigma, f.u))
        elif witness is None:
            witness = str(p)
    lhs = BiPoly.const(2 ** n * math.factorial(n))
    rhs = BiPoly.const(len(pairs))
    return poly_first_discrepancy(lhs, rhs), lhs, rhs, witness


# The BFS oracle is run up to rank 6 here (46080 vertices); beyond that the
# length27 check refuses.
LENGTH27_MAX_RANK = 6


def _check_length27(n, order, workers, rank_cap):
    if n > LENGTH27_MAX_RANK:
        raise ValueError(f"length27 uses the BFS oracle, limited to n <= {LENGTH27_MAX_RANK}")
    bfs = st.length_oracle_bfs(n, max_rank=LENGTH27_MAX_RANK)
    return _elementwise(n, st.stat_length, bfs.__getitem__, rank_cap)


_IDENTITIES: dict[str, _Identity] = {
    "macmahon": _Identity(_check_macmahon, description="sum q^inv = sum q^maj over S_n"),
    "thm23": _Identity(_check_thm23, series=True,
                       description="sum [r+1]^n t^r = A_n / prod_{i=0}^{n} (1 - t q^i)"),
    "prop31": _Identity(_check_prop31, description="sum q^nmaj = sum q^length over B_n"),
    "thm32": _Identity(_check_thm32, series=True,
                       description="sum [r+1]^n t^r = sum t^ndes q^nmaj / ((1-t) prod (1 - t^2 q^2i))"),
    "thm32_product": _Identity(_check_thm32_product,
                               description="sum t^ndes q^nmaj = prod (1 + t q^i) A_n"),
    "thm21": _Identity(_check_thm21, description="fmaj = 2 maj_A + neg = flag exponent sum"),
    "thm41": _Identity(_check_thm41, description="sum t^fdes q^fmaj satisfies the S_n recursion"),
    "thm42": _Identity(_check_thm42, series=True,
                       description="sum [r+1]^n t^r = S_n / ((1-t) prod (1 - t^2 q^2i))"),
    "thm43": _Identity(_check_thm43, description="sum t^fdes q^fmaj = prod (1 + t q^i) A_n"),
    "cor44": _Identity(_check_cor44, description="(ndes, nmaj) ~ (fdes, fmaj) over B_n"),
    "cor45": _Identity(_check_cor45, description="length, nmaj and fmaj are equidistributed"),
    "decomp26": _Identity(_check_decomp26, description="B_n = T x S_n via factor_parabolic"),
    "length27": _Identity(_check_length27, max_n=LENGTH27_MAX_RANK,
                          description="inv - sum of negative entries = word length (BFS)"),
}

IDENTITY_IDS = tuple(_IDENTITIES)


def identity_max_n(identity_id: str) -> int | None:
    return _lookup(identity_id).max_n


def describe(identity_id: str) -> str:
    return _lookup(identity_id).description


def _lookup(identity_id: str) -> _Identity:
    try:
        return _IDENTITIES[identity_id]
    except KeyError:
        raise ValueError(
            f"unknown identity {identity_id!r}; valid ids: {', '.join(IDENTITY_IDS)}") from None


def verify(identity_id: str, n: int, order: int = DEFAULT_ORDER, workers: int | None = None,
           rank_cap: int = DEFAULT_RANK_CAP) -> Verdict:
    """
    Check one identity at rank n; series identities are compared through t^order.

    >>> v = verify("cor44", 2)
    >>> v.passed, str(v.lhs)
    (True, '1 + 2*t*q + t*q^2 + t^2*q^2 + 2*t^2*q^3 + t^3*q^4')
    """
    ident = _lookup(identity_id)
    check_rank(n, rank_cap)
    if ident.series and order < 0:
        raise ValueError("truncation order must be >= 0")
    start = time.perf_counter()
    found, lhs, rhs, witness = ident.check(n, order, workers, rank_cap)
    elapsed = time.perf_counter() - start
    return Verdict(identity_id, n, order if ident.series else None, found is None,
                   found, elapsed, witness, lhs, rhs)


def verify_many(ids, n_values, order: int = DEFAULT_ORDER, workers: int | None = None,
                rank_cap: int = DEFAULT_RANK_CAP, skip_out_of_range: bool = False) -> list[Verdict]:
    """Verdicts for every (id, n), ids outer. Out-of-range ids are skipped when asked."""
    out = []
    for ident in ids:
        limit = _lookup(ident).max_n
        for n in n_values:
            if skip_out_of_range and limit is not None and n > limit:
                continue
            out.append(verify(ident, n, order, workers, rank_cap))
    return out
