"""
Permutation statistics on integer sequences and on signed permutations.

Each statistic is computed from its primary definition. The alternate
characterizations (length by breadth-first search, NDes through length
comparisons, fdes three ways, fmaj through the flag factorization) are kept
alongside as independent checks.

>>> from signedstats.signed_perm import from_window
>>> rec = full_stats(from_window([-3, 1, -6, 2, -4, -5]))
>>> rec.inv, rec.length, rec.nmaj, rec.fmaj
(9, 27, 29, 26)
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import astuple, dataclass, fields
from typing import Sequence

from .signed_perm import (
    SignedPermutation, compose, doubled_window, flag_decompose,
    generator, identity, inverse, reflection_eta,
)

__all__ = [
    "STAT_NAMES", "StatRecord", "NDesMultiset",
    "seq_inv", "seq_descent_set", "seq_des", "seq_maj",
    "neg_set", "neg_sum", "classic_stats", "ClassicStats",
    "stat_length", "length_oracle_bfs", "stat_des_B", "epsilon_1",
    "ndes_multiset", "ndes_multiset_coxeter", "negative_stats",
    "stat_fmaj", "fmaj_by_exponents", "stat_fdes", "fdes_via_des_B",
    "fdes_via_doubled_window", "full_stats", "stat_value", "fmaj_signed_order",
]

BFS_MAX_RANK = 5


def seq_inv(s: Sequence[int]) -> int:
    """
    Number of pairs i < j with s_i > s_j.

    >>> seq_inv((-3, 1, -6, 2, -4, -5))
    9
    """
    n = len(s)
    return sum(1 for i in range(n) for j in range(i + 1, n) if s[i] > s[j])


def seq_descent_set(s: Sequence[int]) -> frozenset[int]:
    """Positions i (1-based) with s_i > s_{i+1}."""
    return frozenset(i for i in range(1, len(s)) if s[i - 1] > s[i])


def seq_des(s: Sequence[int]) -> int:
    return len(seq_descent_set(s))


def seq_maj(s: Sequence[int]) -> int:
    return sum(seq_descent_set(s))


def neg_set(p: SignedPermutation) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(p.window, start=1) if a < 0)


def neg_sum(p: SignedPermutation) -> int:
    """-(sum of p(i) over negative positions); a nonnegative integer."""
    return -sum(a for a in p.window if a < 0)


@dataclass(frozen=True)
class ClassicStats:
    inv: int
    des_A: int
    maj_A: int
    Neg: frozenset[int]
    neg: int


def classic_stats(p: SignedPermutation) -> ClassicStats:
    w = p.window
    negs = neg_set(p)
    return ClassicStats(seq_inv(w), seq_des(w), seq_maj(w), negs, len(negs))


def stat_length(p: SignedPermutation) -> int:
    """Coxeter length: inv of the window minus the sum of its negative entries."""
    return seq_inv(p.window) + neg_sum(p)


def length_oracle_bfs(n: int, max_rank: int = BFS_MAX_RANK) -> dict[SignedPermutation, int]:
    """
    Word length of every element of B_n, by breadth-first search on the
    Cayley graph with generators s_0, ..., s_{n-1}.
    """
    if n > max_rank:
        raise ValueError(f"BFS length oracle refuses n = {n} > {max_rank}")
    gens = [generator(n, i) for i in range(n)]
    start = identity(n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        d = dist[p] + 1
        for g in gens:
            q = compose(p, g)
            if q not in dist:
                dist[q] = d
                queue.append(q)
    return dist


def epsilon_1(p: SignedPermutation) -> int:
    return 1 if p.window[0] < 0 else 0


def stat_des_B(p: SignedPermutation) -> int:
    """Descents of (0, p(1), ..., p(n)), counting position 0."""
    return seq_des((0,) + p.window)


class NDesMultiset(Counter):
    """
    The negative descent multiset: value -> multiplicity (1 or 2).

    >>> from signedstats.signed_perm import from_window
    >>> str(ndes_multiset(from_window([-3, 1, -6, 2, -4, -5])))
    '{2,3,4^2,5^2,6}'
    """

    def __init__(self, counts=(), n: int | None = None):
        super().__init__(counts)
        for v in [v for v, m in self.items() if m == 0]:
            del self[v]
        for v, m in self.items():
            if not 1 <= m <= 2:
                raise ValueError(f"NDes multiplicity of {v} is {m}, must be 1 or 2")
            if n is not None and not 1 <= v <= n:
                raise ValueError(f"NDes value {v} outside [1, {n}]")
            if n is not None and v == n and m == 2:
                raise ValueError(f"value {n} can only come from a negative entry")

    def cardinality(self) -> int:
        return sum(self.values())

    def total(self) -> int:
        return sum(v * m for v, m in self.items())

    def as_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.items())

    def __str__(self):
        parts = [str(v) if m == 1 else f"{v}^{m}" for v, m in self.as_pairs()]
        return "{" + ",".join(parts) + "}"


def ndes_multiset(p: SignedPermutation) -> NDesMultiset:
    c = Counter(seq_descent_set(p.window))
    c.update(-a for a in p.window if a < 0)
    return NDesMultiset(c, n=p.n)


def ndes_multiset_coxeter(p: SignedPermutation) -> NDesMultiset:
    """NDes via length drops: right descents, plus eta_i with l(p^-1 eta_i) < l(p^-1)."""
    n = p.n
    lp = stat_length(p)
    c = Counter(i for i in range(1, n) if stat_length(compose(p, generator(n, i))) < lp)
    pinv = inverse(p)
    linv = stat_length(pinv)
    c.update(i for i in range(1, n + 1)
             if stat_length(compose(pinv, reflection_eta(n, i))) < linv)
    return NDesMultiset(c, n=n)


def negative_stats(p: SignedPermutation) -> tuple[int, int]:
    """(ndes, nmaj): size and element sum (with multiplicity) of NDes."""
    m = ndes_multiset(p)
    return m.cardinality(), m.total()


def stat_fmaj(p: SignedPermutation) -> int:
    w = p.window
    return 2 * seq_maj(w) + sum(1 for a in w if a < 0)


def fmaj_by_exponents(p: SignedPermutation) -> int:
    """The flag major index as the exponent sum of the t_i factorization."""
    return flag_decompose(p).total()


def fmaj_signed_order(p: SignedPermutation) -> int:
    """
    2 maj + neg with maj taken in the order -1 < -2 < ... < -n < 1 < ... < n.

    This, not the usual-order ``stat_fmaj``, is what the exponent sum of the
    t_i factorization equals element by element; the two agree in
    distribution over B_n.

    >>> from signedstats.signed_perm import from_window
    >>> p = from_window([-1, -2])
    >>> stat_fmaj(p), fmaj_signed_order(p), fmaj_by_exponents(p)
    (4, 2, 2)
    """
    n = p.n
    keyed = [a if a > 0 else -2 * n - 1 - a for a in p.window]
    return 2 * seq_maj(keyed) + sum(1 for a in p.window if a < 0)


def stat_fdes(p: SignedPermutation) -> int:
    return 2 * seq_des(p.window) + epsilon_1(p)


def fdes_via_des_B(p: SignedPermutation) -> int:
    return seq_des(p.window) + stat_des_B(p)


def fdes_via_doubled_window(p: SignedPermutation) -> int:
    return seq_des(doubled_window(p))


@dataclass(frozen=True)
class StatRecord:
    inv: int
    des_A: int
    maj_A: int
    neg: int
    length: int
    des_B: int
    ndes: int
    nmaj: int
    fdes: int
    fmaj: int

    def as_tuple(self) -> tuple[int, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def check_invariants(self, negative_total: int):
        """``negative_total`` is -(sum of the negative window entries)."""
        assert self.fmaj == 2 * self.maj_A + self.neg
        assert self.nmaj == self.maj_A + negative_total
        assert self.fdes == self.des_A + self.des_B
        assert self.ndes == self.des_A + self.neg


STAT_NAMES = tuple(f.name for f in fields(StatRecord))


def full_stats(p: SignedPermutation) -> StatRecord:
    c = classic_stats(p)
    ndes, nmaj = negative_stats(p)
    return StatRecord(
        inv=c.inv, des_A=c.des_A, maj_A=c.maj_A, neg=c.neg,
        length=stat_length(p), des_B=stat_des_B(p),
        ndes=ndes, nmaj=nmaj, fdes=stat_fdes(p), fmaj=stat_fmaj(p),
    )


_SCALAR = {
    "inv": lambda p: seq_inv(p.window),
    "des_A": lambda p: seq_des(p.window),
    "maj_A": lambda p: seq_maj(p.window),
    "neg": lambda p: len(neg_set(p)),
    "length": stat_length,
    "des_B": stat_des_B,
    "ndes": lambda p: negative_stats(p)[0],
    "nmaj": lambda p: negative_stats(p)[1],
    "fdes": stat_fdes,
    "fmaj": stat_fmaj,
}


def stat_value(name: str, p: SignedPermutation) -> int:
    try:
        return _SCALAR[name](p)
    except KeyError:
        raise ValueError(f"unknown statistic {name!r}; choose from {', '.join(STAT_NAMES)}") from None

