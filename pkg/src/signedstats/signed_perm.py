"""
Signed permutations of [n] (the hyperoctahedral group B_n) in window notation.

An element is stored as its window ``(pi(1), ..., pi(n))``; values at negative
arguments come from the odd extension ``pi(-a) = -pi(a)``. Elements of S_n are
the windows with no negative entry.

Products follow function composition: ``compose(a, b)(i) == a(b(i))``, so
``compose(a, b)`` applies ``b`` first.

>>> p = from_window([-3, 1, -6, 2, -4, -5])
>>> p.n, p(-1), p(3)
(6, 3, -6)
>>> compose(from_window([2, 1, 3]), from_window([1, 3, 2]))
SignedPermutation(2, 3, 1)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "DEFAULT_RANK_CAP", "RankCapError",
    "SignedPermutation", "FlagExponents", "ParabolicFactorization",
    "from_window", "parse_window", "format_window", "identity",
    "compose", "inverse", "generator", "reflection_eta", "element_t",
    "flag_decompose", "compose_from_exponents", "factor_parabolic",
    "doubled_window", "group_order", "check_rank", "enumerate_group",
    "chunk_ranges", "enumerate_range", "unrank",
]

DEFAULT_RANK_CAP = 9


class RankCapError(ValueError):
    """Raised when an exhaustive computation would exceed the rank cap."""


@dataclass(frozen=True)
class SignedPermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(self.window)
        object.__setattr__(self, "window", window)
        n = len(window)
        if n == 0:
            raise ValueError("a signed permutation needs rank n >= 1")
        seen: dict[int, int] = {}
        for pos, value in enumerate(window, start=1):
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"position {pos}: {value!r} is not an integer")
            if value == 0:
                raise ValueError(f"position {pos}: zero entry")
            if abs(value) > n:
                raise ValueError(f"position {pos}: |{value}| exceeds rank {n}")
            if abs(value) in seen:
                raise ValueError(
                    f"position {pos}: duplicate absolute value {abs(value)} "
                    f"(already at position {seen[abs(value)]})")
            seen[abs(value)] = pos

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.window[i - 1]
        if i < 0:
            return -self.window[-i - 1]
        raise ValueError("signed permutations are not defined at 0")

    def __mul__(self, other: SignedPermutation) -> SignedPermutation:
        return compose(self, other)

    def __iter__(self):
        return iter(self.window)

    def __len__(self):
        return len(self.window)

    def __repr__(self):
        return f"SignedPermutation({', '.join(map(str, self.window))})"

    def __str__(self):
        return format_window(self)

    @property
    def is_unsigned(self) -> bool:
        """True when the element lies in the subgroup S_n."""
        return all(a > 0 for a in self.window)


def _trusted(window: tuple[int, ...]) -> SignedPermutation:
    # skip validation for windows built internally from valid elements
    p = object.__new__(SignedPermutation)
    object.__setattr__(p, "window", window)
    return p


def from_window(values: Iterable[int]) -> SignedPermutation:
    return SignedPermutation(tuple(values))


def parse_window(text: str) -> SignedPermutation:
    """
    Parse comma-separated signed integers, e.g. ``"-3,1,-6,2,-4,-5"``.

    >>> parse_window(" 1, -2 ")
    SignedPermutation(1, -2)
    """
    tokens = [tok.strip() for tok in text.split(",")]
    values = []
    for pos, tok in enumerate(tokens, start=1):
        try:
            values.append(int(tok))
        except ValueError:
            raise ValueError(f"position {pos}: cannot parse {tok!r} as an integer") from None
    return from_window(values)


def format_window(p: SignedPermutation) -> str:
    return ",".join(str(a) for a in p.window)


def identity(n: int) -> SignedPermutation:
    return _trusted(tuple(range(1, n + 1)))


def compose(a: SignedPermutation, b: SignedPermutation) -> SignedPermutation:
    if a.n != b.n:
        raise ValueError(f"rank mismatch: {a.n} vs {b.n}")
    wa = a.window
    return _trusted(tuple(wa[x - 1] if x > 0 else -wa[-x - 1] for x in b.window))


def inverse(a: SignedPermutation) -> SignedPermutation:
    out = [0] * a.n
    for i, x in enumerate(a.window, start=1):
        if x > 0:
            out[x - 1] = i
        else:
            out[-x - 1] = -i
    return _trusted(tuple(out))


def _check_index(i: int, lo: int, hi: int, what: str):
    if not lo <= i <= hi:
        raise ValueError(f"{what} index {i} outside [{lo}, {hi}]")


def generator(n: int, i: int) -> SignedPermutation:
    """The Coxeter generator s_i: s_0 negates 1, s_i swaps i and i+1."""
    _check_index(i, 0, n - 1, "generator")
    w = list(range(1, n + 1))
    if i == 0:
        w[0] = -1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return _trusted(tuple(w))


def reflection_eta(n: int, i: int) -> SignedPermutation:
    _check_index(i, 1, n, "reflection")
    w = list(range(1, n + 1))
    w[i - 1] = -i
    return _trusted(tuple(w))


def element_t(n: int, i: int) -> SignedPermutation:
    """
    t_i = s_i s_{i-1} ... s_0, whose window is [-i-1, 1, 2, ..., i, i+2, ..., n].

    >>> element_t(3, 2)
    SignedPermutation(-3, 1, 2)
    """
    _check_index(i, 0, n - 1, "t")
    return _trusted((-(i + 1),) + tuple(range(1, i + 1)) + tuple(range(i + 2, n + 1)))


def _t_power(n: int, i: int, k: int) -> SignedPermutation:
    # t_i rotates 1 -> -(i+1) -> -i -> ... -> -1 -> i+1 -> i -> ... -> 1
    m = i + 1
    k %= 2 * m
    cycle = list(range(m, 0, -1)) + list(range(-m, 0))  # orbit of m under t_i
    pos = {v: j for j, v in enumerate(cycle)}
    w = [cycle[(pos[x] + k) % (2 * m)] for x in range(1, m + 1)]
    return _trusted(tuple(w) + tuple(range(m + 1, n + 1)))


@dataclass(frozen=True)
class FlagExponents:
    """Exponents (k_0, ..., k_{n-1}) with pi = t_{n-1}^{k_{n-1}} ... t_0^{k_0}."""
    ks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(self.ks))
        for i, k in enumerate(self.ks):
            if not 0 <= k <= 2 * i + 1:
                raise ValueError(f"exponent k_{i} = {k} outside [0, {2 * i + 1}]")

    @property
    def n(self) -> int:
        return len(self.ks)

    def __iter__(self):
        return iter(self.ks)

    def total(self) -> int:
        return sum(self.ks)


def flag_decompose(p: SignedPermutation) -> FlagExponents:
    """
    Peel off the leftmost factor t_{m-1}^{k} for m = n, n-1, ..., 1.

    The remaining product t_{m-2}^{...} ... t_0^{...} fixes m, so
    ``p(m) = t_{m-1}^k(m)``, which pins down k.

    >>> flag_decompose(from_window([1, -2])).ks
    (1, 2)
    """
    w = list(p.window)
    ks = [0] * p.n
    for m in range(p.n, 0, -1):
        v = w[m - 1]
        k = m - v if v > 0 else 2 * m + v
        ks[m - 1] = k
        if k:
            # w <- t_{m-1}^{-k} w on the first m values
            undo = _t_power(m, m - 1, -k).window
            w = [undo[x - 1] if x > 0 else -undo[-x - 1] for x in w[:m]] + w[m:]
        if w[m - 1] != m:
            raise AssertionError(f"flag peeling failed at m={m} for {p!r}")
    return FlagExponents(tuple(ks))


def compose_from_exponents(e: FlagExponents | Sequence[int]) -> SignedPermutation:
    if not isinstance(e, FlagExponents):
        e = FlagExponents(tuple(e))
    n = e.n
    result = identity(n)
    for i in range(n - 1, -1, -1):
        if e.ks[i]:
            result = compose(result, _t_power(n, i, e.ks[i]))
    return result


@dataclass(frozen=True)
class ParabolicFactorization:
    sigma: SignedPermutation  # increasing window, a minimal coset representative
    u: SignedPermutation      # element of S_n

    def product(self) -> SignedPermutation:
        return compose(self.sigma, self.u)


def factor_parabolic(p: SignedPermutation) -> ParabolicFactorization:
    """
    Write p = sigma u with sigma's window increasing and u unsigned.

    >>> f = factor_parabolic(from_window([-3, 1, -6, 2, -4, -5]))
    >>> f.sigma, f.u
    (SignedPermutation(-6, -5, -4, -3, 1, 2), SignedPermutation(4, 5, 1, 6, 3, 2))
    """
    values = sorted(p.window)
    rank = {v: j for j, v in enumerate(values, start=1)}
    return ParabolicFactorization(_trusted(tuple(values)),
                                  _trusted(tuple(rank[v] for v in p.window)))


def doubled_window(p: SignedPermutation) -> tuple[int, ...]:
    """The sequence (p(-n), ..., p(-1), p(1), ..., p(n))."""
    return tuple(-a for a in reversed(p.window)) + p.window


def group_order(n: int, which: str) -> int:
    which = _which(which)
    return math.factorial(n) * (2 ** n if which == "B" else 1)


def _which(which: str) -> str:
    w = str(which).upper()
    if w not in ("S", "B"):
        raise ValueError(f"group must be 'S' or 'B', got {which!r}")
    return w


def check_rank(n: int, rank_cap: int = DEFAULT_RANK_CAP):
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")
    if n > rank_cap:
        raise RankCapError(f"rank {n} exceeds the rank cap {rank_cap}; raise it with --rank-cap")


# Enumeration order: B_n is sign pattern (outer, binary counting with the
# first position as the most significant bit, bit set = negative) times S_n
# (inner, lexicographic windows). Element g of the stream is therefore
# sign pattern g // n! applied to the (g % n!)-th permutation.

def unrank(n: int, which: str, g: int) -> SignedPermutation:
    """The g-th element (0-based) of ``enumerate_group(n, which)``."""
    which = _which(which)
    order = group_order(n, which)
    if not 0 <= g < order:
        raise IndexError(f"index {g} outside [0, {order})")
    signs, r = divmod(g, math.factorial(n))
    pool = list(range(1, n + 1))
    w = []
    for j in range(n - 1, -1, -1):
        idx, r = divmod(r, math.factorial(j))
        w.append(pool.pop(idx))
    return _trusted(_apply_signs(tuple(w), signs, n))


def _apply_signs(w: tuple[int, ...], signs: int, n: int) -> tuple[int, ...]:
    if not signs:
        return w
    return tuple(-a if signs >> (n - 1 - j) & 1 else a for j, a in enumerate(w))


def enumerate_group(n: int, which: str = "B", rank_cap: int = DEFAULT_RANK_CAP
                    ) -> Iterator[SignedPermutation]:
    """
    Every element of S_n or B_n exactly once, in the fixed enumeration order.

    >>> [str(p) for p in enumerate_group(2, "B")]
    ['1,2', '2,1', '1,-2', '2,-1', '-1,2', '-2,1', '-1,-2', '-2,-1']
    """
    which = _which(which)
    check_rank(n, rank_cap)
    return enumerate_range(n, which, 0, group_order(n, which), rank_cap)


def chunk_ranges(n: int, which: str, chunks: int) -> list[range]:
    """Split the enumeration index space into ``chunks`` contiguous ranges."""
    total = group_order(n, which)
    chunks = max(1, min(chunks, total))
    bounds = [total * j // chunks for j in range(chunks + 1)]
    return [range(bounds[j], bounds[j + 1]) for j in range(chunks)]


def enumerate_range(n: int, which: str, start: int, stop: int,
                    rank_cap: int = DEFAULT_RANK_CAP) -> Iterator[SignedPermutation]:
    """Elements ``start`` to ``stop - 1`` of the enumeration; chunks are independent streams."""
    which = _which(which)
    check_rank(n, rank_cap)
    stop = min(stop, group_order(n, which))
    if start >= stop:
        return iter(())
    return _enumerate_range(n, which, start, stop)


def _enumerate_range(n, which, start, stop):
    fact = math.factorial(n)
    g = start
    while g < stop:
        signs, r = divmod(g, fact)
        first = unrank(n, "S", r).window
        block_stop = min(stop, (signs + 1) * fact)
        perms = itertools.islice(_lex_from(first), block_stop - g)
        for w in perms:
            yield _trusted(_apply_signs(w, signs, n))
        g = block_stop


def _lex_from(w: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    # lexicographic successors starting at w (inclusive)
    a = list(w)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] > a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] < a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])
