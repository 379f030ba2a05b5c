"""Exact rationals, polynomials in t, and partition primitives.

Every module above this one works with Fraction coefficients, dense
polynomials in the single variable t, integer partitions stored as weakly
decreasing tuples, and set partitions stored as tuples of blocks (each block
an ascending tuple, blocks ordered by minimum element).
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

#### bounds ####################################################################

# Set-partition enumeration is the complexity wall (Bell numbers), so the
# operations that sum over all partitions refuse large ground sets unless the
# caller raises the ceiling explicitly or through TUTTEKIT_MAX_N.
DEFAULT_ENUMERATION_BOUND = 10
DEFAULT_REDUCTION_BOUND = 7
DEFAULT_CANONICAL_BOUND = 12
DEFAULT_DEGREE_BOUND = 12


class DomainError(ValueError):
    """A documented precondition on caller-supplied data failed."""


def resolve_bound(default: int, override: int | None = None) -> int:
    """Effective ceiling: explicit argument, else TUTTEKIT_MAX_N, else default."""
    if override is not None:
        return override
    env = os.environ.get("TUTTEKIT_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"TUTTEKIT_MAX_N is not an integer: {env!r}")
    return default


#### rationals #################################################################

def parse_rational(s: str) -> Fraction:
    """Parse 'num/den' (den optional) into an exact Fraction."""
    text = s.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    """Serialize a Fraction as 'num/den', denominator always present."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


#### polynomials in t ##########################################################

class TPoly:
    """Dense polynomial in t with Fraction coefficients, immutable.

    coeffs[i] is the coefficient of t^i; trailing zeros are stripped so the
    zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @staticmethod
    def of(value) -> TPoly:
        """Coerce an int, Fraction, or TPoly into a TPoly."""
        if isinstance(value, TPoly):
            return value
        return TPoly([Fraction(value)])

    @staticmethod
    def zero() -> TPoly:
        return TPoly()

    @staticmethod
    def one() -> TPoly:
        return TPoly([1])

    @staticmethod
    def t() -> TPoly:
        return TPoly([0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TPoly.of(other)
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> TPoly:
        other = TPoly.of(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self) -> TPoly:
        return TPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> TPoly:
        return self + (-TPoly.of(other))

    def __rsub__(self, other) -> TPoly:
        return TPoly.of(other) + (-self)

    def __mul__(self, other) -> TPoly:
        other = TPoly.of(other)
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TPoly:
        assert k >= 0
        result = TPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, v: Fraction | int) -> Fraction:
        """Exact value at t = v (Horner)."""
        v = Fraction(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; error if t actually appears."""
        if len(self.coeffs) > 1:
            raise DomainError(f"polynomial depends on t: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def onep_t_powers(self) -> tuple[Fraction, ...]:
        """Coefficients c_0..c_d with p(t) = sum c_k (1+t)^k.

        Obtained by substituting t = u - 1 and expanding in u, exactly.
        """
        d = len(self.coeffs)
        out = [Fraction(0)] * d
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for k in range(i + 1):
                out[k] += a * comb(i, k) * (-1) ** (i - k)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    @staticmethod
    def from_onep_t_powers(cs: Sequence[Fraction | int]) -> TPoly:
        """Inverse of onep_t_powers: rebuild sum c_k (1+t)^k as a TPoly."""
        out = [Fraction(0)] * len(cs)
        for k, c in enumerate(cs):
            if c == 0:
                continue
            c = Fraction(c)
            for i in range(k + 1):
                out[i] += c * comb(k, i)
        return TPoly(out)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @staticmethod
    def from_strings(items: Sequence[str]) -> TPoly:
        return TPoly([parse_rational(s) for s in items])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "TPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t")
            else:
                parts.append(f"{c}*t^{i}")
        return "TPoly(" + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def onep_t_power(k: int) -> TPoly:
    """(1+t)^k as a TPoly, cached."""
    assert k >= 0
    return TPoly([comb(k, i) for i in range(k + 1)])


#### integer partitions ########################################################

def partitions_of(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples, largest part first."""
    assert n >= 0

    def gen(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    yield from gen(n, n, ())


def part_multiplicities(lam: Sequence[int]) -> dict[int, int]:
    """Map part value -> multiplicity r_i."""
    out: dict[int, int] = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


def augmentation_factor(lam: Sequence[int]) -> int:
    """Product of r_i! over the part multiplicities of lam."""
    out = 1
    for r in part_multiplicities(lam).values():
        out *= factorial(r)
    return out


def sorted_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Weakly decreasing tuple from any iterable of positive parts."""
    lam = tuple(sorted(parts, reverse=True))
    assert all(p >= 1 for p in lam)
    return lam


#### set partitions ############################################################

# A set partition of [n] is a tuple of blocks; each block is an ascending
# tuple of vertices and blocks are ordered by their minimum element.

SetPartition = tuple  # alias for readability in signatures


def blocks_from_rgs(rgs: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Blocks of the partition encoded by a restricted growth string."""
    nblocks = max(rgs) + 1 if rgs else 0
    blocks: list[list[int]] = [[] for _ in range(nblocks)]
    for i, b in enumerate(rgs):
        blocks[b].append(i + 1)
    return tuple(tuple(b) for b in blocks)


def enumerate_set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every set partition of [n] exactly once.

    Enumeration follows restricted-growth-string lexicographic order, so the
    single-block partition (string 00...0) comes first and all-singletons
    (string 012...) last.  n = 0 yields the one empty partition.
    """
    assert n >= 0
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, maxseen: int):
        if i == n:
            yield blocks_from_rgs(rgs)
            return
        for b in range(maxseen + 2):
            rgs[i] = b
            yield from rec(i + 1, max(maxseen, b))

    yield from rec(1, 0)


def normalize_blocks(n: int, blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    """Validate and canonically order a full partition of [n]."""
    seen: set[int] = set()
    out = []
    for b in blocks:
        bt = tuple(sorted(set(b)))
        if len(bt) != len(tuple(b)):
            raise DomainError(f"repeated element inside block {tuple(b)}")
        if not bt:
            raise DomainError("empty block")
        for v in bt:
            if not (1 <= v <= n):
                raise DomainError(f"element {v} outside ground set [{n}]")
            if v in seen:
                raise DomainError(f"element {v} appears in two blocks")
            seen.add(v)
        out.append(bt)
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise DomainError(f"elements not covered by any block: {missing}")
    out.sort(key=lambda b: b[0])
    return tuple(out)


def p_shorthand(n: int, blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    """Partition of [n] with the listed nontrivial blocks, singletons elsewhere."""
    seen: set[int] = set()
    out = []
    for b in blocks:
        bt = tuple(sorted(set(b)))
        for v in bt:
            if not (1 <= v <= n):
                raise DomainError(f"element {v} outside ground set [{n}]")
            if v in seen:
                raise DomainError(f"element {v} appears in two blocks")
            seen.add(v)
        if bt:
            out.append(bt)
    for v in range(1, n + 1):
        if v not in seen:
            out.append((v,))
    out.sort(key=lambda b: b[0])
    return tuple(out)


def lambda_of(blocks: Iterable[Iterable[int]], weights: Sequence[int] | None = None) -> tuple[int, ...]:
    """Block sizes sorted descending; with weights, block weight sums instead."""
    if weights is None:
        return sorted_partition(len(tuple(b)) for b in blocks)
    return sorted_partition(sum(weights[v - 1] for v in b) for b in blocks)


def block_index_map(blocks: Sequence[Sequence[int]]) -> dict[int, int]:
    """vertex -> 0-based index of its block."""
    out: dict[int, int] = {}
    for i, b in enumerate(blocks):
        for v in b:
            out[v] = i
    return out


#### counting helpers ##########################################################

def compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of nonnegative integers summing to total."""
    assert total >= 0 and k >= 0
    if k == 0:
        if total == 0:
            yield ()
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def multinomial(counts: Sequence[int]) -> int:
    """Multinomial coefficient (sum counts)! / prod counts!."""
    total = sum(counts)
    out = 1
    for c in counts:
        out *= comb(total, c)
        total -= c
    return out
