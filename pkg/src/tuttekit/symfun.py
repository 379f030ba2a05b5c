"""Symmetric functions with TPoly coefficients in the m~, m, p, e bases.

m~ denotes the augmented monomial basis: m~_lam = (prod r_i(lam)!) m_lam.
Conversions go through the monomial basis; m to e is a per-degree exact
linear solve against the expansion of the e basis in m.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from tuttekit.combinatorics import (
    DEFAULT_DEGREE_BOUND,
    DomainError,
    TPoly,
    augmentation_factor,
    parse_rational,
    partitions_of,
    part_multiplicities,
    sorted_partition,
)

BASES = ("mtilde", "m", "p", "e")


class SymFunc:
    """Finite linear combination of basis elements indexed by integer partitions.

    terms maps a weakly decreasing tuple to a nonzero TPoly coefficient.
    The empty partition () indexes the constant term.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: dict | Iterable = ()):
        if basis not in BASES:
            raise DomainError(f"unknown basis {basis!r}; expected one of {BASES}")
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict[tuple[int, ...], TPoly] = {}
        for lam, coeff in items:
            lam = tuple(int(p) for p in lam)
            if any(p < 1 for p in lam) or list(lam) != sorted(lam, reverse=True):
                raise DomainError(f"not a partition: {lam!r}")
            coeff = TPoly.of(coeff)
            if coeff.is_zero():
                continue
            if lam in clean:
                coeff = clean[lam] + coeff
                if coeff.is_zero():
                    del clean[lam]
                    continue
            clean[lam] = coeff
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymFunc is immutable")

    @staticmethod
    def zero(basis: str) -> SymFunc:
        return SymFunc(basis)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __add__(self, other: SymFunc) -> SymFunc:
        if self.basis != other.basis:
            raise DomainError(f"basis mismatch: {self.basis} vs {other.basis}")
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, TPoly.zero()) + c
        return SymFunc(self.basis, out)

    def __sub__(self, other: SymFunc) -> SymFunc:
        return self + other.scale(-1)

    def scale(self, c) -> SymFunc:
        c = TPoly.of(c)
        return SymFunc(self.basis, {lam: coeff * c for lam, coeff in self.terms.items()})

    def coefficient(self, lam: Sequence[int]) -> TPoly:
        return self.terms.get(sorted_partition(lam) if lam else (), TPoly.zero())

    def max_degree(self) -> int:
        return max((sum(lam) for lam in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], TPoly]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return f"SymFunc({self.basis}, 0)"
        bits = [f"{list(lam)}: {coeff!r}" for lam, coeff in self.sorted_terms()]
        return f"SymFunc({self.basis}, {{{', '.join(bits)}}})"

    # JSON shape: {"basis": ..., "terms": [{"lambda": [...], "coeff": [...]}]}
    def to_json_obj(self) -> dict:
        return {
            "basis": self.basis,
            "terms": [
                {"lambda": list(lam), "coeff": coeff.to_strings()}
                for lam, coeff in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> SymFunc:
        return SymFunc(
            obj["basis"],
            [(tuple(t["lambda"]), TPoly.from_strings(t["coeff"])) for t in obj["terms"]],
        )


#### monomial products #########################################################

def _check_degree(d: int, max_degree: int | None):
    cap = DEFAULT_DEGREE_BOUND if max_degree is None else max_degree
    if d > cap:
        raise DomainError(f"degree {d} exceeds the conversion cap {cap}")


@lru_cache(maxsize=None)
def _arrangements(mu: tuple[int, ...], length: int) -> tuple[tuple[int, ...], ...]:
    """Distinct vectors of the given length whose nonzero entries realize mu."""
    if len(mu) > length:
        return ()
    counts = Counter(mu)
    counts[0] = length - len(mu)
    values = sorted(counts)
    vec: list[int] = []
    out: list[tuple[int, ...]] = []

    def rec():
        if len(vec) == length:
            out.append(tuple(vec))
            return
        for val in values:
            if counts[val]:
                counts[val] -= 1
                vec.append(val)
                rec()
                vec.pop()
                counts[val] += 1

    rec()
    return tuple(out)


@lru_cache(maxsize=None)
def m_pair_product(mu: tuple[int, ...], nu: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Expansion of m_mu * m_nu in the m basis as ((rho, coeff), ...).

    The coefficient of m_rho counts vectors alpha with nonzero multiset mu
    such that rho - alpha is entrywise nonnegative with nonzero multiset nu.
    """
    if not mu:
        return (((nu), 1),) if nu else (((), 1),)
    if not nu:
        return ((mu, 1),)
    total = sum(mu) + sum(nu)
    out = []
    for rho in partitions_of(total):
        if len(rho) > len(mu) + len(nu):
            continue
        count = 0
        for alpha in _arrangements(mu, len(rho)):
            rest = tuple(r - a for r, a in zip(rho, alpha))
            if any(x < 0 for x in rest):
                continue
            if sorted_partition(x for x in rest if x) == nu:
                count += 1
        if count:
            out.append((rho, count))
    return tuple(out)


def _m_expansion_product(a: dict[tuple[int, ...], Fraction], b: dict[tuple[int, ...], Fraction]) -> dict:
    out: dict[tuple[int, ...], Fraction] = {}
    for mu, ca in a.items():
        for nu, cb in b.items():
            for rho, k in m_pair_product(mu, nu):
                out[rho] = out.get(rho, Fraction(0)) + ca * cb * k
    return {rho: c for rho, c in out.items() if c}


@lru_cache(maxsize=None)
def _e_in_m(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """m-expansion of e_lam; e_n is m_(1^n)."""
    exp: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for part in lam:
        exp = _m_expansion_product(exp, {(1,) * part: Fraction(1)})
    return tuple(sorted(exp.items()))


@lru_cache(maxsize=None)
def _p_in_m(lam: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    """m-expansion of p_lam; p_n is m_(n)."""
    exp: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    for part in lam:
        exp = _m_expansion_product(exp, {(part,): Fraction(1)})
    return tuple(sorted(exp.items()))


#### basis conversions #########################################################

def mtilde_to_m(f: SymFunc) -> SymFunc:
    """Diagonal rescaling m~_lam = (prod r_i!) m_lam."""
    if f.basis != "mtilde":
        raise DomainError(f"expected mtilde basis, got {f.basis}")
    return SymFunc("m", {lam: c * augmentation_factor(lam) for lam, c in f.terms.items()})


def m_to_mtilde(f: SymFunc) -> SymFunc:
    if f.basis != "m":
        raise DomainError(f"expected m basis, got {f.basis}")
    return SymFunc(
        "mtilde",
        {lam: c * Fraction(1, augmentation_factor(lam)) for lam, c in f.terms.items()},
    )


def to_m(f: SymFunc, max_degree: int | None = None) -> SymFunc:
    """Expand a p- or e-basis function into monomials."""
    if f.basis == "m":
        return f
    if f.basis == "mtilde":
        return mtilde_to_m(f)
    if f.basis not in ("p", "e"):
        raise DomainError(f"cannot expand basis {f.basis}")
    table = _p_in_m if f.basis == "p" else _e_in_m
    out: dict[tuple[int, ...], TPoly] = {}
    for lam, c in f.terms.items():
        _check_degree(sum(lam), max_degree)
        for mu, k in table(lam):
            out[mu] = out.get(mu, TPoly.zero()) + c * k
    return SymFunc("m", out)


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular transition matrix; this is a bug")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _m_to_e_matrix(d: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[Fraction, ...], ...]]:
    """(partitions of d, matrix M) with e-coefficients = M @ m-coefficients."""
    parts = tuple(partitions_of(d))
    index = {lam: i for i, lam in enumerate(parts)}
    # column j holds the m-expansion of e_{parts[j]}
    fwd = [[Fraction(0)] * len(parts) for _ in parts]
    for j, lam in enumerate(parts):
        for mu, c in _e_in_m(lam):
            fwd[index[mu]][j] = c
    inv = _invert(fwd)
    return parts, tuple(tuple(row) for row in inv)


@lru_cache(maxsize=None)
def _m_to_p_matrix(d: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[Fraction, ...], ...]]:
    """(partitions of d, matrix M) with p-coefficients = M @ m-coefficients."""
    parts = tuple(partitions_of(d))
    index = {lam: i for i, lam in enumerate(parts)}
    fwd = [[Fraction(0)] * len(parts) for _ in parts]
    for j, lam in enumerate(parts):
        for mu, c in _p_in_m(lam):
            fwd[index[mu]][j] = c
    inv = _invert(fwd)
    return parts, tuple(tuple(row) for row in inv)


def _solve_from_m(f: SymFunc, matrix_fn, target: str, max_degree: int | None) -> SymFunc:
    if f.basis == "mtilde":
        f = mtilde_to_m(f)
    if f.basis != "m":
        raise DomainError(f"expected m (or mtilde) basis, got {f.basis}")
    by_degree: dict[int, dict[tuple[int, ...], TPoly]] = {}
    for lam, c in f.terms.items():
        by_degree.setdefault(sum(lam), {})[lam] = c
    out: dict[tuple[int, ...], TPoly] = {}
    for d, terms in by_degree.items():
        _check_degree(d, max_degree)
        parts, inv = matrix_fn(d)
        vec = [terms.get(lam, TPoly.zero()) for lam in parts]
        for i, lam in enumerate(parts):
            acc = TPoly.zero()
            for j, c in enumerate(vec):
                if not c.is_zero() and inv[i][j] != 0:
                    acc = acc + c * inv[i][j]
            if not acc.is_zero():
                out[lam] = acc
    return SymFunc(target, out)


def m_to_e(f: SymFunc, max_degree: int | None = None) -> SymFunc:
    """Rewrite a monomial-basis function in the elementary basis, exactly."""
    return _solve_from_m(f, _m_to_e_matrix, "e", max_degree)


def m_to_p(f: SymFunc, max_degree: int | None = None) -> SymFunc:
    """Rewrite a monomial-basis function in the power-sum basis, exactly."""
    return _solve_from_m(f, _m_to_p_matrix, "p", max_degree)


def sigma_l(f: SymFunc, l: int) -> TPoly:
    """Sum of the e-basis coefficients of f over partitions of length l."""
    if f.basis != "e":
        raise DomainError(f"sigma_l needs the e basis, got {f.basis}")
    acc = TPoly.zero()
    for lam, c in f.terms.items():
        if len(lam) == l:
            acc = acc + c
    return acc


def coefficient_in_onep_t(f: SymFunc, k: int) -> SymFunc:
    """Extract the (1+t)^k component of every coefficient."""
    if k < 0:
        raise DomainError("power index must be nonnegative")
    out = {}
    for lam, c in f.terms.items():
        cs = c.onep_t_powers()
        if k < len(cs) and cs[k] != 0:
            out[lam] = TPoly([cs[k]])
    return SymFunc(f.basis, out)


def specialize_t(f: SymFunc, v) -> SymFunc:
    """Evaluate every coefficient at t = v."""
    if isinstance(v, str):
        v = parse_rational(v)
    return SymFunc(f.basis, {lam: TPoly([c.evaluate(v)]) for lam, c in f.terms.items()})
