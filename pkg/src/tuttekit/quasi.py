"""Quasisymmetric chromatic and Tutte functions of vertex-weighted digraphs.

XQ sums q^asc over proper colorings, TQ sums q^asc (1+t)^e over all
colorings; both are homogeneous of degree w(D), so truncating to
N >= w(D) variables determines the formal series and exact equality of
truncations certifies identities.  Coefficients are exact bivariate
polynomials in q and t over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations as icombinations
from itertools import product as iproduct
from math import comb
from typing import Iterable, Sequence

from tuttekit.combinatorics import (
    DomainError,
    TPoly,
    augmentation_factor,
    format_rational,
    parse_rational,
)
from tuttekit.graphs import Multigraph, _components_of, connected_partitions
from tuttekit.symfun import SymFunc

DEFAULT_COLORING_BUDGET = 5_000_000


#### bivariate coefficients ####################################################

class QTPoly:
    """Exact polynomial in q and t; keys are (q-degree, t-degree)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("QTPoly is immutable")

    @staticmethod
    def of(value) -> QTPoly:
        if isinstance(value, QTPoly):
            return value
        if isinstance(value, TPoly):
            return QTPoly({(0, i): c for i, c in enumerate(value.coeffs)})
        return QTPoly({(0, 0): Fraction(value)})

    @staticmethod
    def zero() -> QTPoly:
        return QTPoly()

    @staticmethod
    def one() -> QTPoly:
        return QTPoly({(0, 0): Fraction(1)})

    @staticmethod
    def q(power: int = 1) -> QTPoly:
        return QTPoly({(power, 0): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTPoly):
            other = QTPoly.of(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other) -> QTPoly:
        other = QTPoly.of(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QTPoly:
        return QTPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other) -> QTPoly:
        return self + (-QTPoly.of(other))

    def __mul__(self, other) -> QTPoly:
        other = QTPoly.of(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return QTPoly(out)

    __rmul__ = __mul__

    def at_q(self, value) -> QTPoly:
        """Substitute a rational for q; result involves t only."""
        value = Fraction(value)
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in self.terms.items():
            out[(0, b)] = out.get((0, b), Fraction(0)) + c * value**a
        return QTPoly(out)

    def at_t(self, value) -> QTPoly:
        """Substitute a rational for t; result involves q only."""
        value = Fraction(value)
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in self.terms.items():
            out[(a, 0)] = out.get((a, 0), Fraction(0)) + c * value**b
        return QTPoly(out)

    def to_tpoly(self) -> TPoly:
        """View a q-free value as a polynomial in t."""
        if any(a for a, _ in self.terms):
            raise DomainError("coefficient still involves q")
        top = max((b for _, b in self.terms), default=0)
        arr = [Fraction(0)] * (top + 1)
        for (_, b), c in self.terms.items():
            arr[b] = c
        return TPoly(arr)

    def __repr__(self) -> str:
        if not self.terms:
            return "QTPoly(0)"
        bits = [
            f"{c}*q^{a}*t^{b}" for (a, b), c in sorted(self.terms.items())
        ]
        return f"QTPoly({' + '.join(bits)})"

    def to_json_obj(self) -> list:
        return [
            {"q": a, "t": b, "c": format_rational(c)}
            for (a, b), c in sorted(self.terms.items())
        ]

    @staticmethod
    def from_json_obj(obj: Iterable[dict]) -> QTPoly:
        return QTPoly({(row["q"], row["t"]): parse_rational(row["c"]) for row in obj})


@lru_cache(maxsize=None)
def qt_onep_t_power(k: int) -> QTPoly:
    return QTPoly({(0, j): Fraction(comb(k, j)) for j in range(k + 1)})


#### digraphs ##################################################################

class Digraph:
    """Vertex-weighted digraph on [n]; arcs are ordered pairs, loops allowed."""

    __slots__ = ("n", "arcs", "weights")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = (), weights: Sequence[int] | None = None):
        n = int(n)
        if n < 0:
            raise DomainError("vertex count must be nonnegative")
        norm = []
        for a in arcs:
            u, v = int(a[0]), int(a[1])
            if not (1 <= u <= n and 1 <= v <= n):
                raise DomainError(f"arc ({u},{v}) leaves [{n}]")
            norm.append((u, v))
        norm.sort()
        if weights is None:
            w = (1,) * n
        else:
            w = tuple(int(x) for x in weights)
            if len(w) != n or any(x < 1 for x in w):
                raise DomainError("weights must list one positive integer per vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(norm))
        object.__setattr__(self, "weights", w)

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    def key(self):
        return (self.n, self.arcs, self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        w = "" if self.unit_weights() else f", weights={list(self.weights)}"
        return f"Digraph({self.n}, {list(self.arcs)}{w})"

    def unit_weights(self) -> bool:
        return all(x == 1 for x in self.weights)

    def total_weight(self) -> int:
        return sum(self.weights)

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.arcs)


def underlying(D: Digraph) -> Multigraph:
    """Forget orientations; weights carry over."""
    return Multigraph(D.n, [(min(u, v), max(u, v)) for u, v in D.arcs], D.weights)


def reverse(D: Digraph) -> Digraph:
    return Digraph(D.n, [(v, u) for u, v in D.arcs], D.weights)


def arc_statistics(D: Digraph, kappa: Sequence[int]) -> tuple[int, int, int]:
    """(ascents, descents, monochromatic arcs) of a coloring, with multiplicity."""
    asc = desc = mono = 0
    for u, v in D.arcs:
        cu, cv = kappa[u - 1], kappa[v - 1]
        if cu < cv:
            asc += 1
        elif cu > cv:
            desc += 1
        else:
            mono += 1
    return asc, desc, mono


def contract_arc_set(D: Digraph, S: Iterable[int]) -> Digraph:
    """Contract the arc instances at the given 0-based indices.

    Vertices merge along the underlying edges of S; arcs outside S are
    pushed forward and kept even when they become loops, so contracting a
    non-induced set leaves a loop.  Weights add over merged vertices.
    """
    idx = sorted(set(int(i) for i in S))
    if any(not (0 <= i < len(D.arcs)) for i in idx):
        raise DomainError("arc index out of range")
    pairs = [(min(D.arcs[i]), max(D.arcs[i])) for i in idx]
    comps = _components_of(D.n, pairs)
    label = {}
    for new, comp in enumerate(sorted(comps, key=min), start=1):
        for v in comp:
            label[v] = new
    chosen = set(idx)
    arcs = [
        (label[u], label[v]) for i, (u, v) in enumerate(D.arcs) if i not in chosen
    ]
    weights = [0] * len(comps)
    for v in range(1, D.n + 1):
        weights[label[v] - 1] += D.weights[v - 1]
    return Digraph(len(comps), arcs, weights)


def contract_digraph_partition(D: Digraph, blocks: Sequence[Sequence[int]]) -> Digraph:
    """Contract each block to a point; every intra-block arc vanishes.

    Blocks must be connected in the underlying undirected graph (checked by
    the caller when enumerating connected partitions).
    """
    label = {}
    ordered = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
    for new, comp in enumerate(ordered, start=1):
        for v in comp:
            label[v] = new
    arcs = [
        (label[u], label[v]) for u, v in D.arcs if label[u] != label[v]
    ]
    weights = [0] * len(ordered)
    for v in range(1, D.n + 1):
        weights[label[v] - 1] += D.weights[v - 1]
    return Digraph(len(ordered), arcs, weights)


def digraph_to_json_obj(D: Digraph) -> dict:
    out: dict = {"n": D.n, "arcs": [list(a) for a in D.arcs]}
    if not D.unit_weights():
        out["weights"] = list(D.weights)
    return out


def digraph_from_json_obj(obj: dict) -> Digraph:
    return Digraph(obj["n"], obj.get("arcs", ()), obj.get("weights"))


#### truncated quasisymmetric values ###########################################

class TruncatedQFunc:
    """Polynomial in x_1..x_N with QTPoly coefficients, keyed by exponents."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms: dict[tuple[int, ...], QTPoly] | Iterable = ()):
        N = int(N)
        items = terms.items() if isinstance(terms, dict) else terms
        clean: dict[tuple[int, ...], QTPoly] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != N or any(e < 0 for e in exps):
                raise DomainError("exponent vector does not fit the variable count")
            c = QTPoly.of(c)
            if c.is_zero():
                continue
            acc = clean.get(exps, QTPoly.zero()) + c
            if acc.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = acc
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedQFunc is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedQFunc):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __add__(self, other: TruncatedQFunc) -> TruncatedQFunc:
        if self.N != other.N:
            raise DomainError("variable-count mismatch")
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, QTPoly.zero()) + c
        return TruncatedQFunc(self.N, out)

    def __sub__(self, other: TruncatedQFunc) -> TruncatedQFunc:
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> TruncatedQFunc:
        c = QTPoly.of(c)
        return TruncatedQFunc(self.N, {e: v * c for e, v in self.terms.items()})

    def at_q(self, value) -> TruncatedQFunc:
        return TruncatedQFunc(self.N, {e: v.at_q(value) for e, v in self.terms.items()})

    def at_t(self, value) -> TruncatedQFunc:
        return TruncatedQFunc(self.N, {e: v.at_t(value) for e, v in self.terms.items()})

    def sorted_terms(self) -> list[tuple[tuple[int, ...], QTPoly]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __repr__(self) -> str:
        bits = [f"x^{list(e)}: {c!r}" for e, c in self.sorted_terms()]
        return f"TruncatedQFunc(N={self.N}, [{', '.join(bits)}])"

    def to_json_obj(self) -> dict:
        return {
            "N": self.N,
            "terms": [
                {"exponents": list(e), "coeff": c.to_json_obj()}
                for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> TruncatedQFunc:
        return TruncatedQFunc(
            obj["N"],
            [
                (tuple(t["exponents"]), QTPoly.from_json_obj(t["coeff"]))
                for t in obj["terms"]
            ],
        )


def _check_coloring_budget(D: Digraph, N: int):
    if N < 0:
        raise DomainError("variable count must be nonnegative")
    if N < D.total_weight():
        raise DomainError(
            f"need N >= w(D) = {D.total_weight()} variables to determine the series"
        )
    if N**max(D.n, 1) > DEFAULT_COLORING_BUDGET:
        raise DomainError(
            f"coloring enumeration too large ({N}^{D.n} colorings)"
        )


def _exponents(D: Digraph, kappa: Sequence[int], N: int) -> tuple[int, ...]:
    exps = [0] * N
    for v in range(1, D.n + 1):
        exps[kappa[v - 1] - 1] += D.weights[v - 1]
    return tuple(exps)


def xq(D: Digraph, N: int) -> TruncatedQFunc:
    """Sum of q^asc(kappa) x_kappa over proper colorings kappa: [n] -> [N].

    A coloring is proper when no arc is monochromatic; a loop arc therefore
    kills every coloring and the result is zero.
    """
    _check_coloring_budget(D, N)
    if D.has_loop():
        return TruncatedQFunc(N)
    acc: dict[tuple[int, ...], QTPoly] = {}
    for kappa in iproduct(range(1, N + 1), repeat=D.n):
        asc, _, mono = arc_statistics(D, kappa)
        if mono:
            continue
        exps = _exponents(D, kappa, N)
        acc[exps] = acc.get(exps, QTPoly.zero()) + QTPoly.q(asc)
    return TruncatedQFunc(N, acc)


def tq(D: Digraph, N: int) -> TruncatedQFunc:
    """Sum of q^asc(kappa) (1+t)^e(kappa) x_kappa over all colorings."""
    _check_coloring_budget(D, N)
    acc: dict[tuple[int, ...], QTPoly] = {}
    for kappa in iproduct(range(1, N + 1), repeat=D.n):
        asc, _, mono = arc_statistics(D, kappa)
        exps = _exponents(D, kappa, N)
        term = QTPoly.q(asc) * qt_onep_t_power(mono)
        acc[exps] = acc.get(exps, QTPoly.zero()) + term
    return TruncatedQFunc(N, acc)


def tq_from_connected_partitions(D: Digraph, N: int) -> TruncatedQFunc:
    """TQ as a sum of (1+t)^e(pi) XQ(D/pi) over connected partitions.

    Connectivity of blocks is judged in the underlying undirected graph;
    e(pi) counts intra-block arcs with multiplicity, loops included.
    """
    _check_coloring_budget(D, N)
    total = TruncatedQFunc(N)
    for blocks in connected_partitions(underlying(D)):
        label = {}
        for i, b in enumerate(blocks):
            for v in b:
                label[v] = i
        internal = sum(1 for u, v in D.arcs if label[u] == label[v])
        piece = xq(contract_digraph_partition(D, blocks), N)
        total = total + piece.scale(qt_onep_t_power(internal))
    return total


def tq_from_arc_subsets(D: Digraph, N: int) -> TruncatedQFunc:
    """TQ as a sum of (1+t)^|S| XQ(D/S) over arc subsets.

    Contracting a non-induced S leaves a loop, whose XQ vanishes, so the
    sum silently restricts itself to induced sets.
    """
    if len(D.arcs) > 16:
        raise DomainError("arc-subset expansion limited to 16 arcs")
    _check_coloring_budget(D, N)
    total = TruncatedQFunc(N)
    m = len(D.arcs)
    for size in range(m + 1):
        for S in icombinations(range(m), size):
            piece = xq(contract_arc_set(D, S), N)
            if not piece.is_zero():
                total = total + piece.scale(qt_onep_t_power(size))
    return total


def truncate_symfunc(f: SymFunc, N: int) -> TruncatedQFunc:
    """Expand an m~-basis symmetric function into N variables.

    m~_lambda contributes its coefficient to every arrangement of lambda's
    parts across the variables, times the product of part-multiplicity
    factorials.
    """
    if f.basis != "mtilde":
        raise DomainError("truncation expects the mtilde basis")
    acc: dict[tuple[int, ...], QTPoly] = {}

    def arrangements(lam: tuple[int, ...]):
        """Distinct exponent vectors of length N using lam's parts once each.

        Equal parts fill positions in increasing order, so each vector
        appears exactly once.
        """
        if len(lam) > N:
            return
        groups: list[tuple[int, int]] = []
        for part in lam:
            if groups and groups[-1][0] == part:
                groups[-1] = (part, groups[-1][1] + 1)
            else:
                groups.append((part, 1))
        slots = [0] * N

        def place_group(gi: int):
            if gi == len(groups):
                yield tuple(slots)
                return
            part, count = groups[gi]

            def choose(cnt: int, frm: int):
                if cnt == 0:
                    yield from place_group(gi + 1)
                    return
                for pos in range(frm, N):
                    if slots[pos] == 0:
                        slots[pos] = part
                        yield from choose(cnt - 1, pos + 1)
                        slots[pos] = 0

            yield from choose(count, 0)

        yield from place_group(0)

    for lam, coeff in f.terms.items():
        qt = QTPoly.of(coeff) * Fraction(augmentation_factor(lam))
        for exps in arrangements(lam):
            acc[exps] = acc.get(exps, QTPoly.zero()) + qt
    return TruncatedQFunc(N, acc)
