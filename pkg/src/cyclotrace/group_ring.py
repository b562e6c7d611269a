"""Integer group rings of finite abelian groups.

Elements of ``Z[G]`` are stored sparsely as ``{group element: coefficient}``
with no zero entries, so structural equality is ring equality.  Group
elements are tuples of residues, one per cyclic factor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

Element = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product of cyclic groups ``Z/n_1 x ... x Z/n_k``."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.invariant_factors)
        if any(n < 1 for n in factors):
            raise ValueError(f"invariant factors must be >= 1, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.invariant_factors) == 1

    @property
    def identity(self) -> Element:
        return (0,) * len(self.invariant_factors)

    def element(self, value: Union[int, Sequence[int]]) -> Element:
        """Reduce ``value`` to a canonical element; ints are allowed for one factor."""
        if isinstance(value, int):
            value = (value,)
        value = tuple(value)
        if len(value) != len(self.invariant_factors):
            raise ValueError(f"{value!r} is not an element of {self}")
        return tuple(v % n for v, n in zip(value, self.invariant_factors))

    def op(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariant_factors))

    def inverse(self, a: Element) -> Element:
        return tuple(-x % n for x, n in zip(a, self.invariant_factors))

    def power(self, a: Element, k: int) -> Element:
        return tuple(x * k % n for x, n in zip(a, self.invariant_factors))

    def elements(self) -> Iterator[Element]:
        return product(*(range(n) for n in self.invariant_factors))

    def element_order(self, a: Element) -> int:
        out = 1
        for x, n in zip(a, self.invariant_factors):
            k = n // gcd(x, n)
            out = out * k // gcd(out, k)
        return out

    def __mul__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.invariant_factors + other.invariant_factors)

    def __repr__(self):
        return " x ".join(f"Z/{n}" for n in self.invariant_factors) or "1"


@dataclass(frozen=True)
class Subgroup:
    group: FiniteAbelianGroup
    elements: frozenset
    generators: tuple[Element, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements


def subgroup(G: FiniteAbelianGroup, spec: Union[int, Subgroup, Iterable]) -> Subgroup:
    """Resolve a subgroup description.

    An ``int`` names the unique subgroup of that order in a cyclic group;
    otherwise ``spec`` is an iterable of generators and the closure is taken.
    """
    if isinstance(spec, Subgroup):
        if spec.group != G:
            raise ValueError(f"subgroup of {spec.group} is not a subgroup of {G}")
        return spec
    if isinstance(spec, int):
        if not G.is_cyclic_presentation:
            raise ValueError("subgroups by order are only defined for cyclic G")
        m = G.order
        if spec < 1 or m % spec:
            raise ValueError(f"{spec} does not divide |G| = {m}")
        step = m // spec
        elems = frozenset((k * step,) for k in range(spec))
        return Subgroup(G, elems, ((step % m,),))
    gens = tuple(G.element(g) for g in spec)
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.op(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, frozenset(seen), gens)


class GroupRingElement:
    """Immutable element of ``Z[G]`` in canonical sparse form."""

    __slots__ = ("group", "_coeffs", "_hash")

    def __init__(self, group: FiniteAbelianGroup, coeffs: Mapping = ()):
        self.group = group
        clean: dict[Element, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for g, c in items:
            g = group.element(g)
            c = clean.get(g, 0) + int(c)
            if c:
                clean[g] = c
            else:
                clean.pop(g, None)
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, group, coeffs: dict) -> "GroupRingElement":
        obj = cls.__new__(cls)
        obj.group = group
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, group: FiniteAbelianGroup) -> "GroupRingElement":
        return cls._raw(group, {})

    @classmethod
    def one(cls, group: FiniteAbelianGroup) -> "GroupRingElement":
        return cls._raw(group, {group.identity: 1})

    @classmethod
    def basis(cls, group: FiniteAbelianGroup, g, coeff: int = 1) -> "GroupRingElement":
        return cls(group, {g: coeff})

    @property
    def coeffs(self) -> Mapping[Element, int]:
        return MappingProxyType(self._coeffs)

    def coeff(self, g) -> int:
        return self._coeffs.get(self.group.element(g), 0)

    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def dense(self) -> list[int]:
        """Coefficient list indexed by residue; only for cyclic presentations."""
        if not self.group.is_cyclic_presentation:
            raise ValueError("dense form needs a single cyclic factor")
        out = [0] * self.group.order
        for (r,), c in self._coeffs.items():
            out[r] = c
        return out

    def _check(self, other: "GroupRingElement"):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.group != self.group:
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")
        return None

    def __add__(self, other):
        if isinstance(other, int):
            other = self.one(self.group) * other
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for g, c in other._coeffs.items():
            c = out.get(g, 0) + c
            if c:
                out[g] = c
            else:
                del out[g]
        return self._raw(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.group, {g: -c for g, c in self._coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.one(self.group) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.zero(self.group)
            return self._raw(self.group, {g: c * other for g, c in self._coeffs.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        op = self.group.op
        out: dict[Element, int] = {}
        for g, a in self._coeffs.items():
            for h, b in other._coeffs.items():
                k = op(g, h)
                out[k] = out.get(k, 0) + a * b
        return self._raw(self.group, {g: c for g, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in Z[G]")
        result = self.one(self.group)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.one(self.group) * other
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.group, frozenset(self._coeffs.items())))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        if not self._coeffs:
            return f"0 in Z[{self.group}]"
        terms = []
        for g in sorted(self._coeffs):
            c = self._coeffs[g]
            label = "e" if g == self.group.identity else "g" + str(g[0] if len(g) == 1 else g)
            terms.append(f"{c}*{label}")
        return " + ".join(terms) + f" in Z[{self.group}]"


def add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a + b


def mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def involute(x: GroupRingElement) -> GroupRingElement:
    """The involution ``g -> g^{-1}`` extended linearly."""
    inv = x.group.inverse
    return GroupRingElement._raw(x.group, {inv(g): c for g, c in x._coeffs.items()})


def pr(x: GroupRingElement) -> int:
    """Coefficient of the identity."""
    return x._coeffs.get(x.group.identity, 0)


def aug(x: GroupRingElement) -> int:
    """Augmentation: sum of all coefficients."""
    return sum(x._coeffs.values())


def sigma_subgroup(G: FiniteAbelianGroup, H) -> GroupRingElement:
    """Sum of the elements of ``H`` (an order for cyclic ``G``, or generators)."""
    H = subgroup(G, H)
    return GroupRingElement._raw(G, {h: 1 for h in H.elements})


def _diagonalize(rows: list[list[int]], k: int) -> tuple[list[int], list[list[int]]]:
    """Diagonalise an integer relation matrix by unimodular row/column moves.

    Returns the diagonal and the accumulated column transform ``V`` so that
    ``Z^k / rowspace`` is ``sum Z/d_j`` under ``x -> x V``.
    """
    A = [list(r) for r in rows]
    m = len(A)
    V = [[int(i == j) for j in range(k)] for i in range(k)]
    diag = []
    for t in range(min(m, k)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, k):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
                for row in V:
                    row[t], row[j] = row[j], row[t]
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, k):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                break
        diag.append(abs(A[t][t]))
    diag += [0] * (k - len(diag))
    return diag, V


@dataclass(frozen=True)
class QuotientMap:
    """The canonical surjection ``G -> G/H`` realised on explicit groups."""

    source: FiniteAbelianGroup
    kernel: Subgroup
    target: FiniteAbelianGroup
    _columns: tuple  # per kept coordinate: (column of V, modulus); None => natural

    def __call__(self, g: Element) -> Element:
        if self._columns is None:
            (r,) = g
            return (r % self.target.order,)
        return tuple(sum(x * v for x, v in zip(g, col)) % d for col, d in self._columns)


def quotient_map(G: FiniteAbelianGroup, H) -> QuotientMap:
    H = subgroup(G, H)
    if G.is_cyclic_presentation:
        return QuotientMap(G, H, FiniteAbelianGroup.cyclic(G.order // H.order), None)
    k = len(G.invariant_factors)
    rows = [[n if i == j else 0 for j in range(k)] for i, n in enumerate(G.invariant_factors)]
    rows += [list(g) for g in H.generators]
    diag, V = _diagonalize(rows, k)
    cols = tuple(
        (tuple(V[i][j] for i in range(k)), d) for j, d in enumerate(diag) if d != 1
    )
    target = FiniteAbelianGroup(tuple(d for _, d in cols))
    return QuotientMap(G, H, target, cols)


def quotient_push(x: GroupRingElement, H) -> GroupRingElement:
    """Image of ``x`` under the ring map ``Z[G] -> Z[G/H]``."""
    chi = quotient_map(x.group, H)
    out: dict[Element, int] = {}
    for g, c in x._coeffs.items():
        k = chi(g)
        out[k] = out.get(k, 0) + c
    return GroupRingElement._raw(chi.target, {g: c for g, c in out.items() if c})


def tensor_embed(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """Image of ``a (x) b`` in ``Z[G1 x G2]``."""
    G = a.group * b.group
    out = {g + h: x * y for g, x in a._coeffs.items() for h, y in b._coeffs.items()}
    return GroupRingElement._raw(G, out)
