"""Canonical Gram matrices of integral trace forms of tame cyclic fields.

A tame cyclic field ``K`` of degree ``n`` is described by its ramification
data: the ramified primes ``p`` and their indices ``e``.  Each prime
contributes a local circulant ``p*Y - h*Sigma_<e>`` in ``Z[Z/n]`` with
``h = (p-1)/e`` and ``Y`` the identity or the element of order two; the
product of the local circulants is the circulant of the trace pairing in a
normal integral basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Iterable, Optional, Sequence

from .arith import divisors, factorint, is_prime, lcm, primes_up_to
from .group_ring import FiniteAbelianGroup, GroupRingElement, involute, sigma_subgroup
from .linalg import bareiss_det


class SpecError(ValueError):
    """Ramification data that cannot belong to a tame cyclic field."""

    @property
    def name(self) -> str:
        return type(self).__name__


class NonPrime(SpecError):
    pass


class WildRamification(SpecError):
    pass


class BadCongruence(SpecError):
    pass


class BadLcm(SpecError):
    pass


class DuplicatePrime(SpecError):
    pass


class BadIndex(SpecError):
    """Degree below 1 or ramification index below 2."""


class UnsupportedDegree(ValueError):
    """No closed-form coefficient formula covers this degree."""


@dataclass(frozen=True, order=True)
class RamifiedPrime:
    p: int
    e: int

    @property
    def h(self) -> int:
        """Index of the degree-``e`` subfield in ``Q(zeta_p)``."""
        return (self.p - 1) // self.e


@dataclass(frozen=True)
class FieldSpec:
    degree: int
    ramified: tuple[RamifiedPrime, ...] = ()
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        items = []
        for r in self.ramified:
            if not isinstance(r, RamifiedPrime):
                r = RamifiedPrime(*r)
            items.append(RamifiedPrime(int(r.p), int(r.e)))
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "ramified", tuple(sorted(items)))

    @classmethod
    def of(cls, degree: int, ramified: Iterable = (), label: Optional[str] = None) -> "FieldSpec":
        return cls(degree, tuple(ramified), label)

    @property
    def conductor(self) -> int:
        return prod(r.p for r in self.ramified)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(r.p for r in self.ramified)

    @property
    def epsilon(self) -> int:
        """Number of ramified primes with odd cofactor ``h``."""
        return sum(r.h % 2 for r in self.ramified)

    def __str__(self):
        pairs = ", ".join(f"({r.p},{r.e})" for r in self.ramified)
        return f"{{n={self.degree}, [{pairs}]}}"


def validate_spec(spec: FieldSpec) -> FieldSpec:
    n = spec.degree
    if n < 1:
        raise BadIndex(f"degree must be >= 1, got {n}")
    for r in spec.ramified:
        if not is_prime(r.p):
            raise NonPrime(f"{r.p} is not prime")
        if r.e < 2:
            raise BadIndex(f"ramification index of {r.p} must be >= 2, got {r.e}")
        if r.e % r.p == 0 or n % r.p == 0:
            raise WildRamification(f"{r.p} ramifies wildly (e={r.e}, n={n})")
        if (r.p - 1) % r.e:
            raise BadCongruence(f"{r.p} is not 1 mod {r.e}")
    ps = spec.primes
    if len(set(ps)) != len(ps):
        raise DuplicatePrime(f"repeated prime in {list(ps)}")
    L = lcm(*(r.e for r in spec.ramified))
    if L != n:
        raise BadLcm(f"lcm of ramification indices is {L}, degree is {n}")
    return spec


def cyclic_group(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup.cyclic(n)


def order_two(n: int) -> GroupRingElement:
    """The element of order two in ``Z/n`` (``n`` even) as a ring element."""
    if n % 2:
        raise ValueError(f"Z/{n} has no element of order 2")
    return GroupRingElement.basis(cyclic_group(n), n // 2)


def local_circulant(r: RamifiedPrime, n: int) -> GroupRingElement:
    G = cyclic_group(n)
    if r.h % 2:
        if n % 2:
            raise RuntimeError(f"odd cofactor for {r} in odd degree {n}")
        y = order_two(n)
    else:
        y = GroupRingElement.one(G)
    return y * r.p - sigma_subgroup(G, r.e) * r.h


def field_circulant(spec: FieldSpec) -> GroupRingElement:
    validate_spec(spec)
    s = GroupRingElement.one(cyclic_group(spec.degree))
    for r in spec.ramified:
        s = s * local_circulant(r, spec.degree)
    return s


@dataclass(frozen=True)
class CoefficientTable:
    """``s = a_1 * sigma^(epsilon mod 2) + sum_{d>1} a_d * Sigma_<d>`` in ``Z[Z/n]``."""

    degree: int
    coefficients: dict  # divisor d -> a_d
    epsilon: int = 0

    def __getitem__(self, d: int) -> int:
        return self.coefficients.get(d, 0)

    def to_element(self) -> GroupRingElement:
        n = self.degree
        G = cyclic_group(n)
        lead = order_two(n) if self.epsilon % 2 else GroupRingElement.one(G)
        s = lead * self[1]
        for d, a in self.coefficients.items():
            if d > 1 and a:
                s = s + sigma_subgroup(G, d) * a
        return s


def _prime_power(n: int) -> Optional[tuple[int, int]]:
    fac = factorint(n)
    if len(fac) == 1:
        return next(iter(fac.items()))
    return None


def _grouped(spec: FieldSpec) -> dict[int, int]:
    """Product ``w_d`` of the ramified primes with index ``d``."""
    w: dict[int, int] = {}
    for r in spec.ramified:
        w[r.e] = w.get(r.e, 1) * r.p
    return w


def _chain_coefficients(spec: FieldSpec, q: int, k: int) -> dict[int, int]:
    # prime-power degree q^k: a_{q^i} = -f_i * prod_{j>i} m_j
    w = _grouped(spec)
    m = [w.get(q**i, 1) for i in range(k + 1)]
    coeffs = {1: prod(spec.primes)}
    for i in range(1, k + 1):
        f_i = (m[i] - 1) // q**i
        coeffs[q**i] = -f_i * prod(m[i + 1 :])
    return coeffs


def _subset_coefficients(spec: FieldSpec) -> dict[int, int]:
    # Sigma_<d1> ... Sigma_<dk> = (d1*...*dk / lcm) Sigma_<lcm>
    n = spec.degree
    w = _grouped(spec)
    f = {d: (wd - 1) // d for d, wd in w.items()}
    ds = sorted(w)
    coeffs = {d: 0 for d in divisors(n)}
    for size in range(len(ds) + 1):
        for S in combinations(ds, size):
            L = lcm(*S)
            term = prod(S) // L
            for d in ds:
                term *= -f[d] if d in S else w[d]
            coeffs[L] += term
    return coeffs


def closed_form_coefficients(spec: FieldSpec) -> CoefficientTable:
    """Closed-form coefficients (odd or 2-power degree)."""
    validate_spec(spec)
    n = spec.degree
    if n == 1:
        return CoefficientTable(1, {1: 1}, 0)
    pp = _prime_power(n)
    if pp is not None:
        q, k = pp
        coeffs = {d: 0 for d in divisors(n)}
        coeffs.update(_chain_coefficients(spec, q, k))
        eps = spec.epsilon if q == 2 else 0
        return CoefficientTable(n, coeffs, eps)
    if n % 2:
        return CoefficientTable(n, _subset_coefficients(spec), 0)
    raise UnsupportedDegree(f"no closed form for even composite degree {n}")


def expansion_coefficients(s: GroupRingElement) -> CoefficientTable:
    """Read ``s = sum_d b_d Sigma_<d>`` off a circulant invariant under Aut(Z/n).

    Solves the triangular system over the divisor lattice: the coefficient
    of residue ``n/d`` is ``sum of b_c over c`` with ``d | c``.
    """
    n = s.group.order
    ds = divisors(n)
    dense = s.dense()
    b: dict[int, int] = {}
    for d in reversed(ds):
        b[d] = dense[(n // d) % n] - sum(b[c] for c in ds if c > d and c % d == 0)
    table = CoefficientTable(n, b, 0)
    if table.to_element() != s:
        raise ValueError("element is not a combination of subgroup sums")
    return table


def coefficient_table(spec: FieldSpec) -> CoefficientTable:
    """Closed form where available, otherwise read off the expansion."""
    try:
        return closed_form_coefficients(spec)
    except UnsupportedDegree:
        return expansion_coefficients(field_circulant(spec))


@dataclass(frozen=True)
class GramMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Gram matrix must be square")
        if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")
        if len({sum(r) for r in rows}) > 1:
            raise ValueError("Gram matrix rows must share one row sum")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def det(self) -> int:
        return bareiss_det(self.rows)


def circulant_to_matrix(c: GroupRingElement) -> GramMatrix:
    """``M[i][j]`` = coefficient of residue ``j - i`` of a symmetric circulant."""
    if not c.group.is_cyclic_presentation:
        raise ValueError("circulant must live in Z[Z/n]")
    if involute(c) != c:
        raise ValueError("circulant is not symmetric (s != s-bar)")
    dense = c.dense()
    n = len(dense)
    return GramMatrix(tuple(tuple(dense[(j - i) % n] for j in range(n)) for i in range(n)))


def gram_matrix(spec: FieldSpec) -> GramMatrix:
    return circulant_to_matrix(field_circulant(spec))


def signature(spec: FieldSpec) -> tuple[int, int]:
    """(positive, negative) inertia of the trace form."""
    validate_spec(spec)
    n = spec.degree
    if n % 2 or spec.epsilon % 2 == 0:
        return (n, 0)
    return (n // 2, n // 2)


def discriminant(spec: FieldSpec) -> int:
    validate_spec(spec)
    n = spec.degree
    mag = prod(r.p ** (n - n // r.e) for r in spec.ramified)
    r2 = signature(spec)[1]
    return -mag if r2 % 2 else mag


@dataclass(frozen=True)
class IsometryVerdict:
    isometric: bool
    reason: str
    discriminants: tuple[int, int]
    gram: Optional[GramMatrix] = None

    def __bool__(self):
        return self.isometric


def is_isometric(a: FieldSpec, b: FieldSpec) -> IsometryVerdict:
    """Decide isometry of two integral trace forms by degree and discriminant.

    When isometric, the witness is the shared canonical Gram matrix.
    """
    da, db = discriminant(a), discriminant(b)
    if a.degree != b.degree:
        return IsometryVerdict(False, "degree", (da, db))
    if da != db:
        return IsometryVerdict(False, "discriminant", (da, db))
    ga, gb = gram_matrix(a), gram_matrix(b)
    if ga != gb:
        raise AssertionError(f"equal discriminants but different Gram matrices: {a} vs {b}")
    return IsometryVerdict(True, "degree and discriminant agree", (da, db), ga)


def _admissible_indices(p: int, n: int) -> list[int]:
    if n % p == 0:
        return []
    return [e for e in divisors(n) if e >= 2 and (p - 1) % e == 0]


def enumerate_specs(n: int, bound: int) -> list[FieldSpec]:
    """All valid specs of degree ``n`` with conductor at most ``bound``.

    Sorted by conductor, then by the ``(p, e)`` list.
    """
    if n < 1 or bound < 1:
        raise ValueError("degree and bound must be >= 1")
    if n == 1:
        return [FieldSpec(1)]
    cands = [(p, es) for p in primes_up_to(bound) if (es := _admissible_indices(p, n))]
    out: list[FieldSpec] = []

    def walk(start: int, cond: int, chosen: list[RamifiedPrime], L: int):
        if chosen and L == n:
            out.append(FieldSpec(n, tuple(chosen)))
        for k in range(start, len(cands)):
            p, es = cands[k]
            if cond * p > bound:
                break
            for e in es:
                chosen.append(RamifiedPrime(p, e))
                walk(k + 1, cond * p, chosen, lcm(L, e))
                chosen.pop()

    walk(0, 1, [], 1)
    out.sort(key=lambda s: (s.conductor, s.ramified))
    return out


def random_spec(rng, max_degree: int, max_conductor: int, tries: int = 1000) -> FieldSpec:
    """Draw a valid spec by rejection; ``rng`` is a ``random.Random``."""
    primes = primes_up_to(max_conductor)
    for _ in range(tries):
        n = rng.randint(2, max_degree)
        pool = [(p, es) for p in primes if (es := _admissible_indices(p, n))]
        if not pool:
            continue
        chosen: list[RamifiedPrime] = []
        cond, L = 1, 1
        rng.shuffle(pool)
        for p, es in pool:
            if cond * p > max_conductor:
                continue
            if L == n and rng.random() < 0.5:
                break
            e = rng.choice(es)
            chosen.append(RamifiedPrime(p, e))
            cond *= p
            L = lcm(L, e)
        if chosen and L == n:
            return FieldSpec(n, tuple(chosen))
    raise RuntimeError("could not draw a valid spec")


__all__ = [
    "BadCongruence",
    "BadIndex",
    "BadLcm",
    "CoefficientTable",
    "DuplicatePrime",
    "FieldSpec",
    "GramMatrix",
    "IsometryVerdict",
    "NonPrime",
    "RamifiedPrime",
    "SpecError",
    "UnsupportedDegree",
    "WildRamification",
    "circulant_to_matrix",
    "closed_form_coefficients",
    "coefficient_table",
    "discriminant",
    "enumerate_specs",
    "expansion_coefficients",
    "field_circulant",
    "gram_matrix",
    "is_isometric",
    "local_circulant",
    "random_spec",
    "signature",
    "validate_spec",
]
