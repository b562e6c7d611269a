"""Independent Gram matrices from Gauss periods in ``Q(zeta_f)``.

The field is realised inside the cyclotomic field of its conductor ``f``
through a surjection ``chi: (Z/f)* -> Z/n``.  The normal integral basis is
the set of Gauss periods over the fibres of ``chi`` and every trace is
evaluated with Ramanujan sums, so nothing here touches the group-ring
circulants of :mod:`cyclotrace.trace_form`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Optional, Sequence

import numpy as np

from . import kernels
from .arith import factorint, is_primitive_root, mobius, primitive_roots, smallest_primitive_root, totient
from .trace_form import FieldSpec, GramMatrix, gram_matrix, validate_spec


class InexactDivision(ArithmeticError):
    """A trace in ``Q(zeta_f)`` was not divisible by the index ``[Q(zeta_f):K]``."""


def _squarefree_factors(f: int) -> dict[int, int]:
    if f < 1:
        raise ValueError(f"modulus must be >= 1, got {f}")
    fac = factorint(f)
    if any(k > 1 for k in fac.values()):
        raise ValueError(f"{f} is not squarefree")
    return fac


def ramanujan_sum(f: int, a: int) -> int:
    """Trace of ``zeta_f^a`` down to ``Q``: ``mu(f/g) phi(f) / phi(f/g)``, ``g = gcd(a, f)``."""
    _squarefree_factors(f)
    g = gcd(a, f)
    return mobius(f // g) * totient(f) // totient(f // g)


def ramanujan_table(f: int) -> np.ndarray:
    """``c_f(a)`` for ``a = 0..f-1`` as an int64 array."""
    fac = _squarefree_factors(f)
    phi = totient(f)
    g = np.gcd(np.arange(f, dtype=np.int64), f)
    g[0] = f
    out = np.empty(f, dtype=np.int64)
    for d in np.unique(g):
        d = int(d)
        cof = f // d
        k = sum(1 for p in fac if cof % p == 0)
        mu = -1 if k % 2 else 1
        out[g == d] = mu * (phi // totient(cof))
    return out


class FormalRootSum:
    """``sum c_a zeta_f^a`` kept as a sparse map on ``Z/f``.

    Products add exponents mod ``f``; only the (linear) trace is ever read
    out, so relations among roots of unity never need to be reduced.
    """

    __slots__ = ("modulus", "_coeffs")

    def __init__(self, modulus: int, coeffs: Mapping[int, int] = ()):
        self.modulus = int(modulus)
        out: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for a, c in items:
            a %= self.modulus
            c = out.get(a, 0) + int(c)
            if c:
                out[a] = c
            else:
                out.pop(a, None)
        self._coeffs = out

    @classmethod
    def root(cls, f: int, a: int = 1) -> "FormalRootSum":
        return cls(f, {a: 1})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def _same(self, other):
        if other.modulus != self.modulus:
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "FormalRootSum") -> "FormalRootSum":
        self._same(other)
        out = dict(self._coeffs)
        for a, c in other._coeffs.items():
            out[a] = out.get(a, 0) + c
        return FormalRootSum(self.modulus, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return FormalRootSum(self.modulus, {a: c * other for a, c in self._coeffs.items()})
        self._same(other)
        f = self.modulus
        out: dict[int, int] = {}
        for a, x in self._coeffs.items():
            for b, y in other._coeffs.items():
                k = (a + b) % f
                out[k] = out.get(k, 0) + x * y
        return FormalRootSum(f, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalRootSum):
            return NotImplemented
        return self.modulus == other.modulus and self._coeffs == other._coeffs

    def __repr__(self):
        body = " + ".join(f"{c}*z^{a}" for a, c in sorted(self._coeffs.items())) or "0"
        return f"FormalRootSum(f={self.modulus}: {body})"

    def trace(self) -> int:
        return trace_full(self)


def trace_full(x: FormalRootSum) -> int:
    """Trace from ``Q(zeta_f)`` to ``Q`` by linearity."""
    return sum(c * ramanujan_sum(x.modulus, a) for a, c in x._coeffs.items())


@dataclass(frozen=True)
class FieldRealization:
    """A concrete field with the given ramification data inside ``Q(zeta_f)``.

    ``labels[k]`` is ``chi(units[k])``; the fibre of ``j`` indexes basis
    element ``j + 1``.
    """

    spec: FieldSpec
    conductor: int
    roots: tuple[int, ...]
    units: np.ndarray = field(repr=False, compare=False)
    labels: np.ndarray = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return self.spec.degree

    def chi(self, u: int) -> int:
        n = self.spec.degree
        total = 0
        for r, t in zip(self.spec.ramified, self.roots):
            total += _dlog(u % r.p, t, r.p) * (n // r.e)
        return total % n

    def fiber(self, j: int) -> np.ndarray:
        return self.units[self.labels == j]


def _dlog(x: int, t: int, p: int) -> int:
    y, k = 1, 0
    while y != x:
        y = y * t % p
        k += 1
        if k >= p:
            raise ValueError(f"{x} is not a power of {t} mod {p}")
    return k


def _dlog_table(t: int, p: int) -> np.ndarray:
    table = np.zeros(p, dtype=np.int64)
    y = 1
    for k in range(p - 1):
        table[y] = k
        y = y * t % p
    return table


def realize(
    spec: FieldSpec,
    roots: Optional[Sequence[int]] = None,
    rng: Optional[random.Random] = None,
) -> FieldRealization:
    """Build ``chi`` from one primitive root per ramified prime.

    On factor ``i``, ``t_i^k -> k * (n / e_i) mod n``.  With ``roots`` and
    ``rng`` both omitted the smallest primitive roots are used; with ``rng``
    they are drawn at random, which reaches every field sharing ``spec``.
    """
    validate_spec(spec)
    n = spec.degree
    if roots is None:
        if rng is None:
            roots = [smallest_primitive_root(r.p) for r in spec.ramified]
        else:
            roots = [rng.choice(primitive_roots(r.p)) for r in spec.ramified]
    roots = tuple(int(t) for t in roots)
    if len(roots) != len(spec.ramified):
        raise ValueError("need one primitive root per ramified prime")
    for r, t in zip(spec.ramified, roots):
        if not is_primitive_root(t, r.p):
            raise ValueError(f"{t} is not a primitive root mod {r.p}")
    f = spec.conductor
    residues = np.arange(f, dtype=np.int64)
    units = residues[np.gcd(residues, f) == 1] if f > 1 else np.zeros(1, dtype=np.int64)
    labels = np.zeros(units.shape[0], dtype=np.int64)
    for r, t in zip(spec.ramified, roots):
        labels += _dlog_table(t, r.p)[units % r.p] * (n // r.e)
    labels %= n
    return FieldRealization(spec, f, roots, units, labels)


def nib(r: FieldRealization) -> list[FormalRootSum]:
    """Gauss periods over the fibres of ``chi``: a normal integral basis of ``o_K``."""
    f = r.conductor
    return [FormalRootSum(f, {int(u): 1 for u in r.fiber(j)}) for j in range(r.degree)]


def _scale(T, n: int, phi: int) -> GramMatrix:
    rows = []
    for row in T:
        out = []
        for x in row:
            num = int(x) * n
            if num % phi:
                raise InexactDivision(f"{int(x)} * {n} is not divisible by {phi}")
            out.append(num // phi)
        rows.append(out)
    return GramMatrix(rows)


def gram_oracle(r: FieldRealization, backend: Optional[str] = None) -> GramMatrix:
    """``G[i][j] = Tr(e_i e_j) * n / phi(f)`` evaluated with Ramanujan sums."""
    f, n = r.conductor, r.degree
    phi = totient(f)
    if phi**3 >= 2**62:
        # int64 bound exceeded; exact Python integers instead
        basis = nib(r)
        T = [[trace_full(x * y) for y in basis] for x in basis]
        return _scale(T, n, phi)
    T = kernels.fiber_pair_traces(r.units, r.labels, n, ramanujan_table(f), f, backend=backend)
    return _scale(T, n, phi)


def gram_oracle_slow(r: FieldRealization) -> GramMatrix:
    """Same matrix through explicit formal products; used to check the kernels."""
    basis = nib(r)
    T = [[trace_full(x * y) for y in basis] for x in basis]
    return _scale(T, r.degree, totient(r.conductor))


@dataclass
class CertificationReport:
    spec: FieldSpec
    trials: int
    seed: int
    passed: bool
    expected: GramMatrix
    roots_tried: list = field(default_factory=list)
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "pass": self.passed,
            "roots": [list(t) for t in self.roots_tried],
            "counterexample": self.counterexample,
        }


DEFAULT_SEED = 20240917


def certify(spec: FieldSpec, trials: int = 3, seed: int = DEFAULT_SEED, backend: Optional[str] = None) -> CertificationReport:
    """Compare the oracle against ``gram_matrix(spec)`` on random realizations."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    expected = gram_matrix(spec)
    rng = random.Random(seed)
    report = CertificationReport(spec, trials, seed, True, expected)
    for _ in range(trials):
        r = realize(spec, rng=rng)
        report.roots_tried.append(r.roots)
        got = gram_oracle(r, backend=backend)
        if got != expected:
            report.passed = False
            report.counterexample = {"roots": list(r.roots), "oracle": got.tolist(), "expected": expected.tolist()}
            break
    return report
