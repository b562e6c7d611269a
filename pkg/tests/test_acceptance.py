"""Exit criteria.  Each test records one PASS/FAIL line (see conftest)."""

import json
import random
import time
from functools import lru_cache
from itertools import product
from math import gcd

import pytest
import sympy

from cyclotrace.arith import divisors, is_squarefree, primes_up_to
from cyclotrace.cli import main as cli_main
from cyclotrace.group_ring import (
    FiniteAbelianGroup,
    GroupRingElement,
    aug,
    involute,
    quotient_push,
    sigma_subgroup,
)
from cyclotrace.linalg import bareiss_det, inertia, is_positive_definite, leading_principal_minors
from cyclotrace.oracle import gram_oracle, ramanujan_sum, realize
from cyclotrace.trace_form import (
    FieldSpec,
    closed_form_coefficients,
    discriminant,
    enumerate_specs,
    field_circulant,
    gram_matrix,
    signature,
)

SEED = 20240917


# -- shared workloads ---------------------------------------------------------------


@lru_cache(maxsize=None)
def prime_degree_cases():
    cases = []
    for q in (3, 5, 7, 11, 13):
        for p in primes_up_to(299):
            if p % q == 1:
                cases.append(FieldSpec.of(q, [(p, q)]))
    return tuple(cases)


@lru_cache(maxsize=None)
def random_oracle_specs(count=200, max_degree=20, max_conductor=3000):
    rng = random.Random(SEED)
    pools = {n: enumerate_specs(n, max_conductor) for n in range(1, max_degree + 1)}
    degrees = [n for n, pool in pools.items() if pool]
    chosen = {}
    while len(chosen) < count:
        n = rng.choice(degrees)
        s = rng.choice(pools[n])
        chosen[s] = None
    return tuple(chosen)


@lru_cache(maxsize=None)
def oracle_runs(trials=3):
    rng = random.Random(SEED + 1)
    runs = []
    for s in random_oracle_specs():
        expected = gram_matrix(s)
        got = [gram_oracle(realize(s, rng=rng)) for _ in range(trials)]
        runs.append((s, expected, got))
    return tuple(runs)


CLOSED_FORM_DEGREES = (2, 3, 4, 5, 7, 8, 9, 16, 27)


@lru_cache(maxsize=None)
def closed_form_specs():
    return tuple(s for n in CLOSED_FORM_DEGREES for s in enumerate_specs(n, 2000))


@lru_cache(maxsize=None)
def det_specs():
    return tuple(s for n in range(1, 13) for s in enumerate_specs(n, 500))


# -- criteria -------------------------------------------------------------------------------


def test_criterion_1_prime_degree(record_criterion):
    start = time.perf_counter()
    bad = []
    for s in prime_degree_cases():
        (r,) = s.ramified
        q, p, h = s.degree, r.p, r.h
        expected = [[p - h if i == j else -h for j in range(q)] for i in range(q)]
        M = gram_matrix(s)
        if M.tolist() != expected or M.det() != p ** (q - 1):
            bad.append(str(s))
    elapsed = time.perf_counter() - start
    record_criterion(
        1,
        "prime-degree Gram matrices equal diag p-h / off-diag -h with det p^(q-1), under 1 s",
        not bad and elapsed < 1.0,
        f"{len(prime_degree_cases())} fields, {elapsed:.3f}s, mismatches={bad[:3]}",
    )


def test_criterion_2_oracle_equivalence(record_criterion):
    start = time.perf_counter()
    runs = oracle_runs()
    elapsed = time.perf_counter() - start
    mismatches = [str(s) for s, expected, got in runs if any(g != expected for g in got)]
    specs = [s for s, _, _ in runs]
    ok = (
        not mismatches
        and len(specs) >= 200
        and all(s.degree <= 20 and s.conductor <= 3000 for s in specs)
        and all(len(got) >= 3 for _, _, got in runs)
        and elapsed < 300
    )
    record_criterion(
        2,
        "oracle Gram == canonical Gram on >=200 random specs x 3 realizations, under 5 min",
        ok,
        f"{len(specs)} specs, degrees {min(s.degree for s in specs)}..{max(s.degree for s in specs)}, "
        f"{elapsed:.1f}s, mismatches={mismatches[:3]}",
    )


def test_criterion_3_closed_form(record_criterion):
    start = time.perf_counter()
    bad = []
    for s in closed_form_specs():
        table = closed_form_coefficients(s)
        if table.to_element() != field_circulant(s):
            bad.append(str(s))
        if s.degree % 2 == 0 and table.epsilon != s.epsilon:
            bad.append(f"epsilon {s}")
    elapsed = time.perf_counter() - start
    record_criterion(
        3,
        "closed-form coefficient tables reconstruct the expanded circulant, under 1 min",
        not bad and elapsed < 60,
        f"{len(closed_form_specs())} specs, {elapsed:.1f}s, mismatches={bad[:3]}",
    )


def test_criterion_4_determinant(record_criterion):
    start = time.perf_counter()
    bad = [str(s) for s in det_specs() if bareiss_det(gram_matrix(s).rows) != discriminant(s)]
    elapsed = time.perf_counter() - start
    golden = [
        (FieldSpec.of(3, [(7, 3)]), 49),
        (FieldSpec.of(2, [(3, 2)]), -3),
        (FieldSpec.of(4, [(5, 4)]), 125),
    ]
    golden_ok = all(gram_matrix(s).det() == d == discriminant(s) for s, d in golden)
    record_criterion(
        4,
        "det(Gram) == signed discriminant for n <= 12, conductor <= 500, under 1 min",
        not bad and golden_ok and elapsed < 60,
        f"{len(det_specs())} specs, {elapsed:.1f}s, golden={golden_ok}, mismatches={bad[:3]}",
    )


def test_criterion_5_signature(record_criterion):
    bad = []
    checked_inertia = 0
    for s in det_specs():
        M = gram_matrix(s).rows
        n = s.degree
        pos, neg = signature(s)
        if is_positive_definite(M) != ((pos, neg) == (n, 0)):
            bad.append(str(s))
        if neg:
            if all(m > 0 for m in leading_principal_minors(M)):
                bad.append(f"minors {s}")
            if n <= 8:
                checked_inertia += 1
                if inertia(M) != (n // 2, n // 2, 0):
                    bad.append(f"inertia {s}")
    record_criterion(
        5,
        "positive definite iff signature (n,0); otherwise exactly n/2 negative eigenvalues",
        not bad and checked_inertia > 0,
        f"{len(det_specs())} specs, {checked_inertia} indefinite inertia checks, failures={bad[:3]}",
    )


def _random_element(rng, G, size=6):
    elems = list(G.elements())
    return GroupRingElement(G, {rng.choice(elems): rng.randint(-9, 9) for _ in range(rng.randint(0, size))})


def test_criterion_6_group_ring(record_criterion):
    start = time.perf_counter()
    bad = []
    pairs = 0
    for m in range(1, 61):
        G = FiniteAbelianGroup.cyclic(m)
        ds = divisors(m)
        sums = {d: sigma_subgroup(G, d) for d in ds}
        for d1, d2 in product(ds, ds):
            pairs += 1
            lcm = d1 * d2 // gcd(d1, d2)
            if sums[d1] * sums[d2] != sums[lcm] * gcd(d1, d2):
                bad.append((m, d1, d2))
    rng = random.Random(SEED)
    shapes = [(n,) for n in range(1, 25)] + [(2, 2), (2, 6), (3, 3), (2, 2, 2), (4, 6), (3, 5)]
    instances = 10_000
    for _ in range(instances):
        G = FiniteAbelianGroup(rng.choice(shapes))
        x, y = _random_element(rng, G), _random_element(rng, G)
        if involute(involute(x)) != x or involute(x * y) != involute(x) * involute(y):
            bad.append(("involute", x, y))
        if aug(x * y) != aug(x) * aug(y):
            bad.append(("aug", x, y))
        gens = [rng.choice(list(G.elements())) for _ in range(rng.randint(0, 2))]
        if quotient_push(x * y, gens) != quotient_push(x, gens) * quotient_push(y, gens):
            bad.append(("quotient", x, y, gens))
    elapsed = time.perf_counter() - start
    record_criterion(
        6,
        "group-ring identities: subgroup-sum product rule m <= 60, 10^4 random hom checks",
        not bad,
        f"{pairs} divisor pairs, {instances} random instances, {elapsed:.1f}s, failures={bad[:2]}",
    )


def test_criterion_7_ramanujan(record_criterion):
    start = time.perf_counter()
    bad = []
    checked = 0
    mu = {k: int(sympy.mobius(k)) for k in range(1, 1001)}
    for f in range(1, 1001):
        if not is_squarefree(f):
            continue
        by_gcd = {g: sum(d * mu[f // d] for d in sympy.divisors(g)) for g in sympy.divisors(f)}
        for a in range(f):
            checked += 1
            if ramanujan_sum(f, a) != by_gcd[gcd(a, f)]:
                bad.append((f, a))
    elapsed = time.perf_counter() - start
    record_criterion(
        7,
        "Ramanujan sums: mu*phi formula == divisor-sum oracle for squarefree f <= 1000",
        not bad,
        f"{checked} (f, a) pairs, {elapsed:.1f}s, failures={bad[:3]}",
    )


def test_criterion_8_row_sums(record_criterion):
    matrices = [gram_matrix(s) for s in prime_degree_cases()]
    for _, expected, got in oracle_runs():
        matrices.append(expected)
        matrices.extend(got)
    matrices += [gram_matrix(s) for s in closed_form_specs()]
    matrices += [gram_matrix(s) for s in det_specs()]
    bad = [M for M in matrices if any(sum(row) != 1 for row in M.rows)]
    record_criterion(
        8,
        "every Gram matrix from criteria 1-4 has all row sums equal to 1",
        not bad,
        f"{len(matrices)} matrices",
    )


def test_criterion_9_isometry(record_criterion, tmp_path, capsys):
    specs = [s for n in range(1, 9) for s in enumerate_specs(n, 200)]
    paths = []
    for k, s in enumerate(specs):
        path = tmp_path / f"s{k}.json"
        path.write_text(json.dumps({"degree": s.degree, "ramified": [{"p": r.p, "e": r.e} for r in s.ramified]}))
        paths.append(str(path))
    disc = [discriminant(s) for s in specs]
    grams = [gram_matrix(s) for s in specs]
    bad = []
    isometric_pairs = 0
    for i, a in enumerate(specs):
        for j, b in enumerate(specs):
            code = cli_main(["compare", paths[i], paths[j]])
            capsys.readouterr()
            by_invariants = a.degree == b.degree and disc[i] == disc[j]
            by_matrix = grams[i] == grams[j]
            verdict = code == 0
            if code not in (0, 3) or verdict != by_invariants or verdict != by_matrix:
                bad.append((str(a), str(b), code))
            isometric_pairs += verdict
    record_criterion(
        9,
        "compare says isometric exactly when degree and discriminant agree, matching Gram equality",
        not bad,
        f"{len(specs)} specs, {len(specs) ** 2} ordered pairs, {isometric_pairs} isometric, failures={bad[:3]}",
    )
