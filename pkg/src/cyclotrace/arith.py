"""Small exact number-theory helpers (primality, factoring, primitive roots)."""

from __future__ import annotations

from functools import reduce
from math import gcd, isqrt

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, b in enumerate(sieve) if b]


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorisation; fine for the desk-scale moduli used here."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return all(k == 1 for k in factorint(n).values())


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorint(n).items():
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return sorted(divs)


def totient(n: int) -> int:
    result = n
    for p in factorint(n):
        result = result // p * (p - 1)
    return result


def mobius(n: int) -> int:
    fac = factorint(n)
    if any(k > 1 for k in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    order = totient(m)
    for p, k in factorint(order).items():
        for _ in range(k):
            if pow(a, order // p, m) == 1:
                order //= p
            else:
                break
    return order


def is_primitive_root(g: int, p: int) -> bool:
    """True when g generates (Z/pZ)* for the prime p."""
    g %= p
    if g == 0:
        return False
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorint(p - 1))


def primitive_roots(p: int) -> list[int]:
    if p == 2:
        return [1]
    qs = list(factorint(p - 1))
    return [g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in qs)]


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"{p} is not prime")
