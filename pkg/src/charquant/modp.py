"""Arithmetic mod a small prime: inverses, binomials, multinomials.

Binomial coefficients are reduced mod p via Lucas' theorem so that
arguments well above p (crystalline operator orders) stay cheap and
exact.
"""

from functools import lru_cache

MAX_PRIME = 13

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def validate_prime(p: int) -> int:
    """Check p is a prime in the supported range and return it."""
    if p not in _SMALL_PRIMES:
        raise ValueError(f"p must be a prime with 2 <= p <= {MAX_PRIME}, got {p}")
    return p


@lru_cache(maxsize=None)
def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(a, p - 2, p)


@lru_cache(maxsize=None)
def _binom_table(p: int) -> tuple:
    # Pascal triangle for 0 <= k <= n < p.
    rows = [[1]]
    for n in range(1, p):
        prev = rows[-1]
        row = [1]
        for k in range(1, n):
            row.append((prev[k - 1] + prev[k]) % p)
        row.append(1)
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas, valid for any n, k >= 0."""
    if k < 0 or k > n:
        return 0
    table = _binom_table(p)
    result = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = (result * table[nd][kd]) % p
        n //= p
        k //= p
    return result


def multinom(parts: tuple, p: int) -> int:
    """(sum parts)! / prod(part!) mod p, via iterated binomials."""
    total = 0
    result = 1
    for part in parts:
        total += part
        result = (result * binom(total, part, p)) % p
        if result == 0:
            return 0
    return result


def falling(n: int, k: int, p: int) -> int:
    """n (n-1) ... (n-k+1) mod p; the k-th plain derivative of x^n picks this up."""
    result = 1
    for i in range(k):
        result = (result * ((n - i) % p)) % p
        if result == 0:
            return 0
    return result


@lru_cache(maxsize=None)
def factorial(n: int, p: int) -> int:
    result = 1
    for i in range(2, n + 1):
        result = (result * i) % p
    return result
